"""Candidates, ballots, profiles and single-peakedness.

A ballot is a strict ranking of a non-empty subset of the candidates, best
first.  Candidates left off a ballot are tied with each other and sit strictly
below every ranked candidate.  A ballot that ranks everyone is complete.

All values are immutable; every function here is pure.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "Rational",
    "DomainError",
    "ResourceError",
    "NotApplicable",
    "Ballot",
    "WeightedBallot",
    "Profile",
    "BallotDomain",
    "check_token",
    "is_single_peaked",
    "maverick_count",
    "enumerate_sp_ballots",
    "enumerate_sp_orders_with_peak",
    "enumerate_ballots",
    "ballot_in_domain",
    "pairwise_margin",
    "weak_condorcet_winners",
]

#: Exact rational used for every score.  ``Fraction`` keeps lowest terms.
Rational = Fraction


class DomainError(ValueError):
    """Input violates a documented precondition."""


class ResourceError(RuntimeError):
    """An exhaustive search would exceed its enumeration cap."""


class NotApplicable(ValueError):
    """A specialised solver was called outside its applicability range."""


_FORBIDDEN = set(">:#")


def check_token(name: str) -> str:
    if not isinstance(name, str) or not name:
        raise DomainError(f"candidate name must be a non-empty string, got {name!r}")
    if any(ch.isspace() or ch in _FORBIDDEN for ch in name):
        raise DomainError(f"illegal candidate name {name!r}")
    return name


@dataclass(frozen=True)
class Ballot:
    """A top-truncated ranking; ``ranked[0]`` is the most preferred candidate."""

    ranked: tuple[str, ...]

    def __init__(self, ranked: Iterable[str]):
        ranked = tuple(ranked)
        if not ranked:
            raise DomainError("a ballot must rank at least one candidate")
        for c in ranked:
            check_token(c)
        if len(set(ranked)) != len(ranked):
            raise DomainError(f"duplicate candidate in ballot {ranked}")
        object.__setattr__(self, "ranked", ranked)

    def __len__(self) -> int:
        return len(self.ranked)

    def __iter__(self) -> Iterator[str]:
        return iter(self.ranked)

    def __str__(self) -> str:
        return " > ".join(self.ranked)

    @property
    def top(self) -> str:
        return self.ranked[0]

    def is_complete(self, candidates: Sequence[str]) -> bool:
        return len(self.ranked) == len(candidates)

    def position(self, c: str) -> Optional[int]:
        """0-based rank of ``c``, or None when unranked."""
        try:
            return self.ranked.index(c)
        except ValueError:
            return None

    def prefers(self, r: str, s: str) -> bool:
        """True when the voter ranks ``r`` strictly above ``s``."""
        pr, ps = self.position(r), self.position(s)
        if pr is None:
            return False
        return ps is None or pr < ps

    def restrict(self, remaining) -> Optional["Ballot"]:
        kept = tuple(c for c in self.ranked if c in remaining)
        return Ballot(kept) if kept else None


@dataclass(frozen=True)
class WeightedBallot:
    ballot: Ballot
    weight: int

    def __post_init__(self):
        if isinstance(self.weight, bool) or not isinstance(self.weight, int) or self.weight < 0:
            raise DomainError(f"weight must be a non-negative integer, got {self.weight!r}")


def _coerce_vote(v) -> WeightedBallot:
    if isinstance(v, WeightedBallot):
        return v
    ballot, weight = v
    if not isinstance(ballot, Ballot):
        ballot = Ballot(ballot)
    return WeightedBallot(ballot, weight)


@dataclass(frozen=True)
class Profile:
    """Candidates (kept sorted), an optional societal axis, and weighted votes.

    ``votes`` accepts ``WeightedBallot`` objects or ``(ranking, weight)`` pairs.
    """

    candidates: tuple[str, ...]
    votes: tuple[WeightedBallot, ...] = ()
    axis: Optional[tuple[str, ...]] = None

    def __init__(self, candidates: Iterable[str], votes: Iterable = (), axis: Optional[Iterable[str]] = None):
        given = [check_token(c) for c in candidates]
        cands = tuple(sorted(set(given)))
        if not cands:
            raise DomainError("a profile needs at least one candidate")
        if len(cands) != len(given):
            raise DomainError("duplicate candidate names")
        votes = tuple(_coerce_vote(v) for v in votes)
        cset = set(cands)
        for wb in votes:
            unknown = [c for c in wb.ballot if c not in cset]
            if unknown:
                raise DomainError(f"ballot {wb.ballot} names unknown candidates {unknown}")
        if axis is not None:
            axis = tuple(axis)
            if len(axis) != len(cands) or set(axis) != cset:
                raise DomainError(f"axis {axis} is not a permutation of the candidates")
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "votes", votes)
        object.__setattr__(self, "axis", axis)

    @property
    def m(self) -> int:
        return len(self.candidates)

    def with_votes(self, extra: Iterable) -> "Profile":
        return Profile(self.candidates, self.votes + tuple(_coerce_vote(v) for v in extra), self.axis)

    def replace_votes(self, votes: Iterable) -> "Profile":
        return Profile(self.candidates, votes, self.axis)

    def scaled(self, factor: int) -> "Profile":
        return self.replace_votes(WeightedBallot(v.ballot, v.weight * factor) for v in self.votes)


class BallotDomain(enum.Enum):
    """Which ballots a manipulator or bribed voter may cast."""

    SP_COMPLETE = "sp-complete"
    SP_TOP = "sp-top"
    UNRESTRICTED_COMPLETE = "complete"
    UNRESTRICTED_TOP = "top"

    @property
    def single_peaked(self) -> bool:
        return self in (BallotDomain.SP_COMPLETE, BallotDomain.SP_TOP)

    @property
    def complete(self) -> bool:
        return self in (BallotDomain.SP_COMPLETE, BallotDomain.UNRESTRICTED_COMPLETE)


def is_single_peaked(ballot: Ballot, axis: Sequence[str]) -> bool:
    """Interval walk: every ranked candidate extends the axis interval grown from the peak."""
    index = {c: i for i, c in enumerate(axis)}
    try:
        positions = [index[c] for c in ballot.ranked]
    except KeyError as exc:
        raise DomainError(f"ballot {ballot} names {exc.args[0]!r}, which is not on the axis") from None
    lo = hi = positions[0]
    for pos in positions[1:]:
        if pos == lo - 1:
            lo = pos
        elif pos == hi + 1:
            hi = pos
        else:
            return False
    return True


def maverick_count(profile: Profile) -> int:
    """Number of votes (not total weight) that are not single-peaked on the axis."""
    if profile.axis is None:
        raise DomainError("maverick_count needs a profile with an axis")
    return sum(1 for v in profile.votes if not is_single_peaked(v.ballot, profile.axis))


def _walks(axis: Sequence[str], lo: int, hi: int, prefix: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
    yield prefix
    if lo > 0:
        yield from _walks(axis, lo - 1, hi, prefix + (axis[lo - 1],))
    if hi < len(axis) - 1:
        yield from _walks(axis, lo, hi + 1, prefix + (axis[hi + 1],))


def _ballot_key(axis_index, ranked):
    return (len(ranked), tuple(axis_index[c] for c in ranked))


def enumerate_sp_ballots(axis: Sequence[str], domain: BallotDomain = BallotDomain.SP_TOP) -> list[Ballot]:
    """All single-peaked ballots on ``axis``, shortest first; complete ones only if ``domain.complete``."""
    axis = tuple(axis)
    m = len(axis)
    found = set()
    for i in range(m):
        for ranked in _walks(axis, i, i, (axis[i],)):
            if domain.complete and len(ranked) != m:
                continue
            found.add(ranked)
    index = {c: i for i, c in enumerate(axis)}
    return [Ballot(r) for r in sorted(found, key=lambda r: _ballot_key(index, r))]


def enumerate_sp_orders_with_peak(axis: Sequence[str], p: str) -> list[Ballot]:
    axis = tuple(axis)
    if p not in axis:
        raise DomainError(f"{p!r} is not on the axis")
    i = axis.index(p)
    index = {c: j for j, c in enumerate(axis)}
    orders = {r for r in _walks(axis, i, i, (p,)) if len(r) == len(axis)}
    return [Ballot(r) for r in sorted(orders, key=lambda r: _ballot_key(index, r))]


def enumerate_ballots(candidates: Sequence[str], axis: Optional[Sequence[str]], domain: BallotDomain) -> list[Ballot]:
    """Every ballot permitted by ``domain``, in a fixed order (shortest first)."""
    if domain.single_peaked:
        if axis is None:
            raise DomainError(f"domain {domain.value} needs an axis")
        return enumerate_sp_ballots(axis, domain)
    order = tuple(axis) if axis is not None else tuple(sorted(candidates))
    index = {c: i for i, c in enumerate(order)}
    m = len(order)
    lengths = [m] if domain.complete else range(1, m + 1)
    out = [r for k in lengths for r in itertools.permutations(order, k)]
    return [Ballot(r) for r in sorted(out, key=lambda r: _ballot_key(index, r))]


def ballot_in_domain(ballot: Ballot, candidates: Sequence[str], axis: Optional[Sequence[str]], domain: BallotDomain) -> bool:
    if any(c not in candidates for c in ballot.ranked):
        return False
    if domain.complete and len(ballot) != len(candidates):
        return False
    if domain.single_peaked:
        return axis is not None and is_single_peaked(ballot, axis)
    return True


def pairwise_margin(profile: Profile, r: str, s: str) -> int:
    """Weight ranking ``r`` over ``s`` minus weight ranking ``s`` over ``r``."""
    if r == s:
        raise DomainError("pairwise_margin needs two distinct candidates")
    for c in (r, s):
        if c not in profile.candidates:
            raise DomainError(f"unknown candidate {c!r}")
    margin = 0
    for v in profile.votes:
        if v.ballot.prefers(r, s):
            margin += v.weight
        elif v.ballot.prefers(s, r):
            margin -= v.weight
    return margin


def weak_condorcet_winners(profile: Profile) -> frozenset[str]:
    cands = profile.candidates
    return frozenset(
        c for c in cands if all(pairwise_margin(profile, c, d) >= 0 for d in cands if d != c)
    )
