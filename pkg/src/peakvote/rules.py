"""Winner determination for weighted profiles of top-truncated ballots.

Rules covered: positional scoring (round-up, round-down and average handling
of truncated ballots), eliminate(veto), Baldwin (eliminate(Borda)),
Copeland^alpha and the artificial rule AVR.  Scores are exact.

Two evaluation paths exist.  The direct functions (``positional_scores``,
``eliminate_run``, ...) work on a ``Profile``.  ``Tally`` maps each ballot to
an integer vector such that the outcome is a function of the weighted sum of
these vectors; the exhaustive solvers search over sums instead of profiles.
The test-suite checks both paths agree.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Optional, Sequence

from .core import Ballot, DomainError, Profile

__all__ = [
    "TruncationScheme",
    "WinnerModel",
    "TieBreak",
    "RuleSpec",
    "plurality",
    "borda",
    "veto",
    "check_vector",
    "normalize_vector",
    "positional_scores",
    "scoring_winners",
    "eliminate_run",
    "elimination_winners",
    "copeland_scores",
    "avr_scores",
    "winners",
    "p_wins",
    "Tally",
]


class TruncationScheme(enum.Enum):
    ROUND_UP = "roundup"
    ROUND_DOWN = "rounddown"
    AVERAGE = "average"


class WinnerModel(enum.Enum):
    CO_WINNER = "co"
    UNIQUE = "unique"


def plurality(m: int) -> tuple[int, ...]:
    return (1,) + (0,) * (m - 1)


def borda(m: int) -> tuple[int, ...]:
    return tuple(range(m - 1, -1, -1))


def veto(m: int) -> tuple[int, ...]:
    return (1,) * (m - 1) + (0,)


def check_vector(alphas: Sequence[int], m: Optional[int] = None) -> tuple[int, ...]:
    alphas = tuple(alphas)
    if not alphas:
        raise DomainError("empty scoring vector")
    if any(isinstance(a, bool) or not isinstance(a, int) or a < 0 for a in alphas):
        raise DomainError(f"scoring vector entries must be non-negative integers: {alphas}")
    if any(x < y for x, y in zip(alphas, alphas[1:])):
        raise DomainError(f"scoring vector must be non-increasing: {alphas}")
    if m is not None and len(alphas) != m:
        raise DomainError(f"scoring vector has length {len(alphas)}, profile has {m} candidates")
    return alphas


def normalize_vector(alphas: Sequence[int]) -> tuple[int, ...]:
    """Shift so the last entry is zero; the outcome of the rule is unchanged."""
    low = alphas[-1]
    return tuple(a - low for a in alphas)


@dataclass(frozen=True)
class TieBreak:
    """Priority order over candidates, used to break elimination ties.

    ``lex`` ranks candidates alphabetically, ``axis`` left to right along the
    axis, and ``favor`` puts ``candidate`` first with the rest alphabetical.
    On a tie for the lowest score the tied candidate ranked last goes out.
    """

    kind: str = "lex"
    candidate: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("lex", "axis", "favor"):
            raise DomainError(f"unknown tie-break kind {self.kind!r}")
        if (self.kind == "favor") != (self.candidate is not None):
            raise DomainError("a candidate is required for, and only for, the favor tie-break")

    @classmethod
    def parse(cls, text: str) -> "TieBreak":
        kind, _, cand = text.partition(":")
        return cls(kind, cand or None)

    def priority(self, candidates: Sequence[str], axis: Optional[Sequence[str]] = None) -> list[str]:
        if self.kind == "axis":
            if axis is None:
                raise DomainError("axis tie-break needs an axis")
            return list(axis)
        order = sorted(candidates)
        if self.kind == "favor":
            if self.candidate not in order:
                raise DomainError(f"favored candidate {self.candidate!r} is not running")
            order.remove(self.candidate)
            order.insert(0, self.candidate)
        return order

    def __str__(self):
        return f"favor:{self.candidate}" if self.kind == "favor" else self.kind


_KINDS = ("scoring", "eliminate-veto", "baldwin", "copeland", "avr")


@dataclass(frozen=True)
class RuleSpec:
    """A voting rule with its parameters.

    For the elimination rules ``tiebreak=None`` means every tie-break sequence
    is explored (the winner-model semantics); a ``TieBreak`` fixes one trace.
    """

    kind: str
    vector: Optional[tuple[int, ...]] = None
    scheme: Optional[TruncationScheme] = None
    alpha: Optional[Fraction] = None
    tiebreak: Optional[TieBreak] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown rule kind {self.kind!r}")
        if self.kind == "scoring":
            if self.vector is None or self.scheme is None:
                raise DomainError("scoring rules need a vector and a truncation scheme")
            object.__setattr__(self, "vector", check_vector(self.vector))
        if self.kind == "copeland":
            alpha = Fraction(self.alpha if self.alpha is not None else Fraction(1, 2))
            if not 0 <= alpha <= 1:
                raise DomainError(f"Copeland alpha must lie in [0, 1], got {alpha}")
            object.__setattr__(self, "alpha", alpha)

    @classmethod
    def scoring(cls, vector, scheme=TruncationScheme.ROUND_UP):
        return cls("scoring", vector=tuple(vector), scheme=scheme)

    @classmethod
    def eliminate_veto(cls, tiebreak=None):
        return cls("eliminate-veto", tiebreak=tiebreak)

    @classmethod
    def baldwin(cls, tiebreak=None):
        return cls("baldwin", tiebreak=tiebreak)

    @classmethod
    def copeland(cls, alpha=Fraction(1, 2)):
        return cls("copeland", alpha=Fraction(alpha))

    @classmethod
    def avr(cls):
        return cls("avr")

    @property
    def is_elimination(self) -> bool:
        return self.kind in ("eliminate-veto", "baldwin")

    def with_tiebreak(self, tiebreak: Optional[TieBreak]) -> "RuleSpec":
        return RuleSpec(self.kind, self.vector, self.scheme, self.alpha, tiebreak)

    def __str__(self):
        if self.kind == "scoring":
            return f"scoring:{','.join(map(str, self.vector))}:{self.scheme.value}"
        if self.kind == "copeland":
            return f"copeland:{self.alpha}"
        return self.kind


# --- positional scoring ---------------------------------------------------


@lru_cache(maxsize=None)
def _ballot_scores(alphas: tuple[int, ...], k: int, scheme: TruncationScheme):
    """Per-rank scores and the score of every unranked candidate, for a ballot ranking k of m."""
    m = len(alphas)
    if k >= m:
        return tuple(Fraction(a) for a in alphas[:m]), Fraction(0)
    if scheme is TruncationScheme.ROUND_UP:
        ranked = alphas[:k]
        unranked = Fraction(alphas[-1])
    elif scheme is TruncationScheme.ROUND_DOWN:
        # 1-based position i scores alpha_{m-(k-i)-1}
        ranked = tuple(alphas[m - (k - i) - 2] for i in range(1, k + 1))
        unranked = Fraction(alphas[-1])
    else:
        ranked = alphas[:k]
        unranked = Fraction(sum(alphas[k:]), m - k)
    return tuple(Fraction(a) for a in ranked), unranked


def positional_scores(profile: Profile, vector: Sequence[int], scheme: TruncationScheme) -> dict[str, Fraction]:
    alphas = check_vector(vector, profile.m)
    scores = {c: Fraction(0) for c in profile.candidates}
    for v in profile.votes:
        ranked, unranked = _ballot_scores(alphas, len(v.ballot), scheme)
        for c, s in zip(v.ballot.ranked, ranked):
            scores[c] += s * v.weight
        if unranked:
            listed = set(v.ballot.ranked)
            for c in profile.candidates:
                if c not in listed:
                    scores[c] += unranked * v.weight
    return scores


def _argmax(scores: Mapping[str, Fraction]) -> frozenset[str]:
    best = max(scores.values())
    return frozenset(c for c, s in scores.items() if s == best)


def scoring_winners(profile: Profile, vector: Sequence[int], scheme: TruncationScheme) -> frozenset[str]:
    return _argmax(positional_scores(profile, vector, scheme))


# --- elimination rules ----------------------------------------------------


def _restricted_vector(base: str, r: int) -> tuple[int, ...]:
    if base == "veto":
        return veto(r)
    if base == "borda":
        return borda(r)
    raise DomainError(f"unknown elimination base {base!r}")


def _round_scores(profile: Profile, base: str, remaining: frozenset[str]) -> dict[str, int]:
    vec = _restricted_vector(base, len(remaining))
    scores = {c: 0 for c in remaining}
    for v in profile.votes:
        kept = [c for c in v.ballot.ranked if c in remaining]
        # round-up: unranked candidates get the last entry, which is 0 for both bases
        for i, c in enumerate(kept):
            scores[c] += vec[i] * v.weight
    return scores


def _pick_loser(scores: Mapping[str, int], priority: Sequence[str]) -> str:
    low = min(scores.values())
    tied = [c for c in scores if scores[c] == low]
    if len(tied) == 1:
        return tied[0]
    rank = {c: i for i, c in enumerate(priority)}
    return max(tied, key=rank.__getitem__)


def _trace(candidates, score_fn: Callable[[frozenset], Mapping[str, int]], priority):
    remaining = frozenset(candidates)
    order = []
    while len(remaining) > 1:
        loser = _pick_loser(score_fn(remaining), priority)
        order.append(loser)
        remaining = remaining - {loser}
    (winner,) = remaining
    return tuple(order), winner


def _possible_winners(candidates, score_fn) -> frozenset[str]:
    """Union of winners over every way of breaking elimination ties."""
    memo: dict[frozenset, frozenset] = {}

    def go(remaining: frozenset) -> frozenset:
        if len(remaining) == 1:
            return remaining
        if remaining in memo:
            return memo[remaining]
        scores = score_fn(remaining)
        low = min(scores.values())
        out = frozenset()
        for c in remaining:
            if scores[c] == low:
                out |= go(remaining - {c})
        memo[remaining] = out
        return out

    return go(frozenset(candidates))


def eliminate_run(profile: Profile, base: str, tiebreak: Optional[TieBreak] = None):
    """Run eliminate(``base``) once; returns ``(elimination_order, winner)``."""
    priority = (tiebreak or TieBreak()).priority(profile.candidates, profile.axis)
    return _trace(profile.candidates, lambda rem: _round_scores(profile, base, rem), priority)


def elimination_winners(profile: Profile, base: str, model: "WinnerModel") -> frozenset[str]:
    """Candidates left last by some tie-break sequence.

    Under ``UNIQUE`` the result is a singleton only when every sequence
    leaves the same candidate; otherwise the optimistic set is returned.
    """
    return _possible_winners(profile.candidates, lambda rem: _round_scores(profile, base, rem))


# --- pairwise rules -------------------------------------------------------


def copeland_scores(profile: Profile, alpha) -> dict[str, Fraction]:
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise DomainError(f"Copeland alpha must lie in [0, 1], got {alpha}")
    cands = profile.candidates
    margins = {}
    for i, r in enumerate(cands):
        for s in cands[i + 1:]:
            d = 0
            for v in profile.votes:
                if v.ballot.prefers(r, s):
                    d += v.weight
                elif v.ballot.prefers(s, r):
                    d -= v.weight
            margins[r, s] = d
    return _copeland_from_margins(cands, margins, alpha)


def _copeland_from_margins(cands, margins, alpha) -> dict[str, Fraction]:
    scores = {c: Fraction(0) for c in cands}
    for (r, s), d in margins.items():
        if d > 0:
            scores[r] += 1
        elif d < 0:
            scores[s] += 1
        else:
            scores[r] += alpha
            scores[s] += alpha
    return scores


def avr_scores(profile: Profile) -> dict[str, Fraction]:
    m = profile.m
    scores = {c: Fraction(0) for c in profile.candidates}
    for v in profile.votes:
        for i, c in enumerate(v.ballot.ranked):
            pos = i + 1
            beaten = m - pos  # ranked below plus every unranked candidate
            scores[c] += (m - pos) * beaten * v.weight
    return scores


# --- dispatch -------------------------------------------------------------


def _check_rule(rule: RuleSpec, profile: Profile):
    if rule.kind == "scoring":
        check_vector(rule.vector, profile.m)


def winners(rule: RuleSpec, profile: Profile, model: WinnerModel = WinnerModel.CO_WINNER) -> frozenset[str]:
    _check_rule(rule, profile)
    if rule.kind == "scoring":
        return scoring_winners(profile, rule.vector, rule.scheme)
    if rule.kind == "copeland":
        return _argmax(copeland_scores(profile, rule.alpha))
    if rule.kind == "avr":
        return _argmax(avr_scores(profile))
    base = "veto" if rule.kind == "eliminate-veto" else "borda"
    if rule.tiebreak is not None:
        return frozenset({eliminate_run(profile, base, rule.tiebreak)[1]})
    return elimination_winners(profile, base, model)


def p_wins(winner_set, p: str, model: WinnerModel) -> bool:
    if model is WinnerModel.UNIQUE:
        return winner_set == frozenset({p})
    return p in winner_set


# --- additive tallies -----------------------------------------------------


def vec_add(a: tuple, b: tuple, w: int = 1) -> tuple:
    if w == 1:
        return tuple(x + y for x, y in zip(a, b))
    return tuple(x + w * y for x, y in zip(a, b))


class Tally:
    """Integer sufficient statistic of a profile for one rule.

    ``effect(ballot)`` is the contribution of a weight-1 vote; the statistic
    of a profile is the weighted sum of effects, and ``winners(stat)``
    recovers the winner set.
    """

    def __init__(self, rule: RuleSpec, candidates: Sequence[str], axis: Optional[Sequence[str]] = None):
        self.rule = rule
        self.candidates = tuple(sorted(candidates))
        self.axis = tuple(axis) if axis is not None else None
        self.index = {c: i for i, c in enumerate(self.candidates)}
        m = len(self.candidates)
        self.m = m
        if rule.kind == "scoring":
            check_vector(rule.vector, m)
            self.scale = math.lcm(*range(1, m + 1)) if rule.scheme is TruncationScheme.AVERAGE else 1
            self.size = m
        elif rule.kind == "avr":
            self.size = m
        elif rule.kind == "copeland":
            self.pairs = list(itertools.combinations(range(m), 2))
            self.size = len(self.pairs)
        else:
            self.base = "veto" if rule.kind == "eliminate-veto" else "borda"
            self.offsets = {}
            off = 0
            for r in range(2, m + 1):
                for sub in itertools.combinations(range(m), r):
                    self.offsets[frozenset(self.candidates[i] for i in sub)] = (off, sub)
                    off += r
            self.size = off
            # per remaining set: slice of the statistic and the set left after each elimination
            self._nodes = {
                rem: (off, off + len(sub), tuple(rem - {self.candidates[i]} for i in sub))
                for rem, (off, sub) in self.offsets.items()
            }
            if rule.tiebreak is not None:
                self.priority = rule.tiebreak.priority(self.candidates, self.axis)
                rank = {c: i for i, c in enumerate(self.priority)}
                self._order = {
                    rem: tuple(sorted(range(len(sub)), key=lambda j: -rank[self.candidates[sub[j]]]))
                    for rem, (off, sub) in self.offsets.items()
                }
        self.zero = (0,) * self.size
        self._cache: dict[Ballot, tuple] = {}

    def effect(self, ballot: Ballot) -> tuple:
        hit = self._cache.get(ballot)
        if hit is not None:
            return hit
        out = [0] * self.size
        rule, idx, m = self.rule, self.index, self.m
        if rule.kind == "scoring":
            ranked, unranked = _ballot_scores(rule.vector, len(ballot), rule.scheme)
            for c, s in zip(ballot.ranked, ranked):
                out[idx[c]] = int(s * self.scale)
            if unranked:
                listed = set(ballot.ranked)
                for c in self.candidates:
                    if c not in listed:
                        out[idx[c]] = int(unranked * self.scale)
        elif rule.kind == "avr":
            for i, c in enumerate(ballot.ranked):
                out[idx[c]] = (m - i - 1) ** 2
        elif rule.kind == "copeland":
            for j, (a, b) in enumerate(self.pairs):
                ca, cb = self.candidates[a], self.candidates[b]
                if ballot.prefers(ca, cb):
                    out[j] = 1
                elif ballot.prefers(cb, ca):
                    out[j] = -1
        else:
            for rem, (off, sub) in self.offsets.items():
                kept = [c for c in ballot.ranked if c in rem]
                vec = _restricted_vector(self.base, len(sub))
                pos = {self.candidates[i]: j for j, i in enumerate(sub)}
                for i, c in enumerate(kept):
                    out[off + pos[c]] = vec[i]
        result = tuple(out)
        self._cache[ballot] = result
        return result

    def of_votes(self, votes) -> tuple:
        total = self.zero
        for v in votes:
            if v.weight:
                total = vec_add(total, self.effect(v.ballot), v.weight)
        return total

    def winners(self, stat: tuple, model: WinnerModel = WinnerModel.CO_WINNER) -> frozenset[str]:
        kind = self.rule.kind
        if kind in ("scoring", "avr"):
            best = max(stat)
            return frozenset(c for c, s in zip(self.candidates, stat) if s == best)
        if kind == "copeland":
            margins = {(self.candidates[a], self.candidates[b]): stat[j] for j, (a, b) in enumerate(self.pairs)}
            return _argmax(_copeland_from_margins(self.candidates, margins, self.rule.alpha))
        if self.m == 1:
            return frozenset(self.candidates)
        nodes = self._nodes
        rem = frozenset(self.candidates)
        if self.rule.tiebreak is not None:
            order = self._order
            while len(rem) > 1:
                lo, hi, children = nodes[rem]
                scores = stat[lo:hi]
                low = min(scores)
                rem = children[next(j for j in order[rem] if scores[j] == low)]
            return rem
        memo = {}

        def go(rem):
            if len(rem) == 1:
                return rem
            hit = memo.get(rem)
            if hit is None:
                lo, hi, children = nodes[rem]
                scores = stat[lo:hi]
                low = min(scores)
                hit = frozenset().union(*(go(children[j]) for j, s in enumerate(scores) if s == low))
                memo[rem] = hit
            return hit

        return go(rem)
