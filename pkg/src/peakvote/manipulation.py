"""Constructive coalitional weighted manipulation (CWCM).

``solve_cwcm_bruteforce`` is exact for every rule.  The remaining solvers are
the polynomial procedures for the rule/domain combinations where a single
uniform coalition vote is known to suffice; each raises ``NotApplicable``
outside its range.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    Ballot,
    BallotDomain,
    DomainError,
    NotApplicable,
    Profile,
    ResourceError,
    WeightedBallot,
    ballot_in_domain,
    enumerate_ballots,
    enumerate_sp_orders_with_peak,
    maverick_count,
)
from .rules import RuleSpec, Tally, TruncationScheme, WinnerModel, normalize_vector, p_wins, vec_add, winners

__all__ = [
    "DEFAULT_CAP",
    "CwcmInstance",
    "ManipulationCertificate",
    "check_certificate",
    "solve_cwcm_bruteforce",
    "solve_cwcm_naive",
    "solve_cwcm_vote_p",
    "solve_cwcm_plurality_rounddown",
    "solve_cwcm_copeland3",
    "solve_cwcm_eveto_sp",
    "solve_cwcm_eveto_1mav",
    "POLY_SOLVERS",
    "solve_cwcm",
]

DEFAULT_CAP = 50_000_000


@dataclass(frozen=True)
class CwcmInstance:
    candidates: tuple[str, ...]
    nonmanipulators: tuple[WeightedBallot, ...]
    manipulator_weights: tuple[int, ...]
    preferred: str
    domain: BallotDomain = BallotDomain.SP_TOP
    model: WinnerModel = WinnerModel.CO_WINNER
    axis: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        profile = Profile(self.candidates, self.nonmanipulators, self.axis)
        object.__setattr__(self, "candidates", profile.candidates)
        object.__setattr__(self, "nonmanipulators", profile.votes)
        object.__setattr__(self, "axis", profile.axis)
        weights = tuple(self.manipulator_weights)
        if any(isinstance(w, bool) or not isinstance(w, int) or w < 0 for w in weights):
            raise DomainError(f"manipulator weights must be non-negative integers: {weights}")
        object.__setattr__(self, "manipulator_weights", weights)
        if self.preferred not in profile.candidates:
            raise DomainError(f"preferred candidate {self.preferred!r} is not running")
        if self.domain.single_peaked and self.axis is None:
            raise DomainError("single-peaked domains need an axis")

    @property
    def profile(self) -> Profile:
        return Profile(self.candidates, self.nonmanipulators, self.axis)

    def with_assignment(self, assignment: Sequence[Ballot]) -> Profile:
        extra = [WeightedBallot(b, w) for b, w in zip(assignment, self.manipulator_weights)]
        return self.profile.with_votes(extra)

    def domain_ballots(self) -> list[Ballot]:
        return enumerate_ballots(self.candidates, self.axis, self.domain)

    def replace(self, **changes) -> "CwcmInstance":
        fields = dict(
            candidates=self.candidates,
            nonmanipulators=self.nonmanipulators,
            manipulator_weights=self.manipulator_weights,
            preferred=self.preferred,
            domain=self.domain,
            model=self.model,
            axis=self.axis,
        )
        fields.update(changes)
        return CwcmInstance(**fields)


@dataclass(frozen=True)
class ManipulationCertificate:
    """One ballot per manipulator, in the order of ``manipulator_weights``."""

    assignment: tuple[Ballot, ...]

    def __str__(self):
        return "; ".join(str(b) for b in self.assignment) if self.assignment else "(none)"


def check_certificate(instance: CwcmInstance, rule: RuleSpec, cert: ManipulationCertificate) -> bool:
    """Replay ``cert`` against the non-manipulators and confirm ``p`` wins."""
    if len(cert.assignment) != len(instance.manipulator_weights):
        return False
    for b in cert.assignment:
        if not ballot_in_domain(b, instance.candidates, instance.axis, instance.domain):
            return False
    result = winners(rule, instance.with_assignment(cert.assignment), instance.model)
    return p_wins(result, instance.preferred, instance.model)


def _check_cap(n_ballots: int, n_voters: int, cap: int):
    if n_voters and n_ballots ** n_voters > cap:
        raise ResourceError(f"{n_ballots}^{n_voters} assignments exceed the enumeration cap {cap}")


def _distinct_effects(tally: Tally, ballots: Sequence[Ballot]):
    """Ballots with identical effect are interchangeable; keep the first of each."""
    seen = {}
    for b in ballots:
        seen.setdefault(tally.effect(b), b)
    return [(b, e) for e, b in seen.items()]


def solve_cwcm_bruteforce(instance: CwcmInstance, rule: RuleSpec, cap: int = DEFAULT_CAP) -> Optional[ManipulationCertificate]:
    """Exhaustive search over all assignments of domain ballots to manipulators.

    Assignments are compared lexicographically by the domain's ballot order
    and the least successful one is returned.  The search runs over reachable
    tally sums rather than raw assignments, which is exact because every rule
    is a function of the summed tally.
    """
    ballots = instance.domain_ballots()
    weights = instance.manipulator_weights
    _check_cap(len(ballots), len(weights), cap)
    tally = Tally(rule, instance.candidates, instance.axis)
    base = tally.of_votes(instance.nonmanipulators)
    options = _distinct_effects(tally, ballots)
    p, model = instance.preferred, instance.model

    layers = [{tally.zero}]
    for w in weights:
        layers.append({vec_add(s, e, w) for s in layers[-1] for _, e in options})
    good = {s for s in layers[-1] if p_wins(tally.winners(vec_add(base, s), model), p, model)}
    goods = [good]
    for i in range(len(weights) - 1, -1, -1):
        w, nxt = weights[i], goods[0]
        goods.insert(0, {s for s in layers[i] if any(vec_add(s, e, w) in nxt for _, e in options)})
    if tally.zero not in goods[0]:
        return None
    assignment, state = [], tally.zero
    for i, w in enumerate(weights):
        for b, e in options:
            nxt = vec_add(state, e, w)
            if nxt in goods[i + 1]:
                assignment.append(b)
                state = nxt
                break
    return ManipulationCertificate(tuple(assignment))


def solve_cwcm_naive(instance: CwcmInstance, rule: RuleSpec, cap: int = 200_000) -> Optional[ManipulationCertificate]:
    """Plain product enumeration through ``winners``; an independent check for small instances."""
    ballots = instance.domain_ballots()
    _check_cap(len(ballots), len(instance.manipulator_weights), cap)
    for combo in itertools.product(ballots, repeat=len(instance.manipulator_weights)):
        result = winners(rule, instance.with_assignment(combo), instance.model)
        if p_wins(result, instance.preferred, instance.model):
            return ManipulationCertificate(tuple(combo))
    return None


def _uniform(instance: CwcmInstance, rule: RuleSpec, ballot: Ballot) -> Optional[ManipulationCertificate]:
    cert = ManipulationCertificate((ballot,) * len(instance.manipulator_weights))
    return cert if check_certificate(instance, rule, cert) else None


def _is_multiple(vec, pattern) -> bool:
    vec = normalize_vector(vec)
    c = vec[0]
    return vec == tuple(c * x for x in pattern)


def _is_plurality_like(vec) -> bool:
    m = len(vec)
    return _is_multiple(vec, (1,) + (0,) * (m - 1))


def _is_veto_like(vec) -> bool:
    m = len(vec)
    return _is_multiple(vec, (1,) * (m - 1) + (0,))


def solve_cwcm_vote_p(instance: CwcmInstance, rule: RuleSpec) -> Optional[ManipulationCertificate]:
    """Every manipulator casts the one-candidate ballot ``(p)``.

    Applies to round-up scoring, veto with round-down, plurality with average
    scores, and AVR, in any domain allowing truncated ballots.
    """
    ok = rule.kind == "avr"
    if rule.kind == "scoring":
        scheme, vec = rule.scheme, rule.vector
        ok = (
            scheme is TruncationScheme.ROUND_UP
            or (scheme is TruncationScheme.ROUND_DOWN and _is_veto_like(vec))
            or (scheme is TruncationScheme.AVERAGE and _is_plurality_like(vec))
        )
    if not ok:
        raise NotApplicable(f"vote-(p) strategy is not known to be optimal for {rule}")
    if instance.domain.complete:
        raise NotApplicable("the ballot (p) is not in a complete-ballot domain")
    return _uniform(instance, rule, Ballot([instance.preferred]))


def solve_cwcm_plurality_rounddown(instance: CwcmInstance, rule: RuleSpec) -> Optional[ManipulationCertificate]:
    """Every manipulator casts one complete single-peaked order topped by ``p``."""
    if not (rule.kind == "scoring" and rule.scheme is TruncationScheme.ROUND_DOWN and _is_plurality_like(rule.vector)):
        raise NotApplicable("needs plurality with round-down scoring")
    if not instance.domain.single_peaked:
        raise NotApplicable("needs a single-peaked domain")
    ballot = enumerate_sp_orders_with_peak(instance.axis, instance.preferred)[0]
    return _uniform(instance, rule, ballot)


def _complete_sp_nonmanipulators(instance: CwcmInstance, max_mavericks: int):
    m = len(instance.candidates)
    if any(len(v.ballot) != m for v in instance.nonmanipulators):
        raise NotApplicable("non-manipulators must cast complete ballots")
    if maverick_count(instance.profile) > max_mavericks:
        raise NotApplicable(f"more than {max_mavericks} maverick(s) among the non-manipulators")


def _try_peak_orders(instance, rule):
    for ballot in enumerate_sp_orders_with_peak(instance.axis, instance.preferred):
        cert = _uniform(instance, rule, ballot)
        if cert is not None:
            return cert
    return None


def solve_cwcm_copeland3(instance: CwcmInstance, rule: RuleSpec) -> Optional[ManipulationCertificate]:
    """Three-candidate Copeland^alpha (alpha < 1), complete single-peaked votes."""
    if rule.kind != "copeland" or rule.alpha >= 1:
        raise NotApplicable("needs Copeland^alpha with alpha < 1")
    if len(instance.candidates) != 3 or instance.domain is not BallotDomain.SP_COMPLETE:
        raise NotApplicable("needs three candidates and the sp-complete domain")
    _complete_sp_nonmanipulators(instance, 0)
    return _try_peak_orders(instance, rule)


def _eveto_common(instance: CwcmInstance, rule: RuleSpec, max_mavericks: int):
    if rule.kind != "eliminate-veto" or rule.tiebreak is not None:
        raise NotApplicable("needs eliminate(veto) under winner-model semantics")
    if instance.domain is not BallotDomain.SP_COMPLETE or instance.model is not WinnerModel.UNIQUE:
        raise NotApplicable("needs the sp-complete domain and the unique-winner model")
    _complete_sp_nonmanipulators(instance, max_mavericks)


def solve_cwcm_eveto_sp(instance: CwcmInstance, rule: RuleSpec) -> Optional[ManipulationCertificate]:
    """Try each complete single-peaked order topped by ``p`` as the coalition's common vote.

    Exhaustive over those orders, of which there are C(m-1, i-1) for ``p`` at
    axis position i, so polynomial for a bounded number of candidates.
    """
    _eveto_common(instance, rule, 0)
    return _try_peak_orders(instance, rule)


def solve_cwcm_eveto_1mav(instance: CwcmInstance, rule: RuleSpec) -> Optional[ManipulationCertificate]:
    """Same procedure as ``solve_cwcm_eveto_sp``, allowing one maverick non-manipulator."""
    _eveto_common(instance, rule, 1)
    return _try_peak_orders(instance, rule)


POLY_SOLVERS = {
    "vote-p": solve_cwcm_vote_p,
    "plurality-rounddown": solve_cwcm_plurality_rounddown,
    "copeland3": solve_cwcm_copeland3,
    "eveto-sp": solve_cwcm_eveto_sp,
    "eveto-1mav": solve_cwcm_eveto_1mav,
}


def solve_cwcm(instance: CwcmInstance, rule: RuleSpec, solver: str = "auto", cap: int = DEFAULT_CAP):
    """Dispatch by name.  ``auto`` picks the first applicable polynomial solver, else brute force.

    Returns ``(solver_used, certificate_or_None)``.
    """
    if solver == "brute":
        return "brute", solve_cwcm_bruteforce(instance, rule, cap)
    if solver == "auto":
        for name, fn in POLY_SOLVERS.items():
            try:
                return name, fn(instance, rule)
            except NotApplicable:
                continue
        return "brute", solve_cwcm_bruteforce(instance, rule, cap)
    if solver not in POLY_SOLVERS:
        raise DomainError(f"unknown solver {solver!r}")
    return solver, POLY_SOLVERS[solver](instance, rule)
