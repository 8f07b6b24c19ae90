"""Number-problem oracles, hardness-instance generators and an equivalence checker.

Each generator turns a Partition, Partition' or fixed-difference subset sum
instance into a three-candidate manipulation or bribery instance whose
answer should match the source.  ``verify`` decides both sides exhaustively.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .bribery import BribePlan, BriberyInstance, RouteSearch, check_plan
from .core import Ballot, BallotDomain, DomainError, WeightedBallot, maverick_count
from .manipulation import CwcmInstance, ManipulationCertificate, check_certificate, solve_cwcm_bruteforce
from .rules import RuleSpec, TieBreak, TruncationScheme, WinnerModel, check_vector, normalize_vector

__all__ = [
    "PartitionInstance",
    "PartitionPrimeInstance",
    "FdssInstance",
    "solve_partition",
    "solve_partition_prime",
    "solve_fdss",
    "ReductionKind",
    "VerificationReport",
    "target_rule",
    "generate",
    "verify",
    "proof_witness",
    "check_witness",
    "tiebreak_policies",
    "exhaustive_sources",
    "random_sources",
    "make_source",
]


def _check_values(values) -> tuple[int, ...]:
    values = tuple(values)
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise DomainError(f"values must be non-negative integers, got {v!r}")
    return values


@dataclass(frozen=True)
class PartitionInstance:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values))
        if sum(self.values) % 2:
            raise DomainError(f"Partition needs an even sum, got {sum(self.values)}")

    @property
    def K(self) -> int:
        return sum(self.values) // 2


@dataclass(frozen=True)
class PartitionPrimeInstance:
    """n values summing to 2nK, each at least K."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = _check_values(self.values)
        object.__setattr__(self, "values", values)
        n = len(values)
        if n == 0 or sum(values) % (2 * n):
            raise DomainError(f"Partition' needs a sum divisible by 2n, got sum {sum(values)} with n={n}")
        if any(v < self.K for v in values):
            raise DomainError(f"Partition' needs every value >= K = {self.K}")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def K(self) -> int:
        return sum(self.values) // (2 * len(self.values))


@dataclass(frozen=True)
class FdssInstance:
    """Find disjoint S1, S2 with sum(S1) - sum(S2) = K, where the values sum to 2K."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values))
        if sum(self.values) % 2:
            raise DomainError(f"fixed-difference subset sum needs an even sum, got {sum(self.values)}")

    @property
    def K(self) -> int:
        return sum(self.values) // 2


Source = Union[PartitionInstance, PartitionPrimeInstance, FdssInstance]


def _subset_with_sum(values, target) -> Optional[tuple[int, ...]]:
    for r in range(len(values) + 1):
        for idx in itertools.combinations(range(len(values)), r):
            if sum(values[i] for i in idx) == target:
                return idx
    return None


def solve_partition(inst: PartitionInstance) -> Optional[tuple[int, ...]]:
    """Indices of a subset summing to K, or None."""
    return _subset_with_sum(inst.values, inst.K)


def solve_partition_prime(inst: PartitionPrimeInstance) -> Optional[tuple[int, ...]]:
    return _subset_with_sum(inst.values, inst.n * inst.K)


def solve_fdss(inst: FdssInstance) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """``(S1, S2)`` index tuples with sum(S1) - sum(S2) = K; either may be empty."""
    n = len(inst.values)
    for labels in itertools.product((0, 1, 2), repeat=n):
        diff = sum(v if lab == 1 else -v if lab == 2 else 0 for v, lab in zip(inst.values, labels))
        if diff == inst.K:
            return (
                tuple(i for i in range(n) if labels[i] == 1),
                tuple(i for i in range(n) if labels[i] == 2),
            )
    return None


# --- kinds -----------------------------------------------------------------


class ReductionKind(enum.Enum):
    ROUNDDOWN_SP_1 = "rounddown-sp-1"
    ROUNDDOWN_SP_2 = "rounddown-sp-2"
    ROUNDDOWN_SP_3 = "rounddown-sp-3"
    ROUNDDOWN_1MAV_1 = "rounddown-1mav-1"
    ROUNDDOWN_1MAV_2 = "rounddown-1mav-2"
    ROUNDDOWN_1MAV_3 = "rounddown-1mav-3"
    AVERAGE_SP = "average-sp"
    AVERAGE_1MAV = "average-1mav"
    COPELAND_TOP_SP = "copeland-top-sp"
    EVETO_CWCM_SP = "eveto-cwcm-sp"
    EVETO_CWCM_1MAV = "eveto-cwcm-1mav"
    EVETO_BRIBERY_SP = "eveto-bribery-sp"
    EVETO_BRIBERY_1MAV = "eveto-bribery-1mav"
    BALDWIN_BRIBERY_SP = "baldwin-bribery-sp"
    AVR_CWCM_SP = "avr-cwcm-sp"

    @property
    def rounddown_case(self) -> Optional[int]:
        if self.value.startswith("rounddown"):
            return int(self.value[-1])
        return None

    @property
    def source_type(self) -> type:
        if self in (ReductionKind.AVERAGE_SP, ReductionKind.AVERAGE_1MAV, ReductionKind.COPELAND_TOP_SP):
            return FdssInstance
        if self.is_bribery:
            return PartitionPrimeInstance
        return PartitionInstance

    @property
    def is_bribery(self) -> bool:
        return "bribery" in self.value

    @property
    def mavericks(self) -> int:
        return 1 if "1mav" in self.value else 0

    @property
    def needs_vector(self) -> bool:
        return self.value.startswith(("rounddown", "average"))


DEFAULT_VECTORS = {1: (3, 2, 0), 2: (3, 1, 0), 3: (2, 1, 0), "average": (3, 2, 0)}


def _vector_for(kind: ReductionKind, vector) -> tuple[int, int, int]:
    if vector is None:
        vector = DEFAULT_VECTORS[kind.rounddown_case or "average"]
    vector = check_vector(vector, 3)
    a1, a2, _ = normalize_vector(vector)
    if a2 == 0:
        raise DomainError(f"vector {vector} is isomorphic to plurality")
    case = kind.rounddown_case
    if case is not None:
        actual = 1 if a2 < a1 < 2 * a2 else 2 if a1 > 2 * a2 else 3 if a1 == 2 * a2 else None
        if actual != case:
            raise DomainError(f"vector {vector} does not satisfy the alpha relation of case {case}")
    return vector


def _alpha_for(alpha) -> Fraction:
    alpha = Fraction(1, 2) if alpha is None else Fraction(alpha)
    if not 0 <= alpha < 1:
        raise DomainError(f"Copeland alpha must lie in [0, 1) for this construction, got {alpha}")
    return alpha


def target_rule(kind: ReductionKind, vector=None, alpha=None) -> RuleSpec:
    if kind.value.startswith("rounddown"):
        return RuleSpec.scoring(_vector_for(kind, vector), TruncationScheme.ROUND_DOWN)
    if kind.value.startswith("average"):
        return RuleSpec.scoring(_vector_for(kind, vector), TruncationScheme.AVERAGE)
    if kind is ReductionKind.COPELAND_TOP_SP:
        return RuleSpec.copeland(_alpha_for(alpha))
    if kind.value.startswith("eveto"):
        return RuleSpec.eliminate_veto()
    if kind is ReductionKind.BALDWIN_BRIBERY_SP:
        return RuleSpec.baldwin()
    return RuleSpec.avr()


def _votes(*groups):
    out = []
    for count, weight, ranking in groups:
        if weight < 0:
            raise DomainError("construction weight would be negative; K must be at least 1")
        out += [WeightedBallot(Ballot(ranking), weight)] * count
    return tuple(out)


ABP, APB, BAP, BPA, PAB, PBA = "abp", "apb", "bap", "bpa", "pab", "pba"
A, B, P = "a", "b", "p"
CANDS = ("a", "b", "p")


def _check_source(kind: ReductionKind, source):
    if not isinstance(source, kind.source_type):
        raise DomainError(f"{kind.value} needs a {kind.source_type.__name__}, got {type(source).__name__}")
    if kind.value.startswith("eveto") and source.K < 1:
        raise DomainError("this construction needs K >= 1")


def generate(kind: ReductionKind, source: Source, vector=None, alpha=None) -> Union[CwcmInstance, BriberyInstance]:
    """Build the target instance for ``source``."""
    _check_source(kind, source)
    target_rule(kind, vector, alpha)  # validates parameters
    K, vals = source.K, source.values
    R = ReductionKind
    if kind.needs_vector:
        a1, a2, _ = normalize_vector(_vector_for(kind, vector))
    model = WinnerModel.CO_WINNER
    domain = BallotDomain.SP_TOP
    scale = 1
    if kind is R.ROUNDDOWN_SP_1:
        axis, S = "pab", _votes((1, K, ABP), (1, K, BAP), (1, K, B), (1, K, P))
    elif kind is R.ROUNDDOWN_SP_2:
        c = 2 * a1 - a2
        axis, S, scale = "apb", _votes((1, c * K, APB), (1, c * K, BPA)), a1 - 2 * a2
    elif kind is R.ROUNDDOWN_SP_3:
        axis, S = "apb", _votes((1, 3 * K, A), (1, 3 * K, B))
    elif kind is R.ROUNDDOWN_1MAV_1:
        axis, S = "pab", _votes((1, K, ABP), (1, K, BPA), (1, K, A), (1, K, B))
    elif kind is R.ROUNDDOWN_1MAV_2:
        c = 2 * a1 - a2
        axis, S, scale = "apb", _votes((1, c * K, APB), (1, c * K, BAP), (1, c * K, B), (1, 2 * c * K, P)), a1 - 2 * a2
    elif kind is R.ROUNDDOWN_1MAV_3:
        axis, S = "apb", _votes((1, K, BAP), (1, K, B), (1, 2 * K, A))
    elif kind is R.AVERAGE_SP:
        axis, S, scale = "apb", _votes((1, 8 * K, A), (1, 8 * K, B), (1, 3 * K, PBA), (1, K, PAB)), 2
    elif kind is R.AVERAGE_1MAV:
        axis, S, scale = "apb", _votes((1, 2 * K, ABP), (1, 2 * K, BPA), (1, 2 * K, A), (1, 2 * K, B)), 2
    elif kind is R.COPELAND_TOP_SP:
        axis, S, scale = "apb", _votes((1, 6 * K, A), (1, 6 * K, B), (1, 2 * K, PAB)), 2
    elif kind is R.EVETO_CWCM_SP:
        model = WinnerModel.UNIQUE
        axis, S = "abp", _votes((1, K + 2, BPA), (1, K - 1, BAP), (1, 1, ABP), (1, 2, P), (1, 3, A))
    elif kind is R.EVETO_CWCM_1MAV:
        model = WinnerModel.UNIQUE
        axis, S = "abp", _votes((1, K + 2, BPA), (1, K - 1, BAP), (1, 1, ABP), (1, 1, P), (1, 1, PAB), (1, 2, A))
    elif kind is R.AVR_CWCM_SP:
        domain = BallotDomain.SP_COMPLETE
        axis, S = "apb", _votes((1, 7 * K, APB), (1, 7 * K, BPA), (1, K, PAB), (1, K, PBA))
    elif kind is R.EVETO_BRIBERY_SP or kind is R.EVETO_BRIBERY_1MAV:
        n = len(vals)
        common = ((n, K, BPA), (n, K - 1, BAP), (n - 1, 1, BAP), (1, 1, ABP))
        if kind is R.EVETO_BRIBERY_SP:
            S = _votes(*common, (1, 2, BPA), (1, 2, P), (1, 3, A))
        else:
            S = _votes(*common, (1, 1, P), (1, 1, PAB), (1, 2, BPA), (1, 2, A))
        T = _votes(*((1, v, BAP) for v in vals))
        return BriberyInstance(CANDS, S + T, P, n, BallotDomain.SP_TOP, WinnerModel.UNIQUE, tuple("abp"))
    elif kind is R.BALDWIN_BRIBERY_SP:
        n = len(vals)
        S = _votes((n, 2 * K, BPA), (n, 2 * K, B), (n, K, A), (2, 1, BPA), (2, 1, A), (1, 1, P))
        T = _votes(*((1, 2 * v, B) for v in vals))
        return BriberyInstance(CANDS, S + T, P, n, BallotDomain.SP_TOP, WinnerModel.CO_WINNER, tuple("apb"))
    else:  # pragma: no cover
        raise DomainError(f"unknown reduction kind {kind!r}")
    T = tuple(scale * v for v in vals)
    return CwcmInstance(CANDS, S, T, P, domain, model, tuple(axis))


# --- witnesses -------------------------------------------------------------


def _split_labels(kind: ReductionKind, source: Source, witness) -> list[int]:
    """Per-value label: 1 for the first subset, 2 for the second, 0 otherwise."""
    n = len(source.values)
    if isinstance(source, FdssInstance):
        s1, s2 = witness
        if set(s1) & set(s2):
            raise DomainError("witness subsets overlap")
        if sum(source.values[i] for i in s1) - sum(source.values[i] for i in s2) != source.K:
            raise DomainError("witness does not have difference K")
        labels = [0] * n
        for i in s1:
            labels[i] = 1
        for i in s2:
            labels[i] = 2
        return labels
    target = source.K if isinstance(source, PartitionInstance) else source.n * source.K
    if sum(source.values[i] for i in witness) != target:
        raise DomainError(f"witness does not sum to {target}")
    return [1 if i in set(witness) else 2 for i in range(n)]


_WITNESS_BALLOTS = {
    "rounddown-1": (PAB, P, None),
    "rounddown-2": (PAB, PBA, None),
    "rounddown-3": (PAB, PBA, None),
    "average": (PAB, PBA, P),
    "copeland": (PBA, PAB, P),
    "eveto-cwcm": (A, P, None),
    "eveto-bribery": (A, P, None),
    "baldwin": (PAB, APB, None),
    "avr": (PAB, PBA, None),
}


def _witness_family(kind: ReductionKind) -> str:
    if kind.rounddown_case:
        return f"rounddown-{kind.rounddown_case}"
    for fam in ("average", "copeland", "eveto-cwcm", "eveto-bribery", "baldwin", "avr"):
        if kind.value.startswith(fam):
            return fam
    raise DomainError(f"no witness rule for {kind.value}")  # pragma: no cover


def proof_witness(kind: ReductionKind, source: Source, witness, vector=None, alpha=None):
    """Translate a source witness into the assignment or bribe used in the forward direction."""
    _check_source(kind, source)
    labels = _split_labels(kind, source, witness)
    first, second, rest = _WITNESS_BALLOTS[_witness_family(kind)]
    pick = {1: first, 2: second, 0: rest if rest is not None else second}
    ballots = [Ballot(pick[lab]) for lab in labels]
    target = generate(kind, source, vector, alpha)
    if kind.is_bribery:
        offset = len(target.votes) - len(ballots)
        return BribePlan({offset + i: b for i, b in enumerate(ballots)})
    return ManipulationCertificate(tuple(ballots))


# --- verification ----------------------------------------------------------


def tiebreak_policies(candidates: Sequence[str]) -> list[TieBreak]:
    """The fixed policy set: lexicographic, axis order, and favoring each candidate."""
    return [TieBreak("lex"), TieBreak("axis")] + [TieBreak("favor", c) for c in sorted(candidates)]


@dataclass(frozen=True)
class VerificationReport:
    kind: ReductionKind
    source: Source
    source_answer: bool
    target_answer: bool
    certificate: Optional[object]
    tiebreak_independent: bool

    @property
    def equivalent(self) -> bool:
        return self.source_answer == self.target_answer


def _source_answer(source):
    if isinstance(source, PartitionInstance):
        return solve_partition(source)
    if isinstance(source, PartitionPrimeInstance):
        return solve_partition_prime(source)
    return solve_fdss(source)


def verify(kind: ReductionKind, source: Source, vector=None, alpha=None) -> VerificationReport:
    """Decide source and generated target exhaustively and compare.

    Elimination targets are also re-decided under every policy of
    ``tiebreak_policies``.  Bribery targets use the exact route search, which
    shares its work across policies.
    """
    rule = target_rule(kind, vector, alpha)
    target = generate(kind, source, vector, alpha)
    policies = tiebreak_policies(target.candidates) if rule.is_elimination else []
    if isinstance(target, BriberyInstance):
        search = RouteSearch(target, rule)
        found = search.solve()
        others = [search.solve(tb) for tb in policies]
    else:
        found = solve_cwcm_bruteforce(target, rule)
        others = [solve_cwcm_bruteforce(target, rule.with_tiebreak(tb)) for tb in policies]
    answer = found is not None
    independent = all((o is not None) == answer for o in others)
    return VerificationReport(kind, source, _source_answer(source) is not None, answer, found, independent)


def check_witness(kind: ReductionKind, source: Source, witness, vector=None, alpha=None) -> bool:
    """Replay ``proof_witness`` on the generated instance."""
    rule = target_rule(kind, vector, alpha)
    target = generate(kind, source, vector, alpha)
    built = proof_witness(kind, source, witness, vector, alpha)
    if isinstance(target, BriberyInstance):
        return check_plan(target, rule, built)
    return check_certificate(target, rule, built)


# --- source enumeration ----------------------------------------------------


def make_source(kind: ReductionKind, values: Sequence[int]) -> Source:
    return kind.source_type(tuple(values))


def exhaustive_sources(kind: ReductionKind, max_n: int, max_val: int) -> Iterator[Source]:
    """Every valid source multiset (sorted values) with 1..max_n values in 1..max_val."""
    for n in range(1, max_n + 1):
        for values in itertools.combinations_with_replacement(range(1, max_val + 1), n):
            try:
                yield make_source(kind, values)
            except DomainError:
                continue


def random_sources(kind: ReductionKind, trials: int, max_n: int, max_val: int, seed: int) -> Iterator[Source]:
    """Seeded random valid sources with 1..max_n values in 1..max_val (invalid draws are redrawn)."""
    rng = random.Random(seed)
    made = 0
    while made < trials:
        values = [rng.randint(1, max_val) for _ in range(rng.randint(1, max_n))]
        try:
            src = make_source(kind, values)
        except DomainError:
            continue
        made += 1
        yield src
