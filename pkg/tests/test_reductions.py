from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peakvote.bribery import BriberyInstance, check_plan
from peakvote.core import BallotDomain, DomainError, maverick_count, pairwise_margin
from peakvote.manipulation import CwcmInstance, check_certificate
from peakvote.reductions import (
    FdssInstance,
    PartitionInstance,
    PartitionPrimeInstance,
    ReductionKind,
    check_witness,
    exhaustive_sources,
    generate,
    make_source,
    proof_witness,
    random_sources,
    solve_fdss,
    solve_partition,
    solve_partition_prime,
    target_rule,
    tiebreak_policies,
    verify,
)
from peakvote.rules import TieBreak, avr_scores, positional_scores, TruncationScheme

R = ReductionKind


def weights(inst):
    return tuple(v.weight for v in (inst.nonmanipulators if isinstance(inst, CwcmInstance) else inst.votes))


class TestOracles:
    def test_partition(self):
        assert solve_partition(PartitionInstance((1, 1))) is not None
        assert solve_partition(PartitionInstance((1, 3))) is None

    def test_fdss_allows_empty_side(self):
        s1, s2 = solve_fdss(FdssInstance((1, 1)))
        assert len(s1) == 1 and s2 == ()

    def test_partition_prime(self):
        assert solve_partition_prime(PartitionPrimeInstance((2, 2))) is not None

    @pytest.mark.parametrize("cls, values", [
        (PartitionInstance, (1, 2)),
        (FdssInstance, (3,)),
        (PartitionPrimeInstance, (1, 5)),  # sum not divisible by 2n
        (PartitionPrimeInstance, (1, 7)),  # K = 2 but 1 < 2
        (PartitionPrimeInstance, ()),
        (PartitionInstance, (-2, 2)),
    ])
    def test_invalid_sources(self, cls, values):
        with pytest.raises(DomainError):
            cls(values)

    @given(st.lists(st.integers(0, 8), max_size=6))
    def test_partition_witness_is_half(self, values):
        if sum(values) % 2:
            return
        inst = PartitionInstance(tuple(values))
        idx = solve_partition(inst)
        if idx is not None:
            assert 2 * sum(values[i] for i in idx) == sum(values)

    @given(st.lists(st.integers(0, 8), max_size=6))
    def test_fdss_witness(self, values):
        if sum(values) % 2:
            return
        inst = FdssInstance(tuple(values))
        found = solve_fdss(inst)
        if found is not None:
            s1, s2 = found
            assert not set(s1) & set(s2)
            assert sum(values[i] for i in s1) - sum(values[i] for i in s2) == inst.K


class TestGenerators:
    def test_rounddown_case1_scores(self):
        inst = generate(R.ROUNDDOWN_SP_1, PartitionInstance((1, 1)), (3, 2, 0))
        scores = positional_scores(inst.profile, (3, 2, 0), TruncationScheme.ROUND_DOWN)
        assert scores == {"a": 5, "b": 7, "p": 2}
        assert inst.manipulator_weights == (1, 1)

    def test_eveto_cwcm_weights(self):
        inst = generate(R.EVETO_CWCM_SP, PartitionInstance((2, 2)))
        assert weights(inst) == (4, 1, 1, 2, 3)
        assert inst.manipulator_weights == (2, 2)
        assert inst.domain is BallotDomain.SP_TOP

    def test_baldwin_pattern(self):
        inst = generate(R.BALDWIN_BRIBERY_SP, PartitionPrimeInstance((2, 2)))
        assert isinstance(inst, BriberyInstance)
        assert weights(inst)[:-2] == (2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1)
        tail = inst.votes[-2:]
        assert [(v.ballot.ranked, v.weight) for v in tail] == [(("b",), 4), (("b",), 4)]
        assert inst.budget == 2

    def test_avr_uses_complete_domain(self):
        assert generate(R.AVR_CWCM_SP, PartitionInstance((1, 1))).domain is BallotDomain.SP_COMPLETE

    @pytest.mark.parametrize("kind", list(R))
    def test_maverick_count(self, kind):
        src = next(iter(exhaustive_sources(kind, 2, 4)))
        inst = generate(kind, src)
        prof = inst.profile
        assert maverick_count(prof) == kind.mavericks

    @pytest.mark.parametrize("kind, vector", [
        (R.ROUNDDOWN_SP_1, (3, 1, 0)),
        (R.ROUNDDOWN_SP_2, (2, 1, 0)),
        (R.ROUNDDOWN_SP_3, (3, 2, 0)),
        (R.AVERAGE_SP, (1, 0, 0)),
    ])
    def test_case_mismatch(self, kind, vector):
        with pytest.raises(DomainError):
            generate(kind, make_source(kind, (1, 1)), vector)

    def test_case_uses_normalized_vector(self):
        generate(R.ROUNDDOWN_SP_1, PartitionInstance((1, 1)), (5, 4, 2))  # (3, 2, 0) after the shift

    def test_alpha_one_rejected(self):
        with pytest.raises(DomainError):
            generate(R.COPELAND_TOP_SP, FdssInstance((1, 1)), alpha=1)
        assert target_rule(R.COPELAND_TOP_SP).alpha == Fraction(1, 2)

    def test_wrong_source_type(self):
        with pytest.raises(DomainError):
            generate(R.EVETO_CWCM_SP, FdssInstance((1, 1)))
        with pytest.raises(DomainError):
            generate(R.EVETO_BRIBERY_SP, PartitionInstance((2, 2)))

    def test_zero_K_rejected(self):
        with pytest.raises(DomainError):
            generate(R.EVETO_CWCM_SP, PartitionInstance((0, 0)))


class TestWitnesses:
    def test_case1_split(self):
        src = PartitionInstance((1, 1))
        cert = proof_witness(R.ROUNDDOWN_SP_1, src, (0,), (3, 2, 0))
        assert [b.ranked for b in cert.assignment] == [("p", "a", "b"), ("p",)]
        inst = generate(R.ROUNDDOWN_SP_1, src, (3, 2, 0))
        assert check_certificate(inst, target_rule(R.ROUNDDOWN_SP_1, (3, 2, 0)), cert)

    def test_copeland_margins_vanish(self):
        src = FdssInstance((1, 1))
        inst = generate(R.COPELAND_TOP_SP, src)
        cert = proof_witness(R.COPELAND_TOP_SP, src, ((0,), ()))
        prof = inst.with_assignment(cert.assignment)
        assert pairwise_margin(prof, "p", "a") == 0 and pairwise_margin(prof, "p", "b") == 0

    def test_avr_split_ties_everyone(self):
        src = PartitionInstance((1, 1))
        inst = generate(R.AVR_CWCM_SP, src)
        cert = proof_witness(R.AVR_CWCM_SP, src, (0,))
        scores = avr_scores(inst.with_assignment(cert.assignment))
        assert len(set(scores.values())) == 1

    def test_bad_witness(self):
        with pytest.raises(DomainError):
            proof_witness(R.EVETO_CWCM_SP, PartitionInstance((1, 3)), (0,))
        with pytest.raises(DomainError):
            proof_witness(R.AVERAGE_SP, FdssInstance((1, 1)), ((0,), (0,)))

    @pytest.mark.parametrize("kind", list(R))
    @settings(max_examples=15, deadline=None)
    @given(values=st.lists(st.integers(1, 6), min_size=1, max_size=4))
    def test_witness_replays(self, kind, values):
        try:
            src = make_source(kind, values)
        except DomainError:
            return
        oracle = {PartitionInstance: solve_partition, PartitionPrimeInstance: solve_partition_prime, FdssInstance: solve_fdss}
        wit = oracle[type(src)](src)
        if wit is not None:
            assert check_witness(kind, src, wit)


class TestVerify:
    @pytest.mark.parametrize("kind, values, answer", [
        (R.EVETO_CWCM_SP, (2, 2), True),
        (R.EVETO_CWCM_SP, (1, 3), False),
        (R.AVERAGE_SP, (1, 1), True),
    ])
    def test_examples(self, kind, values, answer):
        rep = verify(kind, make_source(kind, values))
        assert rep.source_answer is answer and rep.target_answer is answer and rep.equivalent

    def test_certificate_replays(self):
        src = PartitionPrimeInstance((2, 2))
        rep = verify(R.BALDWIN_BRIBERY_SP, src)
        assert rep.target_answer and check_plan(generate(R.BALDWIN_BRIBERY_SP, src), target_rule(R.BALDWIN_BRIBERY_SP), rep.certificate)

    def test_policy_set(self):
        assert tiebreak_policies("pab") == [TieBreak("lex"), TieBreak("axis"), TieBreak("favor", "a"), TieBreak("favor", "b"), TieBreak("favor", "p")]

    def test_scoring_kinds_trivially_independent(self):
        assert verify(R.ROUNDDOWN_SP_3, PartitionInstance((1, 1))).tiebreak_independent


class TestSources:
    def test_exhaustive_valid_and_sorted(self):
        got = list(exhaustive_sources(R.EVETO_BRIBERY_SP, 3, 4))
        assert all(list(s.values) == sorted(s.values) for s in got)
        assert PartitionPrimeInstance((2, 2)) in got
        assert len(got) == len(set(got))

    def test_random_reproducible(self):
        a = list(random_sources(R.AVERAGE_SP, 20, 6, 6, seed=9))
        b = list(random_sources(R.AVERAGE_SP, 20, 6, 6, seed=9))
        assert a == b and len(a) == 20
        assert all(1 <= len(s.values) <= 6 and all(1 <= v <= 6 for v in s.values) for s in a)
