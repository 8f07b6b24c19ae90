import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peakvote.core import Ballot, DomainError, Profile, is_single_peaked
from peakvote.rules import (
    RuleSpec,
    Tally,
    TieBreak,
    TruncationScheme,
    WinnerModel,
    avr_scores,
    borda,
    check_vector,
    copeland_scores,
    eliminate_run,
    elimination_winners,
    normalize_vector,
    plurality,
    positional_scores,
    veto,
    winners,
)

from _gen import profiles
from _oracles import avr_oracle, profile_scores

SCHEMES = list(TruncationScheme)


def all_rules(m):
    rules = [RuleSpec.scoring(borda(m), s) for s in SCHEMES]
    rules += [RuleSpec.scoring(plurality(m)), RuleSpec.scoring(veto(m), TruncationScheme.ROUND_DOWN)]
    rules += [RuleSpec.eliminate_veto(), RuleSpec.baldwin(), RuleSpec.copeland(0), RuleSpec.copeland("1/2"), RuleSpec.copeland(1), RuleSpec.avr()]
    return rules


class TestVectors:
    def test_named(self):
        assert plurality(3) == (1, 0, 0) and borda(4) == (3, 2, 1, 0) and veto(3) == (1, 1, 0)

    @pytest.mark.parametrize("bad", [(1, 2, 0), (1, -1), (2.5, 0), ()])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            check_vector(bad)

    def test_length_must_match(self):
        with pytest.raises(DomainError):
            check_vector((2, 1, 0), 4)

    def test_normalize(self):
        assert normalize_vector((5, 3, 2)) == (3, 1, 0)


class TestPositional:
    def test_average_split(self):
        prof = Profile("abc", [(["a"], 1)])
        assert positional_scores(prof, (2, 1, 0), TruncationScheme.AVERAGE) == {"a": 2, "b": Fraction(1, 2), "c": Fraction(1, 2)}

    def test_rounddown_pushes_ranked_down(self):
        prof = Profile("abc", [(["a"], 1)])
        assert positional_scores(prof, (3, 2, 0), TruncationScheme.ROUND_DOWN) == {"a": 2, "b": 0, "c": 0}
        assert positional_scores(prof, (3, 2, 0), TruncationScheme.ROUND_UP) == {"a": 3, "b": 0, "c": 0}

    @pytest.mark.parametrize("K", [1, 2, 5])
    def test_partition_gadget_scores(self, K):
        votes = [(("a", "b", "p"), K), (("b", "a", "p"), K), (("b",), K), (("p",), K)]
        prof = Profile("abp", votes, axis="pab")
        a1, a2 = 3, 2
        got = positional_scores(prof, (a1, a2, 0), TruncationScheme.ROUND_DOWN)
        assert got == {"a": a1 * K + a2 * K, "b": a1 * K + 2 * a2 * K, "p": a2 * K}

    def test_scheme_needs_matching_length(self):
        with pytest.raises(DomainError):
            positional_scores(Profile("ab"), (2, 1, 0), TruncationScheme.ROUND_UP)

    @given(profiles(min_m=2, max_m=6), st.sampled_from(SCHEMES), st.data())
    def test_matches_formula(self, prof, scheme, data):
        m = prof.m
        vec = tuple(sorted(data.draw(st.lists(st.integers(0, 9), min_size=m, max_size=m)), reverse=True))
        if vec[0] == vec[-1]:
            vec = (vec[0] + 1,) + vec[1:]
        assert positional_scores(prof, vec, scheme) == profile_scores(vec, prof, scheme.value)

    @given(profiles(min_m=2, complete=True))
    def test_complete_ballots_ignore_scheme(self, prof):
        vec = borda(prof.m)
        first, *rest = (positional_scores(prof, vec, s) for s in SCHEMES)
        assert all(r == first for r in rest)


class TestAvr:
    def test_single_voter(self):
        prof = Profile("abcde", [(list("dbaec"), 7)])
        w = 7
        assert avr_scores(prof) == {"a": 4 * w, "b": 9 * w, "c": 0, "d": 16 * w, "e": w}

    @given(profiles(min_m=1))
    def test_formula(self, prof):
        assert avr_scores(prof) == avr_oracle(prof)


class TestCopeland:
    @given(profiles(min_m=2), st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]))
    def test_score_sum(self, prof, alpha):
        from peakvote.core import pairwise_margin

        pairs = list(itertools.combinations(prof.candidates, 2))
        ties = sum(1 for r, s in pairs if pairwise_margin(prof, r, s) == 0)
        assert sum(copeland_scores(prof, alpha).values()) == len(pairs) - ties + 2 * ties * alpha

    def test_alpha_range(self):
        with pytest.raises(DomainError):
            RuleSpec.copeland(Fraction(3, 2))


class TestElimination:
    def test_vote_dropped_once_exhausted(self):
        # (c) voters stop counting once c is out
        prof = Profile("abc", [(["c"], 1), (["a", "b", "c"], 2), (["b", "a", "c"], 2)])
        order, win = eliminate_run(prof, "veto", TieBreak("lex"))
        assert order[0] == "c"

    def test_tiebreak_kinds(self):
        prof = Profile("abc", axis="bca")
        assert eliminate_run(prof, "veto", TieBreak("lex")) == (("c", "b"), "a")
        assert eliminate_run(prof, "veto", TieBreak("axis")) == (("a", "c"), "b")
        assert eliminate_run(prof, "veto", TieBreak("favor", "c")) == (("b", "a"), "c")

    def test_parallel_universe_union(self):
        prof = Profile("abc")
        assert elimination_winners(prof, "veto", WinnerModel.CO_WINNER) == {"a", "b", "c"}

    def test_tiebreak_validation(self):
        with pytest.raises(DomainError):
            TieBreak("favor")
        with pytest.raises(DomainError):
            TieBreak("lex", "a")
        with pytest.raises(DomainError):
            TieBreak("random")
        assert TieBreak.parse("favor:p") == TieBreak("favor", "p")

    @settings(max_examples=150)
    @given(profiles(min_m=2, max_m=5, complete=True, sp=True, max_w=5), st.data())
    def test_endpoints_and_reverse_order(self, prof, data):
        if not any(v.weight for v in prof.votes):
            return
        tb = data.draw(st.sampled_from([TieBreak("lex"), TieBreak("axis")] + [TieBreak("favor", c) for c in prof.candidates]))
        order, win = eliminate_run(prof, "veto", tb)
        remaining = list(prof.axis)
        for c in order:
            assert c in (remaining[0], remaining[-1])
            remaining.remove(c)
        assert is_single_peaked(Ballot((win,) + tuple(reversed(order))), prof.axis)


class TestWinnerSets:
    @settings(max_examples=80)
    @given(profiles(min_m=2, max_m=4))
    def test_unique_is_within_co(self, prof):
        for rule in all_rules(prof.m):
            co = winners(rule, prof, WinnerModel.CO_WINNER)
            uniq = winners(rule, prof, WinnerModel.UNIQUE)
            assert uniq <= co

    @settings(max_examples=80)
    @given(profiles(min_m=2, max_m=4), st.integers(2, 3))
    def test_scaling_weights(self, prof, f):
        for rule in all_rules(prof.m):
            assert winners(rule, prof) == winners(rule, prof.scaled(f))
        for s in SCHEMES:
            base = positional_scores(prof, borda(prof.m), s)
            big = positional_scores(prof.scaled(f), borda(prof.m), s)
            assert big == {c: f * x for c, x in base.items()}

    @settings(max_examples=80)
    @given(profiles(min_m=1, max_m=4), st.sampled_from(list(WinnerModel)), st.data())
    def test_tally_agrees(self, prof, model, data):
        rules = all_rules(prof.m) if prof.m >= 2 else [RuleSpec.avr(), RuleSpec.eliminate_veto()]
        rule = data.draw(st.sampled_from(rules))
        if rule.is_elimination and data.draw(st.booleans()):
            rule = rule.with_tiebreak(data.draw(st.sampled_from([TieBreak("lex"), TieBreak("axis")])))
        tally = Tally(rule, prof.candidates, prof.axis)
        assert tally.winners(tally.of_votes(prof.votes), model) == winners(rule, prof, model)

    def test_unique_needs_every_branch(self):
        # b and c tie for last; p survives only if c goes first
        prof = Profile(["b", "c", "p"], [(["p", "b", "c"], 1), (["p", "c", "b"], 1), (["b", "p", "c"], 1)])
        assert winners(RuleSpec.eliminate_veto(), prof, WinnerModel.UNIQUE) == winners(RuleSpec.eliminate_veto(), prof)
