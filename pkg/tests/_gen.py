"""Random instance builders and hypothesis strategies shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from peakvote.bribery import BriberyInstance
from peakvote.core import (
    Ballot,
    BallotDomain,
    Profile,
    WeightedBallot,
    enumerate_ballots,
    enumerate_sp_ballots,
    is_single_peaked,
)
from peakvote.manipulation import CwcmInstance
from peakvote.rules import RuleSpec, TruncationScheme, WinnerModel

NAMES = "abcdefg"


def cands(m, with_p=True):
    return tuple(NAMES[: m - 1]) + ("p",) if with_p else tuple(NAMES[:m])


def shuffled_axis(rng, m):
    axis = list(cands(m))
    rng.shuffle(axis)
    return tuple(axis)


def random_vector(rng, m, max_top=6):
    """Non-increasing integer vector with a strict gap between first and last."""
    while True:
        vec = sorted((rng.randint(0, max_top) for _ in range(m)), reverse=True)
        if vec[0] > vec[-1]:
            return tuple(vec)


def sp_votes(rng, axis, n, complete=True, max_w=8, min_w=0):
    pool = enumerate_sp_ballots(axis, BallotDomain.SP_COMPLETE if complete else BallotDomain.SP_TOP)
    return [WeightedBallot(rng.choice(pool), rng.randint(min_w, max_w)) for _ in range(n)]


def maverick_vote(rng, axis, complete=True, max_w=8, min_w=0):
    dom = BallotDomain.UNRESTRICTED_COMPLETE if complete else BallotDomain.UNRESTRICTED_TOP
    pool = [b for b in enumerate_ballots(axis, axis, dom) if not is_single_peaked(b, axis)]
    return WeightedBallot(rng.choice(pool), rng.randint(min_w, max_w))


def any_votes(rng, axis, n, max_w=8):
    pool = enumerate_ballots(axis, axis, BallotDomain.UNRESTRICTED_TOP)
    return [WeightedBallot(rng.choice(pool), rng.randint(0, max_w)) for _ in range(n)]


def cwcm(rng, axis, votes, domain, model, max_t=4, max_w=8):
    weights = tuple(rng.randint(1, max_w) for _ in range(rng.randint(1, max_t)))
    return CwcmInstance(axis, tuple(votes), weights, "p", domain, model, axis)


# --- per-solver generators for the agreement suites ---------------------------
# each returns (instance, rule) inside the solver's applicability range


def gen_vote_p(rng):
    m = rng.randint(2, 4)
    axis = shuffled_axis(rng, m)
    choice = rng.randrange(4)
    if choice == 0:
        rule = RuleSpec.scoring(random_vector(rng, m), TruncationScheme.ROUND_UP)
    elif choice == 1:
        rule = RuleSpec.scoring((2,) * (m - 1) + (0,), TruncationScheme.ROUND_DOWN)
    elif choice == 2:
        rule = RuleSpec.scoring((3,) + (0,) * (m - 1), TruncationScheme.AVERAGE)
    else:
        rule = RuleSpec.avr()
    # unrestricted top ballots only for m <= 3: 64 ballots at m = 4 make the oracle slow
    domain = rng.choice([BallotDomain.SP_TOP, BallotDomain.UNRESTRICTED_TOP]) if m <= 3 else BallotDomain.SP_TOP
    votes = sp_votes(rng, axis, rng.randint(0, 6), complete=False) if domain.single_peaked else any_votes(rng, axis, rng.randint(0, 6))
    return cwcm(rng, axis, votes, domain, rng.choice(list(WinnerModel))), rule


def gen_plurality_rounddown(rng):
    m = rng.randint(2, 4)
    axis = shuffled_axis(rng, m)
    rule = RuleSpec.scoring((rng.randint(1, 4),) + (0,) * (m - 1), TruncationScheme.ROUND_DOWN)
    domain = rng.choice([BallotDomain.SP_TOP, BallotDomain.SP_COMPLETE])
    votes = sp_votes(rng, axis, rng.randint(0, 6), complete=rng.random() < 0.5)
    return cwcm(rng, axis, votes, domain, rng.choice(list(WinnerModel))), rule


def gen_copeland3(rng):
    axis = shuffled_axis(rng, 3)
    rule = RuleSpec.copeland(rng.choice([Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]))
    votes = sp_votes(rng, axis, rng.randint(0, 6))
    return cwcm(rng, axis, votes, BallotDomain.SP_COMPLETE, rng.choice(list(WinnerModel))), rule


def gen_eveto_sp(rng):
    axis = shuffled_axis(rng, rng.randint(2, 4))
    votes = sp_votes(rng, axis, rng.randint(0, 6))
    return cwcm(rng, axis, votes, BallotDomain.SP_COMPLETE, WinnerModel.UNIQUE), RuleSpec.eliminate_veto()


def gen_eveto_1mav(rng):
    axis = shuffled_axis(rng, rng.randint(3, 4))
    votes = sp_votes(rng, axis, rng.randint(0, 5))
    votes.insert(rng.randint(0, len(votes)), maverick_vote(rng, axis))
    return cwcm(rng, axis, votes, BallotDomain.SP_COMPLETE, WinnerModel.UNIQUE), RuleSpec.eliminate_veto()


def _bribery(rng, axis, votes, domain, model):
    budget = rng.randint(0, min(3, len(votes)))
    return BriberyInstance(axis, tuple(votes), "p", budget, domain, model, axis)


def gen_bribery_scoring3(rng):
    axis = shuffled_axis(rng, 3)
    a2 = rng.randint(1, 4)
    a1 = rng.randint(a2, 2 * a2)
    low = rng.randint(0, 2)
    rule = RuleSpec.scoring((a1 + low, a2 + low, low), TruncationScheme.ROUND_UP)
    votes = sp_votes(rng, axis, rng.randint(1, 6), min_w=1)
    return _bribery(rng, axis, votes, BallotDomain.SP_COMPLETE, WinnerModel.CO_WINNER), rule


def gen_bribery_eveto3(rng):
    axis = shuffled_axis(rng, 3)
    votes = sp_votes(rng, axis, rng.randint(1, 6), min_w=1)
    return _bribery(rng, axis, votes, BallotDomain.SP_COMPLETE, WinnerModel.UNIQUE), RuleSpec.eliminate_veto()


def gen_bribery_eveto3_1mav(rng):
    axis = shuffled_axis(rng, 3)
    votes = sp_votes(rng, axis, rng.randint(0, 5), min_w=1)
    votes.insert(rng.randint(0, len(votes)), maverick_vote(rng, axis, min_w=1))
    domain = rng.choice([BallotDomain.SP_COMPLETE, BallotDomain.UNRESTRICTED_COMPLETE])
    return _bribery(rng, axis, votes, domain, WinnerModel.UNIQUE), RuleSpec.eliminate_veto()


# --- hypothesis strategies -----------------------------------------------------


@st.composite
def profiles(draw, min_m=1, max_m=5, max_votes=6, max_w=9, complete=False, sp=False, axis=True):
    m = draw(st.integers(min_m, max_m))
    names = list(cands(m, with_p=False))
    order = tuple(draw(st.permutations(names)))
    if sp:
        pool = enumerate_sp_ballots(order, BallotDomain.SP_COMPLETE if complete else BallotDomain.SP_TOP)
    else:
        pool = enumerate_ballots(names, order, BallotDomain.UNRESTRICTED_COMPLETE if complete else BallotDomain.UNRESTRICTED_TOP)
    votes = draw(st.lists(st.tuples(st.sampled_from(pool), st.integers(0, max_w)), max_size=max_votes))
    return Profile(names, votes, order if axis else None)


def ballots_for(names):
    return st.permutations(list(names)).flatmap(lambda perm: st.integers(1, len(perm)).map(lambda k: Ballot(perm[:k])))


def rng_from(seed):
    return random.Random(seed)
