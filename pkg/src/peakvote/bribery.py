"""Weighted bribery: change the ballots of at most ``budget`` voters so ``p`` wins."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

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
    is_single_peaked,
    maverick_count,
)
from .manipulation import DEFAULT_CAP, CwcmInstance
from .rules import (
    RuleSpec,
    Tally,
    WinnerModel,
    check_vector,
    normalize_vector,
    p_wins,
    positional_scores,
    winners,
    _round_scores,
)

__all__ = [
    "BriberyInstance",
    "BribePlan",
    "check_plan",
    "BriberySearch",
    "solve_bribery_bruteforce",
    "RouteSearch",
    "solve_bribery_routes",
    "solve_bribery_scoring3_sp",
    "solve_bribery_eveto3_sp",
    "solve_bribery_eveto3_1mav",
    "bribery_from_cwcm_prime",
    "POLY_SOLVERS",
    "solve_bribery",
]


@dataclass(frozen=True)
class BriberyInstance:
    """Voters ``votes``, preferred candidate, and at most ``budget`` ballots to change.

    ``maverick_budget`` caps the number of non-single-peaked ballots after
    bribery; it defaults to the number already present.
    """

    candidates: tuple[str, ...]
    votes: tuple[WeightedBallot, ...]
    preferred: str
    budget: int
    domain: BallotDomain = BallotDomain.SP_COMPLETE
    model: WinnerModel = WinnerModel.CO_WINNER
    axis: Optional[tuple[str, ...]] = None
    maverick_budget: Optional[int] = None

    def __post_init__(self):
        profile = Profile(self.candidates, self.votes, self.axis)
        object.__setattr__(self, "candidates", profile.candidates)
        object.__setattr__(self, "votes", profile.votes)
        object.__setattr__(self, "axis", profile.axis)
        if self.preferred not in profile.candidates:
            raise DomainError(f"preferred candidate {self.preferred!r} is not running")
        if not isinstance(self.budget, int) or not 0 <= self.budget <= len(profile.votes):
            raise DomainError(f"budget must lie in [0, {len(profile.votes)}], got {self.budget!r}")
        if self.domain.single_peaked and self.axis is None:
            raise DomainError("single-peaked domains need an axis")
        if self.maverick_budget is None and self.axis is not None:
            object.__setattr__(self, "maverick_budget", maverick_count(profile))

    @property
    def profile(self) -> Profile:
        return Profile(self.candidates, self.votes, self.axis)

    def apply(self, edits: Mapping[int, Ballot]) -> Profile:
        votes = [WeightedBallot(edits[i], v.weight) if i in edits else v for i, v in enumerate(self.votes)]
        return self.profile.replace_votes(votes)

    def replace(self, **changes) -> "BriberyInstance":
        fields = {f: getattr(self, f) for f in self.__dataclass_fields__}
        fields.update(changes)
        return BriberyInstance(**fields)


@dataclass(frozen=True)
class BribePlan:
    edits: Mapping[int, Ballot] = field(default_factory=dict)

    def __str__(self):
        if not self.edits:
            return "(none)"
        return "; ".join(f"{i}: {b}" for i, b in sorted(self.edits.items()))


def check_plan(instance: BriberyInstance, rule: RuleSpec, plan: BribePlan) -> bool:
    if len(plan.edits) > instance.budget:
        return False
    for i, b in plan.edits.items():
        if not 0 <= i < len(instance.votes):
            return False
        if not ballot_in_domain(b, instance.candidates, instance.axis, instance.domain):
            return False
    after = instance.apply(plan.edits)
    if instance.maverick_budget is not None and maverick_count(after) > instance.maverick_budget:
        return False
    return p_wins(winners(rule, after, instance.model), instance.preferred, instance.model)


# --- exhaustive search ------------------------------------------------------


class BriberySearch:
    """Every tally reachable by changing at most ``budget`` ballots.

    Each reachable (tally, maverick change) pair is stored once, with the
    fewest edits that reach it and enough history to rebuild those edits.
    Tallies are packed into one int so a move is a single addition.
    """

    def __init__(self, instance: BriberyInstance, rule: RuleSpec, cap: int = DEFAULT_CAP):
        self.instance, self.rule = instance, rule
        tally = self.tally = Tally(rule, instance.candidates, instance.axis)
        self.base = tally.of_votes(instance.votes)
        axis = instance.axis
        self.track_mav = track = instance.maverick_budget is not None

        def nonsp(b):
            return int(track and not is_single_peaked(b, axis))

        seen = {}
        for b in enumerate_ballots(instance.candidates, axis, instance.domain):
            seen.setdefault((tally.effect(b), nonsp(b)), b)
        options = [(b, e, mv) for (e, mv), b in seen.items()]
        self.mav0 = maverick_count(instance.profile) if track else 0

        n = len(instance.votes)
        reach = max((abs(x) for _, e, _ in options for x in e), default=0)
        reach = 2 * reach * sum(v.weight for v in instance.votes) + 1
        # field 0 holds the maverick change, fields 1.. the tally change
        self.bias = bias = max(reach, n + 1)
        self.width = width = (2 * bias + 1).bit_length()
        self.mask = (1 << width) - 1
        self.size = tally.size

        def pack(fields):
            return sum(f << (width * i) for i, f in enumerate(fields))

        origin = pack([bias] * (self.size + 1))
        moves = []
        for v in instance.votes:
            e0, m0 = tally.effect(v.ballot), nonsp(v.ballot)
            row = []
            for b, e, mv in options:
                if (e, mv) == (e0, m0):
                    continue
                row.append((b, pack([mv - m0] + [v.weight * (x - y) for x, y in zip(e, e0)])))
            moves.append(row)
        self.moves = moves

        k = instance.budget
        best = {origin: 0}
        history = {origin: [(-1, 0, None, None)]}
        for i, row in enumerate(moves):
            for key, used in list(best.items()):
                if used >= k:
                    continue
                u = used + 1
                for j, (_, d) in enumerate(row):
                    nk = key + d
                    old = best.get(nk)
                    if old is None or old > u:
                        best[nk] = u
                        history.setdefault(nk, []).append((i, u, key, j))
            if len(best) > cap:
                raise ResourceError(f"bribery search exceeded {cap} states")
        self.best, self.history, self.origin = best, history, origin

    def __len__(self):
        return len(self.best)

    def fields(self, key: int) -> list[int]:
        w, mask, bias = self.width, self.mask, self.bias
        return [((key >> (w * i)) & mask) - bias for i in range(self.size + 1)]

    def stat(self, key: int) -> tuple:
        return tuple(b + x for b, x in zip(self.base, self.fields(key)[1:]))

    def finals(self):
        """Yield ``(key, edits used, post-bribery tally)`` for every state within the maverick budget."""
        limit = self.instance.maverick_budget
        for key, used in self.best.items():
            f = self.fields(key)
            if self.track_mav and self.mav0 + f[0] > limit:
                continue
            yield key, used, tuple(b + x for b, x in zip(self.base, f[1:]))

    def plan(self, key: int) -> BribePlan:
        edits, used, before = {}, self.best[key], len(self.moves)
        while used:
            i, u, prev, j = next(h for h in reversed(self.history[key]) if h[0] < before)
            assert u == used
            edits[i] = self.moves[i][j][0]
            key, before = prev, i
            used = next(h for h in reversed(self.history[key]) if h[0] < before)[1]
        return BribePlan(edits)

    def solve(self, accept) -> Optional[BribePlan]:
        """Plan with fewest edits whose final tally satisfies ``accept``, or None."""
        found = None
        for key, used, stat in self.finals():
            if (found is None or used < found[1]) and accept(stat):
                found = (key, used)
                if used == 0:
                    break
        return None if found is None else self.plan(found[0])


def solve_bribery_bruteforce(instance: BriberyInstance, rule: RuleSpec, cap: int = DEFAULT_CAP) -> Optional[BribePlan]:
    """Exhaustive over voter subsets of size <= budget and their replacement ballots.

    Returns a successful plan with the fewest edits; among equally short plans
    the first one found is kept, so the answer is deterministic.  ``cap``
    bounds the number of distinct reachable tallies.
    """
    search = BriberySearch(instance, rule, cap)
    p, model = instance.preferred, instance.model
    return search.solve(lambda stat: p_wins(search.tally.winners(stat, model), p, model))


def _win_conditions(tally: Tally, p: str, model: WinnerModel, priority=None):
    """Ways for ``p`` to win a 3-candidate elimination, each a list of ``(form, op, bound)``.

    ``form`` is a coefficient vector over the tally; ``op`` is ">=" or "==".
    ``p`` wins exactly when every constraint of at least one condition holds.
    With a ``priority`` order ties are broken by it, otherwise ``model`` decides.
    """
    full = frozenset(tally.candidates)

    def coord(rem, c):
        off, sub = tally.offsets[frozenset(rem)]
        return off + [tally.candidates[i] for i in sub].index(c)

    def diff(rem, hi, lo):
        form = [0] * tally.size
        form[coord(rem, hi)] += 1
        form[coord(rem, lo)] -= 1
        return tuple(form)

    others = [c for c in tally.candidates if c != p]
    if priority is not None:
        # the tied candidate later in priority goes out, so that side needs a strict margin
        def need(c, d):
            return int(priority.index(c) > priority.index(d))
    else:
        strict = int(model is WinnerModel.UNIQUE)

        def need(c, d):
            return strict

    conds = []
    for x in others:
        (y,) = [c for c in others if c != x]
        conds.append([
            (diff(full, p, x), ">=", need(p, x)),
            (diff(full, y, x), ">=", need(y, x)),
            (diff((p, y), p, y), ">=", need(p, y)),
        ])
    if priority is None and model is WinnerModel.UNIQUE:
        a, b = others
        conds.append([
            (diff(full, a, b), "==", 0),
            (diff(full, p, a), ">=", 1),
            (diff((p, a), p, a), ">=", 1),
            (diff((p, b), p, b), ">=", 1),
        ])
    return conds


class RouteSearch:
    """Exact bribery search for elimination rules over three candidates.

    Each way of winning is a conjunction of linear bounds on the tally, so it
    suffices to track those few linear forms, keeping for every value of all
    but one form only the largest value of the last.  Searches are cached per
    set of forms, so asking again under another tie-break is cheap.
    """

    def __init__(self, instance: BriberyInstance, rule: RuleSpec):
        if not rule.is_elimination or len(instance.candidates) != 3:
            raise NotApplicable("route search needs an elimination rule over three candidates")
        self.instance, self.rule = instance, rule
        self.tally = Tally(rule.with_tiebreak(None), instance.candidates, instance.axis)
        self.base = self.tally.of_votes(instance.votes)
        self.track = track = instance.maverick_budget is not None
        axis = instance.axis
        self.slack = instance.maverick_budget - maverick_count(instance.profile) if track else None

        def nonsp(b):
            return int(track and not is_single_peaked(b, axis))

        self._nonsp = nonsp
        seen = {}
        for b in enumerate_ballots(instance.candidates, axis, instance.domain):
            seen.setdefault((self.tally.effect(b), nonsp(b)), b)
        self.options = list(seen.items())
        self._runs = {}

    def _run(self, forms):
        hit = self._runs.get(forms)
        if hit is None:
            def project(vec):
                return tuple(sum(c * x for c, x in zip(f, vec) if c) for f in forms)

            moves = []
            for v in self.instance.votes:
                e0, m0 = project(self.tally.effect(v.ballot)), self._nonsp(v.ballot)
                row = {}
                for (eff, mv), b in self.options:
                    d = tuple(v.weight * (x - y) for x, y in zip(project(eff), e0)) + (mv - m0,)
                    if any(d):
                        row.setdefault(d, b)
                moves.append([(b, d) for d, b in row.items()])
            hit = self._runs[forms] = _route_layers(self.instance.budget, project(self.base), moves)
        return hit

    def solve(self, tiebreak=None, model: Optional[WinnerModel] = None) -> Optional[BribePlan]:
        """Plan with fewest edits, or None; defaults to the rule's tie-break and the instance's model."""
        if tiebreak is None:
            tiebreak = self.rule.tiebreak
        model = model or self.instance.model
        priority = tiebreak.priority(self.tally.candidates, self.tally.axis) if tiebreak else None
        best = None
        for cond in _win_conditions(self.tally, self.instance.preferred, model, priority):
            layer, history, moves = self._run(tuple(f for f, _, _ in cond))
            found = _route_pick(layer, history, moves, cond, self.slack)
            if found is not None and (best is None or len(found.edits) < len(best.edits)):
                best = found
        return best


def solve_bribery_routes(instance: BriberyInstance, rule: RuleSpec) -> Optional[BribePlan]:
    """Exact answer for 3-candidate elimination rules; fewest edits, or None."""
    return RouteSearch(instance, rule).solve()


def _route_layers(k, start, moves):
    # state: (used, maverick change, forms[:-1]) -> largest last form
    r = len(start)
    layer = {(0, 0) + start[:-1]: start[-1]}
    history = []
    for row in moves:
        nxt = dict(layer)
        back = {}
        for key, last in layer.items():
            if key[0] >= k:
                continue
            for j, (_, d) in enumerate(row):
                nk = (key[0] + 1, key[1] + d[r]) + tuple(x + y for x, y in zip(key[2:], d[: r - 1]))
                val = last + d[r - 1]
                old = nxt.get(nk)
                if old is None or val > old:
                    nxt[nk] = val
                    back[nk] = (key, j)
        history.append(back)
        layer = nxt
    return layer, history, moves


def _route_pick(layer, history, moves, cond, slack):
    def ok(key, last):
        if slack is not None and key[1] > slack:
            return False
        vals = key[2:] + (last,)
        return all((x == t) if op == "==" else (x >= t) for x, (_, op, t) in zip(vals, cond))

    hits = [key for key, last in layer.items() if ok(key, last)]
    if not hits:
        return None
    key = min(hits, key=lambda s: s[0])
    edits = {}
    for i in range(len(moves) - 1, -1, -1):
        step = history[i].get(key)
        if step is not None:
            key, j = step
            edits[i] = moves[i][j][0]
    return BribePlan(edits)


# --- polynomial procedures ---------------------------------------------------


def _heaviest_first(instance, indices):
    return sorted(indices, key=lambda i: (-instance.votes[i].weight, i))


def _complete_three(instance: BriberyInstance, max_mavericks: int):
    if len(instance.candidates) != 3 or instance.axis is None:
        raise NotApplicable("needs three candidates and an axis")
    if any(len(v.ballot) != 3 for v in instance.votes):
        raise NotApplicable("needs complete ballots")
    if maverick_count(instance.profile) > max_mavericks:
        raise NotApplicable(f"more than {max_mavericks} maverick(s)")


def _first_success(instance, rule, plans):
    for edits in plans:
        plan = BribePlan(edits)
        if check_plan(instance, rule, plan):
            return plan
    return None


def solve_bribery_scoring3_sp(instance: BriberyInstance, rule: RuleSpec) -> Optional[BribePlan]:
    """Three-candidate scoring rule with alpha1 <= 2*alpha2 (after alpha3 = 0), complete single-peaked votes.

    Enumerates how many of the heaviest voters of each ballot type to bribe
    (polynomially many choices) and decides each bribed voter's new ballot
    from the scores of the unbribed voters.
    """
    if rule.kind != "scoring":
        raise NotApplicable("needs a scoring rule")
    a1, a2, _ = normalize_vector(check_vector(rule.vector, 3)) if len(rule.vector) == 3 else (None,) * 3
    if a1 is None or a1 > 2 * a2:
        raise NotApplicable("needs three candidates and alpha1 <= 2*alpha2")
    if instance.domain is not BallotDomain.SP_COMPLETE or instance.model is not WinnerModel.CO_WINNER:
        raise NotApplicable("needs the sp-complete domain and the co-winner model")
    _complete_three(instance, 0)
    axis, p, k = instance.axis, instance.preferred, instance.budget
    groups: dict[Ballot, list[int]] = {}
    for i, v in enumerate(instance.votes):
        groups.setdefault(v.ballot, []).append(i)
    for b in groups:
        groups[b] = _heaviest_first(instance, groups[b])
    peak_orders = enumerate_sp_orders_with_peak(axis, p)
    types = [b for b in sorted(groups, key=lambda b: b.ranked) if b not in peak_orders or len(peak_orders) > 1]
    ranges = [range(min(k, len(groups[t])) + 1) for t in types]
    counts = sorted((x for x in itertools.product(*ranges) if sum(x) <= k), key=lambda x: (sum(x), x))

    def plans():
        for x in counts:
            chosen = [i for t, n in zip(types, x) for i in groups[t][:n]]
            if len(peak_orders) == 1:
                target = peak_orders[0]
                yield {i: target for i in chosen}
                continue
            rest = set(range(len(instance.votes))) - set(chosen)
            residual = instance.profile.replace_votes(instance.votes[i] for i in sorted(rest))
            s = positional_scores(residual, rule.vector, rule.scheme)
            left, right = axis[0], axis[2]
            towards_left = Ballot((p, left, right))
            towards_right = Ballot((p, right, left))
            if s[p] >= s[left] and s[p] >= s[right]:
                yield {i: towards_left for i in chosen if instance.votes[i].ballot not in peak_orders}
            elif s[right] > s[p] >= s[left]:
                yield {i: towards_left for i in chosen if instance.votes[i].ballot != towards_left}
            elif s[left] > s[p] >= s[right]:
                yield {i: towards_right for i in chosen if instance.votes[i].ballot != towards_right}

    return _first_success(instance, rule, plans())


def _veto_round(profile: Profile, remaining) -> dict[str, int]:
    return _round_scores(profile, "veto", frozenset(remaining))


def _greedy_route(instance: BriberyInstance, rule: RuleSpec, first: str, rival: str, pinned=None) -> Optional[BribePlan]:
    """Bribe heaviest voters to ``(p, rival, first)`` so that ``first`` goes out, then ``p`` beats ``rival``.

    Phase one takes voters who do not rank ``first`` last until ``first``
    has strictly the lowest veto score; phase two takes voters who do not
    rank ``p`` above ``rival``.  The plan is checked after every bribe.
    """
    p, k = instance.preferred, instance.budget
    target = Ballot((p, rival, first))
    if not ballot_in_domain(target, instance.candidates, instance.axis, instance.domain):
        return None
    edits = dict(pinned or {})

    def done():
        plan = BribePlan(dict(edits))
        return plan if check_plan(instance, rule, plan) else None

    def current(i):
        return edits.get(i, instance.votes[i].ballot)

    hit = done()
    if hit:
        return hit
    pool = _heaviest_first(instance, [i for i in range(len(instance.votes)) if i not in edits and current(i).ranked[-1] != first])
    for i in pool:
        scores = _veto_round(instance.apply(edits), instance.candidates)
        if all(scores[first] < scores[c] for c in instance.candidates if c != first):
            break
        if len(edits) >= k:
            return None
        edits[i] = target
        hit = done()
        if hit:
            return hit
    pool = _heaviest_first(instance, [i for i in range(len(instance.votes)) if i not in edits and not current(i).prefers(p, rival)])
    for i in pool:
        if len(edits) >= k:
            return None
        edits[i] = target
        hit = done()
        if hit:
            return hit
    return None


def _orient(axis, p):
    """Name the non-preferred candidates: (far end, middle) if p is at an end, else (left, right)."""
    i = axis.index(p)
    if i == 1:
        return "middle", axis[0], axis[2]
    far, mid = (axis[2], axis[1]) if i == 0 else (axis[0], axis[1])
    return "end", far, mid


def _eveto_pre(instance, rule, max_mavericks, domains):
    if rule.kind != "eliminate-veto" or rule.tiebreak is not None:
        raise NotApplicable("needs eliminate(veto) under winner-model semantics")
    if instance.model is not WinnerModel.UNIQUE or instance.domain not in domains:
        raise NotApplicable("needs the unique-winner model and a complete-ballot domain")
    _complete_three(instance, max_mavericks)


def _sp_routes(instance: BriberyInstance):
    shape, x, y = _orient(instance.axis, instance.preferred)
    if shape == "end":
        return [(x, y)]
    scores = _veto_round(instance.profile, instance.candidates)
    if scores[x] < scores[y]:
        return [(x, y)]
    if scores[y] < scores[x]:
        return [(y, x)]
    return [(x, y), (y, x)]


def solve_bribery_eveto3_sp(instance: BriberyInstance, rule: RuleSpec) -> Optional[BribePlan]:
    """Three-candidate eliminate(veto), complete single-peaked votes, unique winner.

    With ``p`` at an axis end the only useful elimination order removes the
    far candidate first; with ``p`` in the middle the candidate currently
    losing round one is kept as the first to go.  Either way a two-phase
    heaviest-first greedy decides.
    """
    _eveto_pre(instance, rule, 0, (BallotDomain.SP_COMPLETE,))
    if check_plan(instance, rule, BribePlan({})):
        return BribePlan({})
    for first, rival in _sp_routes(instance):
        plan = _greedy_route(instance, rule, first, rival)
        if plan is not None:
            return plan
    return None


def _route_classes(ballot: Ballot, first: str, rival: str, p: str) -> tuple[int, int, int]:
    """Signs of a ballot's contribution to the three route conditions.

    The route "``first`` goes out, then ``p`` beats ``rival``" needs
    LV(first) > LV(rival), LV(first) > LV(p) and p over rival by weight,
    where LV counts the weight ranking a candidate last.
    """
    last = ballot.ranked[-1]
    return (
        (last == first) - (last == rival),
        (last == first) - (last == p),
        1 if ballot.prefers(p, rival) else -1,
    )


def _class_counts(instance, rule, fixed, free, first, rival, k):
    """Bribe the heaviest voters of each contribution class to ``(p, rival, first)``.

    That ballot is best for all three route conditions at once, so for a
    fixed number of bribes per class the heaviest voters are best.
    """
    p = instance.preferred
    target = Ballot((p, rival, first))
    best = _route_classes(target, first, rival, p)
    groups: dict[tuple, list[int]] = {}
    for i in free:
        cls = _route_classes(instance.votes[i].ballot, first, rival, p)
        if cls != best:
            groups.setdefault(cls, []).append(i)
    keys = sorted(groups)
    for key in keys:
        groups[key] = _heaviest_first(instance, groups[key])
    ranges = [range(min(k, len(groups[c])) + 1) for c in keys]
    counts = sorted((x for x in itertools.product(*ranges) if sum(x) <= k), key=lambda x: (sum(x), x))
    plans = ({**fixed, **{i: target for c, n in zip(keys, counts_) for i in groups[c][:n]}} for counts_ in counts)
    return _first_success(instance, rule, plans)


def _dictator_route(instance, rule, fixed, free, k):
    """p at an axis end and the middle candidate goes out first.

    Single-peaked ballots never rank the middle candidate last, so its last
    weight is fixed by the maverick; bribes can only move weight between
    ballots ranking the far candidate last and ballots ranking ``p`` last.
    The reachable shifts form a bounded subset-sum table.
    """
    axis, p = instance.axis, instance.preferred
    _, far, mid = _orient(axis, p)
    to_far_last = Ballot((p, mid, far))
    to_p_last = Ballot((mid, far, p))
    # net weight moved onto far-last ballots -> (flips, plan)
    reach: dict[int, tuple[int, dict]] = {0: (0, {})}
    for i in free:
        v = instance.votes[i]
        far_last = v.ballot.ranked[-1] == far
        delta, target = (-v.weight, to_p_last) if far_last else (v.weight, to_far_last)
        step = {}
        for shift, (used, edits) in reach.items():
            if used < k:
                cand = (used + 1, {**edits, i: target})
                old = step.get(shift + delta) or reach.get(shift + delta)
                if old is None or old[0] > cand[0]:
                    step[shift + delta] = cand
        for shift, cand in step.items():
            if shift not in reach or reach[shift][0] > cand[0]:
                reach[shift] = cand
    ordered = sorted(reach.values(), key=lambda t: t[0])
    return _first_success(instance, rule, ({**fixed, **edits} for _, edits in ordered))


def solve_bribery_eveto3_1mav(instance: BriberyInstance, rule: RuleSpec) -> Optional[BribePlan]:
    """As ``solve_bribery_eveto3_sp`` with at most one maverick voter.

    When the maverick controls the elimination order it is the only voter
    worth bribing: it is moved to a ballot topped by ``p``.  Otherwise the
    single-peaked procedure runs.  If both fail, every elimination route is
    searched exactly, with the maverick either kept or bribed to each
    permitted ballot.
    """
    _eveto_pre(instance, rule, 1, (BallotDomain.SP_COMPLETE, BallotDomain.UNRESTRICTED_COMPLETE))
    if instance.maverick_budget is not None and instance.maverick_budget > 1:
        raise NotApplicable("maverick budget above one")
    if check_plan(instance, rule, BribePlan({})):
        return BribePlan({})
    axis, p, k = instance.axis, instance.preferred, instance.budget
    mavericks = [i for i, v in enumerate(instance.votes) if not is_single_peaked(v.ballot, axis)]
    domain_ballots = enumerate_ballots(instance.candidates, axis, instance.domain)
    if mavericks and k >= 1:
        (i,) = mavericks
        hit = _first_success(instance, rule, ({i: b} for b in domain_ballots if b.top == p))
        if hit:
            return hit
    for first, rival in _sp_routes(instance):
        plan = _greedy_route(instance, rule, first, rival)
        if plan is not None:
            return plan

    configs = [({}, 0)]
    if mavericks:
        (i,) = mavericks
        configs += [({i: b}, 1) for b in domain_ballots if b != instance.votes[i].ballot and k >= 1]
    shape, x, y = _orient(axis, p)
    for fixed, cost in configs:
        locked = set(fixed) | set(mavericks)
        free = [j for j in range(len(instance.votes)) if j not in locked]
        for first, rival in ((x, y), (y, x)):
            if is_single_peaked(Ballot((p, rival, first)), axis):
                hit = _class_counts(instance, rule, fixed, free, first, rival, k - cost)
            elif shape == "end" and first == y:
                hit = _dictator_route(instance, rule, fixed, free, k - cost)
            else:
                hit = None
            if hit:
                return hit
    return None


def bribery_from_cwcm_prime(cwcm: CwcmInstance, manipulator_fixed_votes: Sequence[Ballot]) -> BriberyInstance:
    """Freeze the manipulators on the two orders with ``p`` second and let bribery pick |T| voters.

    Needs every manipulator to weigh at least three times the heaviest
    non-manipulator.
    """
    weights = cwcm.manipulator_weights
    heaviest = max((v.weight for v in cwcm.nonmanipulators), default=0)
    if any(w < 3 * heaviest for w in weights):
        raise DomainError(f"manipulator weights {weights} are not all >= 3 x {heaviest}")
    fixed = tuple(b if isinstance(b, Ballot) else Ballot(b) for b in manipulator_fixed_votes)
    if len(fixed) != len(weights):
        raise DomainError("need exactly one fixed vote per manipulator")
    if cwcm.axis is None or len(cwcm.candidates) != 3:
        raise DomainError("the transform is defined for three candidates on an axis")
    for b in fixed:
        if len(b) != 3 or b.ranked[1] != cwcm.preferred or not is_single_peaked(b, cwcm.axis):
            raise DomainError(f"fixed vote {b} is not a single-peaked order with {cwcm.preferred} second")
    votes = cwcm.nonmanipulators + tuple(WeightedBallot(b, w) for b, w in zip(fixed, weights))
    return BriberyInstance(
        cwcm.candidates, votes, cwcm.preferred, len(weights), cwcm.domain, cwcm.model, cwcm.axis
    )


POLY_SOLVERS = {
    "scoring3": solve_bribery_scoring3_sp,
    "eveto3-sp": solve_bribery_eveto3_sp,
    "eveto3-1mav": solve_bribery_eveto3_1mav,
}


def solve_bribery(instance: BriberyInstance, rule: RuleSpec, solver: str = "auto", cap: int = DEFAULT_CAP):
    if solver == "brute":
        return "brute", solve_bribery_bruteforce(instance, rule, cap)
    if solver == "auto":
        for name, fn in POLY_SOLVERS.items():
            try:
                return name, fn(instance, rule)
            except NotApplicable:
                continue
        return "brute", solve_bribery_bruteforce(instance, rule, cap)
    if solver not in POLY_SOLVERS:
        raise DomainError(f"unknown solver {solver!r}")
    return solver, POLY_SOLVERS[solver](instance, rule)
