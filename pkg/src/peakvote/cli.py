"""Election files and the ``peakvote`` command line.

File grammar (UTF-8, one item per line)::

    # comment
    candidates: a b p
    axis: a p b
    vote 3: p > a > b
    vote 2: p

Every command prints ``key: value`` records separated by blank lines.
Exit codes: 0 when a decision was computed (YES or NO), 2 for usage or
input errors, 3 when a search hits its state cap, 4 when the requested
solver does not apply.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from .bribery import POLY_SOLVERS as BRIBERY_SOLVERS
from .bribery import BriberyInstance, solve_bribery
from .core import (
    Ballot,
    BallotDomain,
    DomainError,
    NotApplicable,
    Profile,
    ResourceError,
    WeightedBallot,
    check_token,
    is_single_peaked,
    maverick_count,
)
from .manipulation import POLY_SOLVERS as CWCM_SOLVERS
from .manipulation import CwcmInstance, solve_cwcm
from .reductions import (
    ReductionKind,
    exhaustive_sources,
    generate,
    make_source,
    random_sources,
    target_rule,
    verify,
)
from .rules import (
    RuleSpec,
    TieBreak,
    TruncationScheme,
    WinnerModel,
    avr_scores,
    borda,
    copeland_scores,
    eliminate_run,
    plurality,
    positional_scores,
    veto,
    winners,
    _round_scores,
)

__all__ = ["ParseError", "parse_election", "format_election", "parse_rule", "main", "run"]


class ParseError(DomainError):
    def __init__(self, msg: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line, self.column = line, column


# --- election files ----------------------------------------------------------


def _tokens(body: str, lineno: int, col0: int) -> list[str]:
    out = []
    for tok in body.split():
        try:
            out.append(check_token(tok))
        except DomainError as exc:
            raise ParseError(str(exc), lineno, col0 + body.find(tok)) from None
    return out


def parse_election(text: str) -> Profile:
    """Parse an election file into a Profile."""
    candidates = axis = None
    votes = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col0 = raw.find(line) + 1
        head, sep, body = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno, col0)
        head = head.strip()
        body_col = col0 + len(head) + 1
        if head == "candidates":
            if candidates is not None:
                raise ParseError("duplicate candidates line", lineno, col0)
            candidates = _tokens(body, lineno, body_col)
            if not candidates:
                raise ParseError("no candidates given", lineno, body_col)
            if len(set(candidates)) != len(candidates):
                raise ParseError("duplicate candidate name", lineno, body_col)
        elif head == "axis":
            if candidates is None:
                raise ParseError("axis before candidates", lineno, col0)
            axis = _tokens(body, lineno, body_col)
            if sorted(axis) != sorted(candidates):
                raise ParseError("axis must list every candidate exactly once", lineno, body_col)
        elif head.startswith("vote"):
            if candidates is None:
                raise ParseError("vote before candidates", lineno, col0)
            wtext = head[4:].strip()
            if not wtext.isdigit():
                raise ParseError(f"weight must be a non-negative integer, got {wtext!r}", lineno, col0 + 4)
            names = [part.strip() for part in body.split(">")]
            if any(not n for n in names):
                raise ParseError("empty candidate in ranking", lineno, body_col)
            for n in names:
                if n not in candidates:
                    raise ParseError(f"unknown candidate {n!r}", lineno, body_col + body.find(n))
            if len(set(names)) != len(names):
                raise ParseError("candidate ranked twice", lineno, body_col)
            votes.append(WeightedBallot(Ballot(names), int(wtext)))
        else:
            raise ParseError(f"unknown key {head!r}", lineno, col0)
    if candidates is None:
        raise ParseError("missing candidates line", 1)
    return Profile(candidates, votes, axis)


def format_election(profile: Profile, notes: Optional[dict] = None) -> str:
    """Canonical text; ``notes`` maps a vote index to a comment emitted just before it."""
    notes = notes or {}
    order = profile.axis if profile.axis is not None else profile.candidates
    lines = ["candidates: " + " ".join(order)]
    if profile.axis is not None:
        lines.append("axis: " + " ".join(profile.axis))
    for i, v in enumerate(profile.votes):
        if i in notes:
            lines.append(f"# {notes[i]}")
        lines.append(f"vote {v.weight}: {v.ballot}")
    if len(profile.votes) in notes:
        lines.append(f"# {notes[len(profile.votes)]}")
    return "\n".join(lines) + "\n"


# --- rule grammar --------------------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"expected a rational p/q, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise DomainError("expected at least one integer")
    return out


def parse_rule(text: str, m: int) -> RuleSpec:
    """Rule grammar: ``scoring:<a1,..,am>:<scheme>``, ``plurality``, ``borda``, ``veto``
    (each optionally ``:<scheme>``), ``eliminate-veto``, ``baldwin``, ``copeland:<p/q>``, ``avr``."""
    name, _, rest = text.partition(":")
    named = {"plurality": plurality, "borda": borda, "veto": veto}
    if name == "scoring":
        vec, _, scheme = rest.partition(":")
        return RuleSpec.scoring(_ints(vec), TruncationScheme(scheme or "roundup"))
    if name in named:
        return RuleSpec.scoring(named[name](m), TruncationScheme(rest or "roundup"))
    if name == "copeland":
        return RuleSpec.copeland(_fraction(rest) if rest else Fraction(1, 2))
    if rest:
        raise DomainError(f"rule {name!r} takes no parameters")
    if name == "eliminate-veto":
        return RuleSpec.eliminate_veto()
    if name == "baldwin":
        return RuleSpec.baldwin()
    if name == "avr":
        return RuleSpec.avr()
    raise DomainError(f"unknown rule {text!r}")


# --- reports -----------------------------------------------------------------


def _yes(flag: bool) -> str:
    return "YES" if flag else "NO"


def _emit(out, record: list[tuple[str, object]]):
    for key, value in record:
        out.write(f"{key}: {value}\n")
    out.write("\n")


def _scores_text(scores) -> str:
    return " ".join(f"{c}={s}" for c, s in sorted(scores.items()))


def _read_profile(path: str) -> Profile:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_election(fh.read())
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _rule_from(args, profile: Profile) -> RuleSpec:
    rule = parse_rule(args.rule, profile.m)
    if getattr(args, "tiebreak", None):
        if not rule.is_elimination:
            raise DomainError("--tiebreak only applies to elimination rules")
        rule = rule.with_tiebreak(TieBreak.parse(args.tiebreak))
    return rule


def _cmd_winners(args, out):
    profile = _read_profile(args.file)
    rule = _rule_from(args, profile)
    model = WinnerModel(args.model)
    t0 = time.perf_counter()
    won = winners(rule, profile, model)
    record = [("command", "winners"), ("rule", rule), ("model", model.value)]
    if rule.kind == "scoring":
        record.append(("scores", _scores_text(positional_scores(profile, rule.vector, rule.scheme))))
    elif rule.kind == "copeland":
        record.append(("scores", _scores_text(copeland_scores(profile, rule.alpha))))
    elif rule.kind == "avr":
        record.append(("scores", _scores_text(avr_scores(profile))))
    else:
        base = "veto" if rule.kind == "eliminate-veto" else "borda"
        record.append(("round1", _scores_text(_round_scores(profile, base, frozenset(profile.candidates)))))
        if rule.tiebreak is not None:
            record.append(("tiebreak", rule.tiebreak))
            record.append(("order", " ".join(eliminate_run(profile, base, rule.tiebreak)[0])))
    record.append(("winners", " ".join(sorted(won))))
    record.append(("time_ms", f"{(time.perf_counter() - t0) * 1000:.1f}"))
    _emit(out, record)


def _cmd_check_sp(args, out):
    profile = _read_profile(args.file)
    axis = args.axis.split(",") if args.axis else profile.axis
    if axis is None:
        raise DomainError("check-sp needs an axis line in the file or --axis")
    profile = Profile(profile.candidates, profile.votes, axis)
    flags = [is_single_peaked(v.ballot, axis) for v in profile.votes]
    record = [("command", "check-sp"), ("axis", " ".join(axis))]
    record += [(f"vote {i}", str(f).lower()) for i, f in enumerate(flags, 1)]
    record += [("flags", ",".join(str(f).lower() for f in flags)), ("mavericks", maverick_count(profile))]
    _emit(out, record)


def _cmd_cwcm(args, out):
    profile = _read_profile(args.file)
    rule = _rule_from(args, profile)
    inst = CwcmInstance(
        profile.candidates, profile.votes, tuple(_ints(args.weights)), args.pref,
        BallotDomain(args.domain), WinnerModel(args.model), profile.axis,
    )
    t0 = time.perf_counter()
    used, cert = solve_cwcm(inst, rule, args.solver)
    _emit(out, [
        ("command", "cwcm"), ("rule", rule), ("model", inst.model.value), ("domain", inst.domain.value),
        ("pref", inst.preferred), ("solver", used), ("decision", _yes(cert is not None)),
        ("certificate", cert if cert is not None else "-"),
        ("time_ms", f"{(time.perf_counter() - t0) * 1000:.1f}"),
    ])


def _cmd_bribe(args, out):
    profile = _read_profile(args.file)
    rule = _rule_from(args, profile)
    inst = BriberyInstance(
        profile.candidates, profile.votes, args.pref, args.budget, BallotDomain(args.domain),
        WinnerModel(args.model), profile.axis, args.maverick_budget,
    )
    t0 = time.perf_counter()
    used, plan = solve_bribery(inst, rule, args.solver)
    _emit(out, [
        ("command", "bribe"), ("rule", rule), ("model", inst.model.value), ("domain", inst.domain.value),
        ("pref", inst.preferred), ("budget", inst.budget), ("solver", used),
        ("decision", _yes(plan is not None)), ("plan", plan if plan is not None else "-"),
        ("time_ms", f"{(time.perf_counter() - t0) * 1000:.1f}"),
    ])


def _gen_params(args):
    vector = tuple(_ints(args.vector)) if args.vector else None
    alpha = _fraction(args.alpha) if args.alpha else None
    return vector, alpha


def _cmd_gen(args, out):
    kind = ReductionKind(args.reduction)
    vector, alpha = _gen_params(args)
    source = make_source(kind, _ints(args.values))
    target = generate(kind, source, vector, alpha)
    rule = target_rule(kind, vector, alpha)
    meta = [
        ("reduction", kind.value), ("source", ",".join(map(str, source.values))), ("K", source.K),
        ("rule", rule), ("model", target.model.value), ("domain", target.domain.value), ("pref", target.preferred),
    ]
    if isinstance(target, BriberyInstance):
        n_t = len(source.values)
        meta.append(("budget", target.budget))
        profile = target.profile
        notes = {0: "S: fixed voters", len(target.votes) - n_t: "T: one voter per source value"}
    else:
        meta.append(("weights", ",".join(map(str, target.manipulator_weights))))
        profile = target.profile
        notes = {0: "S: non-manipulators", len(target.nonmanipulators): "T: manipulators, weights " + ",".join(map(str, target.manipulator_weights))}
    for key, value in meta:
        out.write(f"# {key}: {value}\n")
    out.write(format_election(profile, notes))


def _report_line(rep) -> str:
    return " ".join([
        f"reduction={rep.kind.value}",
        "source=" + ",".join(map(str, rep.source.values)),
        f"source_answer={_yes(rep.source_answer)}",
        f"target_answer={_yes(rep.target_answer)}",
        f"equivalent={str(rep.equivalent).lower()}",
        f"tiebreak_independent={str(rep.tiebreak_independent).lower()}",
    ])


def _cmd_verify(args, out):
    kind = ReductionKind(args.reduction)
    vector, alpha = _gen_params(args)
    if args.trials is not None:
        sources = random_sources(kind, args.trials, args.max_n, args.max_val, args.seed)
    else:
        sources = exhaustive_sources(kind, args.max_n, args.max_val)
    total = eq = ind = 0
    for src in sources:
        rep = verify(kind, src, vector, alpha)
        out.write(_report_line(rep) + "\n")
        total += 1
        eq += rep.equivalent
        ind += rep.tiebreak_independent
    out.write("\n")
    _emit(out, [("reduction", kind.value), ("equivalent", f"{eq}/{total}"), ("tiebreak_independent", f"{ind}/{total}")])


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="peakvote", description="Winner determination, manipulation and bribery.")
    sub = ap.add_subparsers(dest="command", required=True)
    domains = [d.value for d in BallotDomain]

    def rule_opts(p, default):
        p.add_argument("--rule", default=default)
        p.add_argument("--model", choices=["co", "unique"], default="co")
        p.add_argument("--tiebreak", help="lex | axis | favor:<c>")

    p = sub.add_parser("winners", help="winner set and exact scores")
    p.add_argument("file")
    rule_opts(p, "plurality")
    p.set_defaults(fn=_cmd_winners)

    p = sub.add_parser("check-sp", help="single-peakedness flags and maverick count")
    p.add_argument("file")
    p.add_argument("--axis", help="comma-separated axis, overrides the file")
    p.set_defaults(fn=_cmd_check_sp)

    p = sub.add_parser("cwcm", help="coalitional weighted manipulation")
    p.add_argument("file")
    rule_opts(p, "eliminate-veto")
    p.add_argument("--pref", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--domain", choices=domains, default="sp-top")
    p.add_argument("--solver", choices=["brute", "auto", *CWCM_SOLVERS], default="auto")
    p.set_defaults(fn=_cmd_cwcm)

    p = sub.add_parser("bribe", help="weighted bribery")
    p.add_argument("file")
    rule_opts(p, "eliminate-veto")
    p.add_argument("--pref", required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--domain", choices=domains, default="sp-complete")
    p.add_argument("--maverick-budget", type=int)
    p.add_argument("--solver", choices=["brute", "auto", *BRIBERY_SOLVERS], default="auto")
    p.set_defaults(fn=_cmd_bribe)

    kinds = [k.value for k in ReductionKind]
    p = sub.add_parser("gen", help="build a hardness instance from a number problem")
    p.add_argument("--reduction", choices=kinds, required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--vector")
    p.add_argument("--alpha")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("verify", help="check source/target equivalence over many sources")
    p.add_argument("--reduction", choices=kinds, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-val", type=int, required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vector")
    p.add_argument("--alpha")
    p.set_defaults(fn=_cmd_verify)
    return ap


def run(argv: Sequence[str], out=None, err=None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        args.fn(args, out)
    except NotApplicable as exc:
        err.write(f"not applicable: {exc}\n")
        return 4
    except ResourceError as exc:
        err.write(f"resource cap: {exc}\n")
        return 3
    except (DomainError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
