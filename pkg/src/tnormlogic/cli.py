"""Command-line front end.

Every subcommand prints one result document (JSON with ``--format json``,
``key: value`` lines otherwise). Witnesses and separators are re-evaluated
before they are printed.

Exit status: 0 when a verdict was computed (including failing ones), 1 on
bad input, 2 when a re-check contradicts the computed result.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import (
    MVQ,
    AlgebraError,
    ChainTable,
    decompose_finite_chain,
    enumerate_finite_chains,
    format_truth_value,
    parse_algebra,
)
from .formula import FormulaSyntaxError, format_literal, parse_formula, render_formula
from .mcnaughton import literal_to_pwl, pwl_zero_set, separating_literal, threshold_literal
from .principles import (
    InvariantViolation,
    Principle,
    census,
    check_p1,
    check_p2,
    classify_chain,
)
from .semantics import (
    EvaluationError,
    Valuation,
    are_equivalent,
    evaluate,
    is_tautology,
    parse_valuation,
    semantic_consequence,
)


class InputError(Exception):
    pass


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"missing required option(s): {', '.join(missing)}")


def _verify(ok: bool, what: str) -> None:
    if not ok:
        raise InvariantViolation(f"re-check failed: {what}")


def _variables(n: int | None, *formulas) -> list[int] | None:
    if n is None:
        return None
    needed = set().union(*(f.variables for f in formulas))
    return sorted(needed | set(range(1, n + 1)))


def _valuation_or_empty(alg, text: str | None) -> Valuation:
    return parse_valuation(alg, text) if text else Valuation(alg, ())


def cmd_eval(args: argparse.Namespace) -> dict:
    _require(args, "alg", "formula")
    alg = parse_algebra(args.alg)
    f = parse_formula(args.formula)
    v = _valuation_or_empty(alg, args.val)
    value = evaluate(alg, v, f)
    return {"algebra": str(alg), "formula": render_formula(f), "valuation": str(v),
            "value": format_truth_value(alg, value)}


def cmd_taut(args: argparse.Namespace) -> dict:
    _require(args, "alg", "formula")
    alg = parse_algebra(args.alg)
    f = parse_formula(args.formula)
    ok, witness = is_tautology(alg, f, _variables(args.vars, f))
    out = {"algebra": str(alg), "formula": render_formula(f), "verdict": ok, "witness": None}
    if witness is not None:
        value = evaluate(alg, witness, f)
        _verify(not value.is_top, "tautology counterexample evaluates to top")
        out["witness"] = {"valuation": str(witness), "value": format_truth_value(alg, value)}
    return out


def cmd_equiv(args: argparse.Namespace) -> dict:
    _require(args, "alg", "formula", "formula2")
    alg = parse_algebra(args.alg)
    f, g = parse_formula(args.formula), parse_formula(args.formula2)
    ok, witness = are_equivalent(alg, f, g, _variables(args.vars, f, g))
    out = {"algebra": str(alg), "formulas": [render_formula(f), render_formula(g)],
           "verdict": ok, "witness": None}
    if witness is not None:
        values = (evaluate(alg, witness, f), evaluate(alg, witness, g))
        _verify(values[0] != values[1], "equivalence counterexample gives equal values")
        out["witness"] = {"valuation": str(witness),
                          "values": [format_truth_value(alg, a) for a in values]}
    return out


def cmd_conseq(args: argparse.Namespace) -> dict:
    _require(args, "alg", "formula")
    alg = parse_algebra(args.alg)
    premises = [parse_formula(p) for p in (args.premises or "").split(";") if p.strip()]
    f = parse_formula(args.formula)
    ok, witness = semantic_consequence(alg, premises, f, _variables(args.vars, f, *premises))
    out = {"algebra": str(alg), "premises": [render_formula(p) for p in premises],
           "formula": render_formula(f), "verdict": ok, "witness": None}
    if witness is not None:
        _verify(all(evaluate(alg, witness, p).is_top for p in premises)
                and not evaluate(alg, witness, f).is_top, "consequence counterexample")
        out["witness"] = {"valuation": str(witness)}
    return out


def _point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad point {text!r}: {exc}") from exc


def cmd_separate(args: argparse.Namespace) -> dict:
    _require(args, "p", "q")
    p, q = _point(args.p), _point(args.q)
    sep = separating_literal(p, q)
    f = sep.formula
    vals = []
    for point in (p, q):
        v = Valuation(MVQ, tuple((i + 1, MVQ.from_rational(x)) for i, x in enumerate(point)))
        vals.append(evaluate(MVQ, v, f))
    _verify(vals[0] != MVQ.bottom and vals[1] == MVQ.bottom, "separator values")
    return {"p": [str(x) for x in p], "q": [str(x) for x in q],
            "formula": render_formula(f), "literal": format_literal(sep.literal),
            "negated": sep.negated, "coordinate": sep.coordinate,
            "values": [str(MVQ.to_rational(a)) for a in vals]}


def cmd_threshold(args: argparse.Namespace) -> dict:
    _require(args, "h", "k")
    lit = threshold_literal(args.h, args.k)
    pwl = literal_to_pwl(lit)
    zs = pwl_zero_set(pwl)
    _verify(zs.upper == Fraction(args.h, args.k) and pwl(1) == 1, "threshold zero set")
    return {"threshold": str(Fraction(args.h, args.k)), "literal": format_literal(lit),
            "pwl": json.loads(pwl.to_json()), "zero_set": [0, str(zs.upper)]}


def cmd_check_p1(args: argparse.Namespace) -> dict:
    _require(args, "alg")
    alg = parse_algebra(args.alg)
    report = check_p1(alg, args.vars or 1, args.depth)
    if report.formulas:
        v = report.valuations[0]
        a, b = (evaluate(alg, v, f) for f in report.formulas)
        _verify(a != b, "P1 witness formulas agree at the witness valuation")
    return report.to_dict()


def cmd_check_p2(args: argparse.Namespace) -> dict:
    _require(args, "alg")
    alg = parse_algebra(args.alg)
    report = check_p2(alg, args.vars or 1, args.depth, Principle(_VARIANTS[args.variant]),
                      seed=args.seed)
    for s in report.separations:
        values = (evaluate(alg, s.mu, s.formula), evaluate(alg, s.nu, s.formula))
        _verify(values == s.values, f"separator {render_formula(s.formula)}")
    if report.valuations:
        _verify(report.valuations[0] != report.valuations[1], "witness valuations coincide")
    return report.to_dict()


def cmd_classify(args: argparse.Namespace) -> dict:
    _require(args, "alg")
    return classify_chain(parse_algebra(args.alg)).to_dict()


def cmd_census(args: argparse.Namespace) -> dict:
    rows = census(args.max_size, args.vars or 1, args.depth)
    both = [str(r.algebra) for r in rows if r.p1.holds and r.p2.holds]
    return {"rows": [r.to_dict() for r in rows], "count": len(rows), "both_hold": both}


def cmd_enumerate_chains(args: argparse.Namespace) -> dict:
    chains = enumerate_finite_chains(args.size)
    return {"size": args.size, "count": len(chains), "chains": [str(c) for c in chains]}


def cmd_decompose(args: argparse.Namespace) -> dict:
    if args.table:
        with open(args.table) as fh:
            source = ChainTable.from_json(json.load(fh))
        label = args.table
    else:
        _require(args, "alg")
        alg = parse_algebra(args.alg)
        source = alg.table()
        label = str(alg)
    sizes = decompose_finite_chain(source)
    return {"source": label, "summands": sizes,
            "descriptor": " (+) ".join("2" if m == 1 else f"MV[{m}]" for m in sizes)}


_VARIANTS = {"p2": "P2", "p2prime": "P2prime", "p2doubleprime": "P2doubleprime"}

COMMANDS: dict[str, tuple[Callable[[argparse.Namespace], dict], str]] = {
    "eval": (cmd_eval, "evaluate a formula under a valuation"),
    "taut": (cmd_taut, "decide tautologyhood over a finite algebra"),
    "equiv": (cmd_equiv, "decide logical equivalence over a finite algebra"),
    "conseq": (cmd_conseq, "decide semantic consequence over a finite algebra"),
    "separate": (cmd_separate, "build a formula that is 0 at q and positive at p"),
    "threshold": (cmd_threshold, "build a literal with zero set [0, h/k]"),
    "check-p1": (cmd_check_p1, "check the one-set principle"),
    "check-p2": (cmd_check_p2, "check a separation principle"),
    "classify": (cmd_classify, "classify a chain"),
    "census": (cmd_census, "classify all finite chains up to a size"),
    "enumerate-chains": (cmd_enumerate_chains, "list all n-element BL-chains"),
    "decompose": (cmd_decompose, "split a finite chain into MV-chain summands"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alg", help="algebra descriptor, e.g. 'MV[2]' or '2 (+) C'")
    common.add_argument("--formula")
    common.add_argument("--formula2")
    common.add_argument("--premises", help="semicolon-separated formulas")
    common.add_argument("--val", help="valuation, e.g. 'X1=1/2, X2=top'")
    common.add_argument("--p", help="comma-separated rationals")
    common.add_argument("--q", help="comma-separated rationals")
    common.add_argument("--vars", type=int, help="number of variables")
    common.add_argument("--depth", type=int, default=3)
    common.add_argument("--variant", choices=sorted(_VARIANTS), default="p2")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", type=int, default=5)
    common.add_argument("--size", type=int, default=4)
    common.add_argument("--h", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--table", help="JSON file with 'tnorm' and 'residuum' tables")

    parser = argparse.ArgumentParser(prog="tnormlogic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
        return
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        print(f"{key}: {value}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        payload = handler(args)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, FormulaSyntaxError, AlgebraError, EvaluationError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(payload, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
