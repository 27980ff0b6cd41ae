"""Command-line entry point: ``urnlab <command> ...``.

Every JSON result is wrapped in an envelope that echoes all inputs (seed
included), so re-running the echoed flags reproduces the results exactly.
Exit status is 0 on success, 1 on domain errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebraic import AlgebraicNumber
from .chain import ChainError, MultipleRecurrentClassesError, stationary, transition_kernel
from .drift import ZeroPolynomialError, computed_number, drift_polynomial, roots_in_unit_interval
from .ode import NotCertifiedError, flow_field, integrate, time_to_reach
from .rule import RuleError, RuleSyntaxError, parse_rule, split_rule
from .sim import RANDOM_HALF, SimConfig, run_batch
from .synth import SynthesisFailed, exclusion_check, exhaustive_search, synthesize

DOMAIN_ERRORS = (
    RuleError,
    ChainError,
    ZeroPolynomialError,
    NotCertifiedError,
    SynthesisFailed,
    ValueError,
    ZeroDivisionError,
)


class DomainError(Exception):
    def __init__(self, message: str, **extra):
        super().__init__(message)
        self.extra = extra


# argument types --------------------------------------------------------------

def _rule_arg(text: str) -> str:
    try:
        k, E = split_rule(text)
    except RuleSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return f"{k}:" + ",".join(map(str, E))


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed fraction {text!r}; use 'a/b'") from None


def _initial_arg(text: str) -> str:
    if text == RANDOM_HALF:
        return text
    if text.startswith("m=") and text[2:].lstrip("-").isdigit():
        return text
    raise argparse.ArgumentTypeError(f"initial must be '{RANDOM_HALF}' or 'm=COUNT', got {text!r}")


def _seed_arg(text: str) -> int:
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return seed


# formatting helpers ----------------------------------------------------------

def _fs(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _approx(x) -> float:
    return float(f"{float(x):.15g}")


def _alpha_json(a: AlgebraicNumber) -> dict:
    return {
        "interval_lo": _fs(a.lo),
        "interval_hi": _fs(a.hi),
        "approx": a.approx,
        "rational": _fs(a.rational) if a.is_rational else None,
    }


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _g15(x: float) -> str:
    return f"{x:.15g}"


# commands --------------------------------------------------------------------

def cmd_analyze(args) -> dict:
    r = parse_rule(args.rule)
    b = drift_polynomial(r)
    alpha = computed_number(r)
    roots = [] if b.is_zero() else roots_in_unit_interval(b)
    half = b(Fraction(1, 2))
    return {
        "rule": r.to_json(),
        "b_coefficients": [_fs(c) for c in b.coefficients],
        "b_identically_zero": b.is_zero(),
        "roots": [
            {"interval_lo": _fs(a.lo), "interval_hi": _fs(a.hi), "approx": a.approx} for a in roots
        ],
        "alpha": _alpha_json(alpha),
        "alpha_approx": _approx(alpha),
        "rational": _fs(alpha.rational) if alpha.is_rational else None,
        "b_at_half_sign": (half > 0) - (half < 0),
    }


def cmd_simulate(args):
    r = parse_rule(args.rule)
    initial = args.initial if args.initial == RANDOM_HALF else int(args.initial[2:])
    cfg = SimConfig(r, args.n, args.steps, args.seed, initial, args.record_stride)
    if args.runs < 1:
        raise ValueError("runs must be >= 1")
    trajs = run_batch(cfg, args.runs)
    if args.format == "csv":
        rows = []
        for j, tr in enumerate(trajs):
            for s, c in tr.samples:
                row = [s, c, _g15(c / tr.n)]
                rows.append([j, *row] if args.runs > 1 else row)
        header = ["step", "count", "proportion"]
        return _csv(["run", *header] if args.runs > 1 else header, rows)
    ends = [tr.endpoint for tr in trajs]
    summary = {
        "runs": args.runs,
        "mean_endpoint_proportion": _approx(sum(ends) / (len(ends) * args.n)),
    }
    if args.epsilon is not None:
        alpha = float(computed_number(r))
        within = sum(1 for e in ends if abs(e / args.n - alpha) <= args.epsilon)
        summary["alpha_approx"] = _approx(alpha)
        summary["fraction_within"] = within / len(ends)
    return {
        "rule": r.to_json(),
        "record_stride": cfg.stride,
        "trajectories": [
            {
                "run": j,
                "endpoint": tr.endpoint,
                "endpoint_proportion": _approx(tr.endpoint / tr.n),
                "samples": [[s, c] for s, c in tr.samples],
            }
            for j, tr in enumerate(trajs)
        ],
        "summary": summary,
    }


def cmd_stationary(args) -> dict:
    r = parse_rule(args.rule)
    kern = transition_kernel(r, args.n)
    try:
        res = stationary(kern)
    except MultipleRecurrentClassesError as exc:
        raise DomainError(str(exc), recurrent_classes=exc.classes) from None
    out = {
        "rule": r.to_json(),
        "n": args.n,
        "mean": _fs(res.mean),
        "mean_approx": _approx(res.mean),
        "support": [res.support[0], res.support[-1]],
    }
    if args.distribution:
        out["distribution"] = [_fs(p) for p in res.distribution]
    return out


def cmd_ode(args):
    r = parse_rule(args.rule)
    tr = integrate(r, args.x0, args.t_end, float(args.tol), samples=args.samples)
    if args.format == "csv":
        return _csv(["t", "x"], [[_g15(t), _g15(x)] for t, x in tr.samples])
    out = {
        "rule": r.to_json(),
        "limit": _alpha_json(tr.limit),
        "final": _approx(tr.final),
        "samples": [[_approx(t), _approx(x)] for t, x in tr.samples],
    }
    if args.epsilon is not None:
        c = time_to_reach(r, args.epsilon, x0=args.x0, tol=float(args.tol))
        out["time_to_reach"] = _fs(c)
    return out


def cmd_flow(args):
    r = parse_rule(args.rule)
    pts = flow_field(r, args.points)
    if args.format == "csv":
        return _csv(["x", "b"], [[_g15(x), _g15(v)] for x, v in pts])
    return {"rule": r.to_json(), "points": [[_approx(x), _approx(v)] for x, v in pts]}


def _synth_json(res) -> dict:
    return {
        "rule": res.rule.to_json(),
        "target": _fs(res.target),
        "alpha": _alpha_json(res.alpha),
        "achieved_error": _fs(res.achieved_error),
        "achieved_error_approx": _approx(res.achieved_error),
        "lemma_bound": _approx(res.lemma_bound),
    }


def cmd_synthesize(args) -> dict:
    t = args.target
    try:
        res = synthesize(t.numerator, t.denominator, args.epsilon, args.k_max)
    except SynthesisFailed as exc:
        extra = {"best": _synth_json(exc.best)} if exc.best else {}
        raise DomainError(str(exc), **extra) from None
    return _synth_json(res)


def cmd_exclusion(args) -> dict:
    v = args.value
    verdict = exclusion_check(v.numerator, v.denominator)
    return {
        "value": _fs(verdict.value),
        "verdict": verdict.kind,
        "rule": verdict.rule.to_json() if verdict.rule else None,
    }


def cmd_verify(args) -> dict:
    rep = exhaustive_search(args.k_max, args.q_max)
    return {
        "rules_checked": rep.rules_checked,
        "violations": [{"rule": v.rule.to_json(), "root": _fs(v.root)} for v in rep.violations],
        "zero_drift_rules": [r.to_json() for r in rep.zero_drift_rules],
        "rational_computed_numbers": [_fs(x) for x in sorted(rep.rational_values())],
    }


def cmd_search(args) -> dict:
    rep = exhaustive_search(args.k_max, args.q_max)
    catalog = [e.to_json() for e in rep.catalog]
    out = {
        "rules_checked": rep.rules_checked,
        "distinct_numbers": len(catalog),
        "violations": len(rep.violations),
    }
    if args.out:
        Path(args.out).write_text(json.dumps(catalog, indent=2) + "\n")
        out["catalog_path"] = str(args.out)
    else:
        out["catalog"] = catalog
    return out


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="urnlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"urnlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = add("analyze", cmd_analyze, "drift polynomial, roots in [0,1] and the computed number")
    p.add_argument("--rule", type=_rule_arg, required=True, help="rule as 'k:i1,i2,...'")

    p = add("simulate", cmd_simulate, "seeded Monte Carlo trajectories")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--n", type=int, required=True, help="number of balls")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=_seed_arg, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--record-stride", type=int, default=None)
    p.add_argument("--initial", type=_initial_arg, default=RANDOM_HALF,
                   help=f"'{RANDOM_HALF}' or 'm=COUNT'")
    p.add_argument("--epsilon", type=_fraction_arg, default=None,
                   help="also report the fraction of endpoints within epsilon of alpha")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)

    p = add("stationary", cmd_stationary, "exact stationary law of the finite chain")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--distribution", action="store_true", help="include the full law")

    p = add("ode", cmd_ode, "integrate x' = b(x)")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--x0", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--t-end", type=_fraction_arg, default=Fraction(10))
    p.add_argument("--tol", type=_fraction_arg, default=Fraction(1, 10**10))
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--epsilon", type=_fraction_arg, default=None,
                   help="also report the time to come within epsilon/2 of the limit")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)

    p = add("flow", cmd_flow, "sample b on a grid of [0,1]")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)

    p = add("synthesize", cmd_synthesize, "find a residue rule computing a number near a/b")
    p.add_argument("--target", type=_fraction_arg, required=True)
    p.add_argument("--epsilon", type=_fraction_arg, required=True)
    p.add_argument("--k-max", type=int, default=60)

    p = add("exclusion", cmd_exclusion, "decide whether a rational is computable")
    p.add_argument("--value", type=_fraction_arg, required=True)

    p = add("verify", cmd_verify, "exhaustive check for rational roots with denominator >= 4")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--q-max", type=int, default=50)

    p = add("search", cmd_search, "catalog of computed numbers for all rules up to k-max")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--q-max", type=int, default=50)
    p.add_argument("--out", default=None)
    return parser


def _echo(parser: argparse.ArgumentParser, args) -> dict:
    """Inputs keyed by flag name, rendered so they parse back identically."""
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    out = {}
    for action in sub.choices[args.command]._actions:
        if not action.option_strings or action.dest in ("help",):
            continue
        value = getattr(args, action.dest)
        if value is None or value is False:
            continue
        key = action.option_strings[0].lstrip("-")
        if value is True:
            out[key] = True
        elif isinstance(value, Fraction):
            out[key] = _fs(value)
        else:
            out[key] = str(value)
    return out


def echo_to_argv(command: str, inputs: dict) -> list[str]:
    argv = [command]
    for key, value in inputs.items():
        argv.append(f"--{key}")
        if value is not True:
            argv.append(value)
    return argv


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = _echo(parser, args)
    envelope = {"tool_version": __version__, "command": args.command, "inputs": inputs}
    start = time.perf_counter()
    try:
        result = args.func(args)
    except DomainError as exc:
        envelope["error"] = {"message": str(exc), **exc.extra}
        print(json.dumps(envelope, indent=2))
        return 1
    except DOMAIN_ERRORS as exc:
        envelope["error"] = {"type": type(exc).__name__, "message": str(exc)}
        print(json.dumps(envelope, indent=2))
        return 1
    if isinstance(result, str):
        text = result
    else:
        envelope["results"] = result
        envelope["timing_ms"] = round((time.perf_counter() - start) * 1000)
        text = json.dumps(envelope, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out and args.command != "search":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
