"""Command-line front end.

Subcommands: algebraic, ode, integrate, decompose, fuchsian, puiseux,
corpus.  Exit codes: 0 = Representable, 1 = NotRepresentable,
2 = Undecided, 64 = usage or input error.  --json emits the machine report;
the corpus driver replays plain-text cases and may run them in parallel
(FINITUDE_THREADS caps the pool).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .algebra import parse_expression, parse_univariate
from .algebra.poly import RationalFunction
from .config import Settings, load_settings
from .differential import (LinearODE, integrate_rational,
                           rational_witness_search)
from .errors import ExprSyntaxError, FinitudeError
from .fuchsian import FuchsianSystem, small_norm_verdict, system_monodromy
from .monodromy import monodromy_group, singular_points
from .puiseux import INFINITY, puiseux_expand
from .solvability import (invertible_by_radicals, k_radicals_verdict,
                          radical_tower, radicals_verdict, ritt_decompose)
from .solvability.verdicts import VerdictStatus

EXIT_REPRESENTABLE = 0
EXIT_NOT_REPRESENTABLE = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 64


def _status_exit(status) -> int:
    return {VerdictStatus.REPRESENTABLE: EXIT_REPRESENTABLE,
            VerdictStatus.NOT_REPRESENTABLE: EXIT_NOT_REPRESENTABLE,
            VerdictStatus.UNDECIDED: EXIT_UNDECIDED}[status]


class Report:
    """Input echo, module outputs, timing, version, effective tolerances."""

    def __init__(self, command, arguments, settings: Settings):
        self.data = {
            "tool": "finitude",
            "version": __version__,
            "command": command,
            "input": arguments,
            "settings": settings.to_json(),
        }
        self._start = time.perf_counter()

    def add(self, key, value):
        self.data[key] = value

    def finish(self):
        self.data["elapsed_seconds"] = round(
            time.perf_counter() - self._start, 6)
        return self.data


def _emit(report: Report, as_json: bool, lines):
    data = report.finish()
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_algebraic(args, settings) -> int:
    report = Report("algebraic", {"expr": args.expr, "k": args.k,
                                  "tower": args.tower}, settings)
    P = parse_expression(args.expr, ["x", "y"])
    action = monodromy_group(P, tol=settings.continuation_tol)
    singular = singular_points(P, settings.root_tol)
    report.add("monodromy", action.report(singular))
    lines = [f"curve: {P.format()}",
             f"singular points: "
             f"{[_fmt_complex(p.center) for p in singular.points]}",
             f"group order: {action.group.order()}  "
             f"transitive: {action.transitive}"]
    verdict = radicals_verdict(P, want_certificate=args.tower)
    report.add("radicals", verdict.to_json())
    lines.append(f"representable by radicals: {verdict.status} "
                 f"({verdict.reason})")
    if verdict.certificate is not None:
        lines.append(f"certificate: {verdict.certificate.to_string()}")
    exit_code = _status_exit(verdict.status)
    if args.k is not None:
        kv = k_radicals_verdict(P, args.k)
        report.add("k_radicals", kv.to_json())
        lines.append(f"representable by {args.k}-radicals: {kv.status}")
        exit_code = _status_exit(kv.status)
    _emit(report, args.json, lines)
    return exit_code


def cmd_ode(args, settings) -> int:
    report = Report("ode", {"order": args.order,
                            "coefficients": args.coefficients}, settings)
    if len(args.coefficients) != args.order:
        raise ExprSyntaxError("expected one coefficient per order", 0)
    coeffs = [parse_expression(c, ["x"]) for c in args.coefficients]
    ode = LinearODE([RationalFunction.coerce(c) for c in coeffs])
    bound = settings.witness_degree_bound or None
    if ode.order == 2:
        witnesses = rational_witness_search(ode, degree_bound=bound)
        report.add("witnesses", [w.format() for w in witnesses])
        if witnesses:
            lines = ["rational logarithmic-derivative witnesses:"]
            lines += [f"  u = {w.format()}" for w in witnesses]
            lines.append("a solution y = exp(integral u) exists; the "
                         "equation is solvable by generalized quadratures")
            _emit(report, args.json, lines)
            return EXIT_REPRESENTABLE
        lines = ["no rational witness found (NOT a proof of "
                 "unsolvability by generalized quadratures)"]
        _emit(report, args.json, lines)
        return EXIT_UNDECIDED
    from .differential import generalized_riccati
    riccati = generalized_riccati(ode)
    report.add("generalized_riccati", riccati.format())
    _emit(report, args.json,
          [f"generalized Riccati equation: {riccati.format()} = 0",
           "witness search is implemented for order 2 only"])
    return EXIT_UNDECIDED


def cmd_integrate(args, settings) -> int:
    report = Report("integrate", {"expr": args.expr}, settings)
    f = parse_expression(args.expr, ["x"])
    form = integrate_rational(RationalFunction.coerce(f))
    report.add("liouville_form", form.to_json())
    check = (form.derivative() - RationalFunction.coerce(f)).is_zero()
    report.add("derivative_verified", check)
    _emit(report, args.json,
          [f"integral = {form.format()}",
           f"derivative check (exact): {'ok' if check else 'FAILED'}"])
    return EXIT_REPRESENTABLE if check else EXIT_UNDECIDED


def cmd_decompose(args, settings) -> int:
    report = Report("decompose", {"expr": args.expr}, settings)
    f = parse_univariate(args.expr)
    chain = ritt_decompose(f)
    verdict = invertible_by_radicals(f)
    report.add("chain", [g.format() for g in chain])
    report.add("invertible_by_radicals", verdict.to_json())
    lines = ["composition chain (innermost first):"]
    lines += [f"  {g.format()}" for g in chain]
    lines.append(f"inverse representable by radicals: {verdict.status}")
    _emit(report, args.json, lines)
    return _status_exit(verdict.status)


def cmd_fuchsian(args, settings) -> int:
    with open(args.file, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    report = Report("fuchsian", {"file": args.file}, settings)
    system = FuchsianSystem.from_json(data)
    mono = system_monodromy(system, tol=settings.fuchsian_tol)
    report.add("monodromy", mono.report())
    verdict = small_norm_verdict(system, tol=settings.eig_cluster_tol)
    report.add("verdict", verdict.to_json())
    lines = [f"system: {system!r}",
             f"loop condition estimates: "
             f"{[f'{c:.3g}' for c in mono.condition_estimates]}",
             f"verdict: {verdict.status}",
             f"  {verdict.reason}"]
    _emit(report, args.json, lines)
    return _status_exit(verdict.status)


def cmd_puiseux(args, settings) -> int:
    report = Report("puiseux", {"expr": args.expr, "point": args.point,
                                "order": args.order}, settings)
    P = parse_expression(args.expr, ["x", "y"])
    if args.point == "inf":
        point = INFINITY
    else:
        from fractions import Fraction
        try:
            point = Fraction(args.point)
        except ValueError:
            point = complex(args.point)
    series = puiseux_expand(P, point, order=args.order)
    report.add("series", [s.to_json() for s in series])
    lines = [f"{len(series)} branches at {args.point}:"]
    for s in series:
        head = " + ".join(f"({c:.6g})*t^{e}" for e, c in s.terms[:3])
        lines.append(f"  ramification {s.ramification}: {head} ...")
    _emit(report, args.json, lines)
    return EXIT_REPRESENTABLE


def cmd_corpus(args, settings) -> int:
    cases = []
    for name in sorted(os.listdir(args.directory)):
        if name.endswith(".case"):
            cases.append(os.path.join(args.directory, name))
    if not cases:
        print(f"no .case files under {args.directory}", file=sys.stderr)
        return EXIT_USAGE
    workers = int(os.environ.get("FINITUDE_THREADS", "1"))
    results = []
    if workers > 1:
        # out-of-process execution: stdout capture is process-global, so
        # parallel cases each get their own interpreter
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_case_subprocess, cases))
    else:
        results = [_run_case(c, settings) for c in cases]
    failed = [name for name, ok, _detail in results if not ok]
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {os.path.basename(name)}"
              + ("" if ok else f"  ({detail})"))
    print(f"{len(results) - len(failed)}/{len(results)} corpus cases pass")
    return EXIT_REPRESENTABLE if not failed else EXIT_NOT_REPRESENTABLE


def _parse_case(path):
    command = None
    expects = []
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("cmd:"):
                command = line[4:].strip()
            elif line.startswith("expect:"):
                expects.append(line[7:].strip())
    return command, expects


def _check_case(path, expects, output):
    canonical = json.dumps(json.loads(output), sort_keys=True) \
        if output.strip().startswith("{") else output
    for fragment in expects:
        if fragment not in canonical:
            return path, False, f"missing fragment {fragment!r}"
    return path, True, ""


def _run_case(path, settings):
    """A case file holds one command line and expected JSON fragments."""
    command, expects = _parse_case(path)
    if command is None:
        return path, False, "no cmd line"
    import io
    from contextlib import redirect_stdout
    buffer = io.StringIO()
    try:
        with redirect_stdout(buffer):
            main(["--json"] + command.split())
    except SystemExit:
        pass
    return _check_case(path, expects, buffer.getvalue())


def _run_case_subprocess(path):
    import subprocess
    command, expects = _parse_case(path)
    if command is None:
        return path, False, "no cmd line"
    proc = subprocess.run(
        [sys.executable, "-m", "finitude.cli", "--json"] + command.split(),
        capture_output=True, text=True)
    return _check_case(path, expects, proc.stdout)


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.6g}{z.imag:+.6g}i"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finitude",
        description="solvability of equations in finite terms")
    parser.add_argument("--config", help="key = value settings file")
    parser.add_argument("--json", action="store_true",
                        help="emit the JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebraic",
                       help="monodromy and radical verdicts for P(x,y) = 0")
    p.add_argument("expr")
    p.add_argument("--k", type=int, default=None,
                   help="also decide representability by k-radicals")
    p.add_argument("--tower", action="store_true",
                   help="attempt an explicit radical tower certificate")
    p.set_defaults(func=cmd_algebraic)

    p = sub.add_parser("ode", help="rational witness search for a linear ODE")
    p.add_argument("order", type=int)
    p.add_argument("coefficients", nargs="+",
                   help="a_1 ... a_n as expressions in x")
    p.set_defaults(func=cmd_ode)

    p = sub.add_parser("integrate",
                       help="Liouville form of a rational integral")
    p.add_argument("expr")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("decompose",
                       help="Ritt decomposition and invertibility by radicals")
    p.add_argument("expr")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("fuchsian",
                       help="monodromy and triangularization of a system")
    p.add_argument("file", help="JSON: {poles: [[re,im]], matrices: [...]}")
    p.set_defaults(func=cmd_fuchsian)

    p = sub.add_parser("puiseux", help="branch expansions at a point")
    p.add_argument("expr")
    p.add_argument("--point", default="0", help="rational, complex, or inf")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_puiseux)

    p = sub.add_parser("corpus", help="replay the regression corpus")
    p.add_argument("directory")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; remap to the contract
        if exc.code not in (0, None):
            raise SystemExit(EXIT_USAGE)
        raise
    try:
        settings = load_settings(args.config)
        code = args.func(args, settings)
    except ExprSyntaxError as err:
        print(f"syntax error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, FinitudeError) as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
