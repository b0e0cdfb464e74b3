"""Command-line entry point.

Every command builds a JSON envelope ``{command, input, parameters, passed,
result, reports}`` and prints it either as JSON or as a plain table. Exit
codes: 0 success, 1 internal check failure, 2 usage error, 3 I/O, parse or
validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from .exact import Q, Tensor
from .fixtures import vector
from .frame import curvature, koszul_levi_civita, metricity, torsion, validate_manifold
from .paracontact import (
    PRESET_ALIASES,
    PRESETS,
    ConnectionParams,
    audit_closed_forms,
    closed_form_curvature_bar,
    general_connection,
    general_torsion_expected,
    g_phi,
    lp_identity_suite,
    parameter_grid,
    require_lp_sasakian,
    resolve_preset,
    verify_almost_paracontact,
    verify_lp_sasakian,
)
from .published import audit_example
from .report import FAIL, PASS, Check, Report, Witness, compare, compare_scalar, tensor_json
from .soliton import barred_data, soliton_solve, theorem_suite
from .specfile import SpecError, emit_example, load_spec

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Q(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS,
                     help="output format (default: json)")

    parser = argparse.ArgumentParser(
        prog="lpsoliton", parents=[fmt],
        description="Exact checks for LP-Sasakian frame manifolds, the general connection "
                    "and generalized eta-Ricci solitons.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def command(name: str, help_: str, *, spec_file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[fmt], help=help_, description=help_)
        if spec_file:
            p.add_argument("file", help='manifold spec (JSON) or "builtin"')
        return p

    def connection_args(p: argparse.ArgumentParser, presets: bool = True) -> None:
        p.add_argument("--a", type=_rational, default=None, metavar="P/Q")
        p.add_argument("--b", type=_rational, default=None, metavar="P/Q")
        if presets:
            p.add_argument("--preset", choices=sorted(PRESET_ALIASES), default=None)

    command("verify", "check the almost paracontact and LP-Sasakian axioms")
    for name, help_ in (("connection", "general connection, torsion and metricity"),
                        ("curvature", "Riemann tensor of the general connection"),
                        ("ricci", "Ricci tensor and Ricci operator of the general connection"),
                        ("scalar", "scalar curvature of the general connection")):
        connection_args(command(name, help_))

    p = command("soliton", "solve the soliton equation for its coefficients")
    p.add_argument("--x", required=True, metavar="FIELD",
                   help='"xi" or comma-separated rational components')
    connection_args(p)

    p = command("crosscheck", "compare closed forms with direct computation over a grid")
    p.add_argument("--grid", type=_positive, required=True, metavar="N",
                   help="N values per parameter, N*N points")
    p.add_argument("--include-presets", action="store_true",
                   help="add the four named connections to the grid")
    p.add_argument("--jobs", type=_positive, default=1, metavar="N",
                   help="worker processes (output does not depend on this)")

    p = command("theorems", "run the theorem checkers at one (a, b)")
    connection_args(p)
    p.add_argument("--p", type=_rational, default=Fraction(1), metavar="P/Q")
    p.add_argument("--q", type=_rational, default=Fraction(1), metavar="P/Q")
    p.add_argument("--r", type=_rational, default=Fraction(1), metavar="P/Q")

    p = command("paper-example", "write the builtin 4-dimensional example as a spec file",
                spec_file=False)
    p.add_argument("--out", default=None, metavar="PATH")

    p = command("audit-example", "compare printed example values with direct computation",
                spec_file=False)
    p.add_argument("--grid", type=_positive, default=5, metavar="N")
    return parser


def _params(args: argparse.Namespace) -> tuple[ConnectionParams, Optional[str]]:
    preset = getattr(args, "preset", None)
    if preset is not None:
        if args.a is not None or args.b is not None:
            raise UsageError("--preset cannot be combined with --a/--b")
        key = resolve_preset(preset)
        return PRESETS[key], key
    zero = Fraction(0)
    return ConnectionParams(args.a if args.a is not None else zero,
                            args.b if args.b is not None else zero), None


def _envelope(args: argparse.Namespace, parameters: dict[str, Any], reports: Sequence[Report],
              result: dict[str, Any] | None = None) -> dict[str, Any]:
    env: dict[str, Any] = {"command": args.command}
    if hasattr(args, "file"):
        env["input"] = args.file
    env["parameters"] = parameters
    env["passed"] = all(r.passed for r in reports)
    env["result"] = result or {}
    env["reports"] = [r.to_dict() for r in reports]
    return env


# -- commands -----------------------------------------------------------------

def cmd_verify(args):
    M, P = load_spec(args.file)
    reports = [validate_manifold(M), verify_almost_paracontact(M, P)]
    C = koszul_levi_civita(M)
    lc = Report("levi_civita")
    zero3 = Tensor.zeros("ull", M.n)
    lc.add(compare("torsion_zero", zero3, torsion(M, C)))
    lc.add(compare("metricity_zero", Tensor.zeros("lll", M.n), metricity(M, C)))
    reports += [lc, verify_lp_sasakian(M, P, C)]
    result: dict[str, Any] = {"dim": M.n, "lambda": str(P.lam)}
    if all(r.passed for r in reports):
        reports.append(lp_identity_suite(M, P, C, curvature(M, C)))
    return _envelope(args, {}, reports, result)


def _barred(args):
    M, P = load_spec(args.file)
    params, preset = _params(args)
    C_lc = require_lp_sasakian(M, P)
    C_bar = general_connection(M, P, C_lc, params, name=preset)
    parameters = params.as_dict()
    if preset:
        parameters["preset"] = preset
    return M, P, params, C_lc, C_bar, parameters


def cmd_connection(args):
    M, P, params, C_lc, C, parameters = _barred(args)
    rep = Report("connection", parameters=parameters)
    T = torsion(M, C)
    N = metricity(M, C)
    rep.add(compare("torsion_formula", general_torsion_expected(M, P, params), T,
                    note="(a + b)[eta(U) phi V - eta(V) phi U]"))
    gp = g_phi(M, P)
    expected_N = Tensor.build("lll", M.n, lambda i, j, k: -2 * params.b * P.eta[i] * gp[j, k])
    rep.add(compare("metricity_formula", expected_N, N, note="-2b eta(U) g(phi V, W)"))
    result = {
        "connection": C.provenance,
        "metric_compatible": N.is_zero(),
        "torsion_free": T.is_zero(),
        "gamma": tensor_json(C.gamma),
        "torsion": tensor_json(T),
        "metricity": tensor_json(N),
    }
    return _envelope(args, parameters, [rep], result)


def _curvatures(args):
    M, P, params, C_lc, C, parameters = _barred(args)
    direct = curvature(M, C)
    closed = closed_form_curvature_bar(M, P, curvature(M, C_lc), params)
    return M, direct, closed, parameters


def cmd_curvature(args):
    M, direct, closed, parameters = _curvatures(args)
    rep = Report("curvature", parameters=parameters)
    rep.add(compare("riemann_closed_form", direct.riemann, closed.riemann,
                    note="expected = direct, actual = closed form"))
    return _envelope(args, parameters, [rep], {"riemann": tensor_json(direct.riemann)})


def cmd_ricci(args):
    M, direct, closed, parameters = _curvatures(args)
    rep = Report("ricci", parameters=parameters)
    rep.add(compare("ricci_closed_form", direct.ricci, closed.ricci,
                    note="expected = direct, actual = closed form"))
    rep.add(compare("ricci_operator_closed_form", direct.ricci_op, closed.ricci_op,
                    note="expected = direct, actual = closed form"))
    result = {"ricci": tensor_json(direct.ricci), "ricci_operator": tensor_json(direct.ricci_op)}
    return _envelope(args, parameters, [rep], result)


def cmd_scalar(args):
    M, direct, closed, parameters = _curvatures(args)
    rep = Report("scalar", parameters=parameters)
    rep.add(compare_scalar("scalar_closed_form", direct.scalar, closed.scalar,
                           note="expected = direct, actual = closed form"))
    return _envelope(args, parameters, [rep], {"scalar": str(direct.scalar)})


def cmd_soliton(args):
    M, P = load_spec(args.file)
    params, preset = _params(args)
    try:
        X = vector(args.x, P)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--x: {exc}") from None
    C_lc = require_lp_sasakian(M, P)
    sol = soliton_solve(M, P, params, X, data=barred_data(M, P, params, X, C_lc))
    parameters = params.as_dict()
    if preset:
        parameters["preset"] = preset
    parameters["x"] = [str(v) for v in X.data]
    rep = Report("soliton", parameters=parameters)
    rep.add(Check("kernel_residuals_zero", PASS if sol.residual_check else FAIL,
                  None if sol.residual_check else Witness((), "0", "nonzero")))
    return _envelope(args, parameters, [rep], sol.to_dict())


def cmd_crosscheck(args):
    M, P = load_spec(args.file)
    grid = parameter_grid(args.grid, include_presets=args.include_presets)
    rep = audit_closed_forms(M, P, grid, jobs=args.jobs)
    parameters = {"grid": args.grid, "include_presets": args.include_presets}
    return _envelope(args, parameters, [rep])


def cmd_theorems(args):
    M, P = load_spec(args.file)
    params, preset = _params(args)
    reports = theorem_suite(M, P, params, p=args.p, q=args.q, r_const=args.r)
    parameters = params.as_dict()
    if preset:
        parameters["preset"] = preset
    parameters.update(p=str(args.p), q=str(args.q), r=str(args.r))
    return _envelope(args, parameters, reports)


def cmd_audit_example(args):
    rep = audit_example(parameter_grid(args.grid))
    return _envelope(args, {"grid": args.grid}, [rep])


COMMANDS: dict[str, Callable[[argparse.Namespace], dict[str, Any]]] = {
    "verify": cmd_verify,
    "connection": cmd_connection,
    "curvature": cmd_curvature,
    "ricci": cmd_ricci,
    "scalar": cmd_scalar,
    "soliton": cmd_soliton,
    "crosscheck": cmd_crosscheck,
    "theorems": cmd_theorems,
    "audit-example": cmd_audit_example,
}


# -- rendering ----------------------------------------------------------------

def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _status(text: str, color: bool) -> str:
    word = text.upper()
    if not color:
        return word
    code = {"PASS": "32", "FAIL": "31", "CONDITIONAL": "33", "SKIPPED": "90"}.get(word, "0")
    return f"\x1b[{code}m{word}\x1b[0m"


def _render_value(key: str, value: Any, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        out.append(f"{pad}{key}:")
        for k, v in value.items():
            _render_value(str(k), v, indent + 1, out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        out.append(f"{pad}{key}:")
        for v in value:
            out.append(pad + "  - " + "  ".join(
                f"{k}={_inline(x)}" for k, x in v.items()))
    else:
        out.append(f"{pad}{key}: {_inline(value)}")


def _inline(value: Any) -> str:
    if isinstance(value, list):
        return "(" + ", ".join(_inline(v) for v in value) + ")"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return "-" if value is None else str(value)


def render_table(env: dict[str, Any], color: bool = False) -> str:
    out = [f"{env['command']} {env.get('input', '')}".rstrip()
           + f"  [{_status(PASS if env['passed'] else FAIL, color)}]"]
    if env["parameters"]:
        out.append("parameters: " + "  ".join(f"{k}={_inline(v)}"
                                              for k, v in env["parameters"].items()))
    for rep in env["reports"]:
        out.append("")
        params = rep.get("parameters") or {}
        suffix = ("  " + "  ".join(f"{k}={_inline(v)}" for k, v in params.items())) if params else ""
        out.append(f"== {rep['subject']}{suffix}")
        width = max((len(c["name"]) for c in rep["checks"]), default=0)
        for c in rep["checks"]:
            line = f"  {_status(c['status'], color):<11} {c['name']:<{width}}  {c['scope']}"
            w = c["witness"]
            if w:
                line += f"  at {_inline(w['index'])} expected {w['expected']} actual {w['actual']}"
            if c.get("note"):
                line += f"  # {c['note']}"
            out.append(line.rstrip())
    if env["result"]:
        out.append("")
        for k, v in env["result"].items():
            _render_value(k, v, 0, out)
    return "\n".join(out) + "\n"


# -- entry points -------------------------------------------------------------

def run_command(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    fmt = getattr(args, "format", "json")

    try:
        if args.command == "paper-example":
            text = emit_example()
            if args.out:
                Path(args.out).write_text(text, encoding="utf-8")
            else:
                stdout.write(text)
            return EXIT_OK
        env = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"lpsoliton: error: {exc}\n")
        return EXIT_USAGE
    except SpecError as exc:
        stderr.write(f"lpsoliton: {exc}\n")
        return EXIT_IO
    except OSError as exc:
        stderr.write(f"lpsoliton: {exc}\n")
        return EXIT_IO
    except ValueError as exc:
        # structure is not LP-Sasakian: a mathematical precondition failed
        stderr.write(f"lpsoliton: {exc}\n")
        return EXIT_CHECK

    if fmt == "table":
        stdout.write(render_table(env, _use_color(stdout)))
    else:
        stdout.write(json.dumps(env, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK if env["passed"] else EXIT_CHECK


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
