"""Command-line interface: ``spinrep <command> ...``.

Exit codes: 0 success, 2 malformed input, 3 validation failure
(non-Hermitian input, not a state), 4 numerical failure (antipodal
pairing or class extraction).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import io as sio
from .angular import parse_spin, rotate_operator
from .constellation import PAIRING_TOL, star_from_angles
from .errors import InputError, NumericalError, ValidationError
from .polynomial import anticoherence_order, anticoherence_residuals, operator_from_poly, \
    partial_trace_L, poly_from_operator
from .quasiprob import grid_rows, husimi_grid, p_function_grid, sphere_grid
from .render import render_svg
from .srep import srep_coefficients, srep_to_json
from .states import named_state, oracle_partial_trace
from .trep import decompose, reconstruct, trep_from_json, trep_to_json

EXIT_INPUT, EXIT_VALIDATION, EXIT_NUMERICAL = 2, 3, 4

STATE_CHOICES = ("sc", "dicke", "ghz", "w", "cat-q", "cat-c", "mixed")


def _tolerance(args) -> float:
    if args.tolerance is not None:
        return args.tolerance
    env = os.environ.get("SPINREP_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise InputError(f"SPINREP_TOL is not a number: {env!r}") from None
    return PAIRING_TOL


def _read_text(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _read_json(path: str | None):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_state(args) -> np.ndarray:
    rho = sio.state_from_json(_read_json(args.inp))
    if not getattr(args, "no_hermit_check", False):
        sio.check_hermitian(rho)
    return rho


def _write_state(args, rho) -> None:
    _write(args.out, sio.dumps(sio.state_to_json(rho)))


def _load_trep(args):
    try:
        return trep_from_json(_read_json(args.inp))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed T-rep file: {exc}") from None


# --------------------------------------------------------------------------
# commands

def cmd_make(args) -> None:
    try:
        two_s = parse_spin(args.spin)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    two_m = None
    if args.m is not None:
        try:
            m = Fraction(args.m)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse m={args.m!r}") from None
        if (2 * m).denominator != 1:
            raise InputError(f"m={args.m} is not a multiple of 1/2")
        two_m = int(2 * m)
        if abs(two_m) > two_s or (two_s - two_m) % 2:
            raise ValidationError(f"m={args.m} is not valid for spin {args.spin}")
    name = {"cat-q": "cat_q", "cat-c": "cat_c", "mixed": "maximally_mixed"}.get(args.state, args.state)
    if name == "dicke" and two_m is None:
        raise InputError("--m is required for dicke states")
    try:
        rho = named_state(name, two_s, two_m=two_m,
                          direction=star_from_angles(args.theta, args.phi))
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    _write_state(args, rho)


def cmd_trep(args) -> None:
    rho = _load_state(args)
    _write(args.out, sio.dumps(trep_to_json(decompose(rho, tol=_tolerance(args)))))


def cmd_reconstruct(args) -> None:
    _write_state(args, reconstruct(_load_trep(args)))


def cmd_reduce(args) -> None:
    rho = _load_state(args)
    two_s = rho.shape[0] - 1
    k = args.constituents
    if not 0 <= k <= two_s:
        raise ValidationError(f"cannot trace {k} constituents out of spin {two_s}/2")
    if args.oracle:
        try:
            out = oracle_partial_trace(rho, k)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
    else:
        p = poly_from_operator(rho)
        for _ in range(k):
            p = partial_trace_L(p)
        out = operator_from_poly(p)
    _write_state(args, out)


def cmd_anticoherence(args) -> None:
    p = poly_from_operator(_load_state(args))
    tol = args.tolerance if args.tolerance is not None else 1e-9
    res = anticoherence_residuals(p)
    report = {"order": anticoherence_order(p, tol),
              "residuals": [{"t": t, "residual": r} for t, r in enumerate(res)]}
    _write(args.out, sio.dumps(report))


def _grid_command(args, fn) -> None:
    rho = _load_state(args)
    if args.grid < 1:
        raise InputError("--grid must be positive")
    grid = sphere_grid(2 * args.grid - 1)
    _write(args.out, sio.grid_to_csv(grid_rows(grid, fn(rho, grid))))


def cmd_husimi(args) -> None:
    _grid_command(args, husimi_grid)


def cmd_pfunction(args) -> None:
    _grid_command(args, p_function_grid)


def cmd_rotate(args) -> None:
    try:
        euler = [float(x) for x in args.euler.split(",")]
    except ValueError:
        raise InputError(f"cannot parse --euler {args.euler!r}") from None
    if len(euler) != 3 or not all(math.isfinite(x) for x in euler):
        raise InputError("--euler needs three finite angles a,b,c")
    _write_state(args, rotate_operator(_load_state(args), euler))


def cmd_srep(args) -> None:
    coeffs = srep_coefficients(_load_state(args))
    _write(args.out, sio.dumps(srep_to_json(coeffs)))


def cmd_render(args) -> None:
    _write(args.out, render_svg(_load_trep(args), spheres_as_radii=args.spheres_as_radii))


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinrep", description=__doc__.splitlines()[0])
    parser.add_argument("--tolerance", type=float, default=None,
                        help="angular pairing tolerance in radians (anticoherence: residual tolerance); "
                             "falls back to $SPINREP_TOL")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, inp=True, out=True):
        p = sub.add_parser(name, help=help_text)
        if inp:
            p.add_argument("--in", dest="inp", default=None, help="input file (default stdin)")
        if out:
            p.add_argument("--out", default=None, help="output file (default stdout)")
        p.set_defaults(func=func)
        return p

    p = add("make", cmd_make, "write a named state", inp=False)
    p.add_argument("--state", required=True, choices=STATE_CHOICES)
    p.add_argument("--spin", required=True, help="spin as p/q, e.g. 3/2")
    p.add_argument("--m", default=None, help="magnetic number for dicke, e.g. -1/2")
    p.add_argument("--theta", type=float, default=0.0, help="sc direction polar angle")
    p.add_argument("--phi", type=float, default=0.0, help="sc direction azimuth")

    for name, func, text in (("trep", cmd_trep, "state -> T-rep"),
                             ("anticoherence", cmd_anticoherence, "anticoherence order and residuals"),
                             ("srep", cmd_srep, "state -> S-rep coefficients")):
        p = add(name, func, text)
        p.add_argument("--no-hermit-check", action="store_true")

    add("reconstruct", cmd_reconstruct, "T-rep -> state")

    p = add("reduce", cmd_reduce, "trace out spin-1/2 constituents")
    p.add_argument("--constituents", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="use the tensor-embedding oracle")
    p.add_argument("--no-hermit-check", action="store_true")

    for name, func in (("husimi", cmd_husimi), ("pfunction", cmd_pfunction)):
        p = add(name, func, f"{name} on a Gauss-Legendre x uniform grid (CSV)")
        p.add_argument("--grid", type=int, default=16, help="polar nodes; azimuthal nodes = 2 x grid")

    p = add("rotate", cmd_rotate, "apply U(R) rho U(R)^dagger")
    p.add_argument("--euler", required=True, help="z-y-z Euler angles a,b,c in radians")
    p.add_argument("--no-hermit-check", action="store_true")

    p = add("render", cmd_render, "T-rep -> SVG")
    p.add_argument("--spheres-as-radii", action="store_true",
                   help="draw all blocks as concentric spheres of radius w")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"spinrep: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"spinrep: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"spinrep: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
