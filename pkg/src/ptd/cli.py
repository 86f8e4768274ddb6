"""Command-line front end: ``ptd <command> [options]``.

Every command builds its whole output in memory and writes it in one step,
so a failing run never leaves a partial file behind.  Exit codes: 0 success,
1 validation failure, 2 usage or configuration error, 3 physics-domain error
(for example an unbound state).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .errors import DomainError, NoBoundStateError, PTDError
from .expectation import expectation_report
from .model import PhysicalParams, StateLabel, is_bound
from .spectrum import critical_alpha, energy, energy_principal, figure1_data
from .validation import FIGURE_STATES, report_json, run_checks
from .wavefunction import AS_PRINTED, CORRECTED, default_r_grid, hyperradial_u, radial_r, radial_solution

__all__ = ["main", "build_parser", "format_number"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
SCHEMA_VERSION = 1
DEFAULT_FIGURE_ALPHA = 0.5
FIGURE1_D = (1, 2, 3, 4, 5)
FIGURE1_N = (0, 1, 2, 3)
FIGURE1_GRID = "0.05:1.5:30"


class UsageError(Exception):
    """Bad configuration detected after argument parsing."""


def format_number(x) -> str:
    """12 significant digits; ``%g`` switches to exponent form below 1e-4."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".12g")


def _json_value(x):
    if x is None or isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(format_number(x))


# --- argument handling -----------------------------------------------------------


def _alpha_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected lo:hi:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None
    if count < 1 or not (lo > 0 and hi >= lo) or not (math.isfinite(lo) and math.isfinite(hi)):
        raise argparse.ArgumentTypeError("need 0 < lo <= hi and count >= 1")
    return [float(a) for a in np.linspace(lo, hi, count)]


_r_grid = _alpha_grid


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _dimension(text: str) -> int:
    value = _nonneg_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("dimension must be >= 1")
    return value


def _add_units(p):
    p.add_argument("--V0", type=_positive, default=1.0, help="well depth (default 1)")
    p.add_argument("--mu", type=_positive, default=1.0, help="reduced mass (default 1)")
    p.add_argument("--hbar", type=_positive, default=1.0, help="Planck constant (default 1)")


def _add_alpha(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--alpha", type=_positive, help="range parameter")
    g.add_argument("--alpha-grid", type=_alpha_grid, metavar="LO:HI:COUNT",
                   help="inclusive uniform grid of range parameters")


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH", help="write here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptd",
        description="Bound states of the D-dimensional modified Poschl-Teller well.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy levels")
    p.add_argument("--D", type=_dimension, nargs="+", required=True)
    p.add_argument("--indexing", choices=("principal", "radial"), default="principal")
    p.add_argument("--n", type=_nonneg_int, nargs="+", help="principal numbers (principal indexing)")
    p.add_argument("--ell", type=_nonneg_int, nargs="+", help="angular numbers (radial indexing)")
    p.add_argument("--nr", type=_nonneg_int, nargs="+", help="radial numbers (radial indexing)")
    _add_alpha(p)
    _add_units(p)
    _add_output(p)

    p = sub.add_parser("critical-alpha", help="range parameter at which a level unbinds")
    p.add_argument("--D", type=_dimension, nargs="+", required=True)
    p.add_argument("--n", type=_nonneg_int, nargs="+", required=True)
    _add_units(p)
    _add_output(p)

    p = sub.add_parser("wavefunction", help="sampled R(r) and U(r)")
    p.add_argument("--D", type=_dimension, required=True)
    p.add_argument("--ell", type=_nonneg_int, default=0)
    p.add_argument("--nr", type=_nonneg_int, default=0)
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--mode", choices=(CORRECTED, AS_PRINTED), default=CORRECTED)
    p.add_argument("--r-grid", type=_r_grid, metavar="LO:HI:COUNT",
                   help="sample radii (default 200 points up to 10/alpha)")
    _add_units(p)
    _add_output(p)

    p = sub.add_parser("expectations", help="Hellmann-Feynman values with quadrature checks")
    p.add_argument("--D", type=_dimension, nargs="+", required=True)
    p.add_argument("--ell", type=_nonneg_int, nargs="+", default=[0])
    p.add_argument("--nr", type=_nonneg_int, nargs="+", default=[0])
    p.add_argument("--alpha", type=_positive, required=True)
    _add_units(p)
    _add_output(p)

    p = sub.add_parser("figure", help="data tables for figures 1-5")
    p.add_argument("--id", type=int, required=True, choices=(1, 2, 3, 4, 5))
    p.add_argument("--alpha", type=_positive, help="range parameter for figures 2-5")
    p.add_argument("--alpha-grid", type=_alpha_grid, metavar="LO:HI:COUNT",
                   help=f"figure 1 grid (default {FIGURE1_GRID})")
    p.add_argument("--D", type=_dimension, nargs="+", help="figure 1 dimensions")
    p.add_argument("--n", type=_nonneg_int, nargs="+", help="figure 1 principal numbers")
    p.add_argument("--mode", choices=(CORRECTED, AS_PRINTED), default=CORRECTED)
    p.add_argument("--r-grid", type=_r_grid, metavar="LO:HI:COUNT")
    _add_units(p)
    _add_output(p)

    p = sub.add_parser("validate", help="check the closed forms against the oracles")
    p.add_argument("--quick", action="store_true", help="skip the oracle sweeps")
    p.add_argument("--mode", choices=(CORRECTED, AS_PRINTED), default=CORRECTED)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out", metavar="PATH", help="write the JSON report here")
    return parser


# --- output ------------------------------------------------------------------------


def _render(schema: str, columns, rows, config, fmt) -> str:
    if fmt == "json":
        records = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps({"config": config, "records": records}, indent=2, sort_keys=True) + "\n"
    lines = [f"# ptd-{schema} schema v{SCHEMA_VERSION}", ",".join(columns)]
    lines += [",".join(format_number(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ptd-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _config(args) -> dict:
    """Echo of the options that determine the output (the output path is left out)."""
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key in ("out",):
            continue
        cfg[key] = value
    return cfg


def _params(args, alpha) -> PhysicalParams:
    return PhysicalParams(V0=args.V0, alpha=alpha, mu=args.mu, hbar=args.hbar)


def _alphas(args):
    return sorted(args.alpha_grid) if args.alpha_grid is not None else [args.alpha]


# --- commands ----------------------------------------------------------------------


def cmd_spectrum(args):
    rows = []
    if args.indexing == "principal":
        if args.n is None or args.ell is not None or args.nr is not None:
            raise UsageError("principal indexing takes --n (not --ell/--nr)")
        columns = ["D", "n", "alpha", "E", "bound"]
        for D in sorted(set(args.D)):
            for n in sorted(set(args.n)):
                for a in _alphas(args):
                    try:
                        E = energy_principal(_params(args, a), n, D)
                    except NoBoundStateError:
                        E = None
                    rows.append([D, n, a, E, E is not None])
    else:
        if args.n is not None or args.nr is None:
            raise UsageError("radial indexing takes --nr and optionally --ell (not --n)")
        ells = sorted(set(args.ell if args.ell is not None else [0]))
        columns = ["D", "ell", "n_r", "n", "alpha", "E", "bound"]
        for D in sorted(set(args.D)):
            for ell in ells:
                for n_r in sorted(set(args.nr)):
                    state = StateLabel(D, ell, n_r)
                    for a in _alphas(args):
                        try:
                            E = energy(_params(args, a), state).energy
                        except NoBoundStateError:
                            E = None
                        rows.append([D, ell, n_r, state.n, a, E, E is not None])
    return "spectra", columns, rows


def cmd_critical_alpha(args):
    rows = []
    for D in sorted(set(args.D)):
        for n in sorted(set(args.n)):
            try:
                a_c = critical_alpha(n, D, args.V0, args.mu, args.hbar)
            except DomainError as exc:
                raise DomainError(f"n={n}, D={D}: {exc}") from None
            rows.append([D, n, a_c])
    return "critical-alpha", ["D", "n", "alpha_c"], rows


def _require_bound(params, state):
    if not is_bound(params, state):
        msg = f"state {state} is unbound at alpha={params.alpha:g}"
        if (2 * state.n + state.D) ** 2 > 1:
            a_c = critical_alpha(state.n, state.D, params.V0, params.mu, params.hbar)
            msg += f" (critical alpha {a_c:.12g})"
        raise NoBoundStateError(msg, None)


def cmd_wavefunction(args):
    params = _params(args, args.alpha)
    state = StateLabel(args.D, args.ell, args.nr)
    _require_bound(params, state)
    sol = radial_solution(params, state, args.mode)
    r = np.asarray(args.r_grid if args.r_grid is not None else default_r_grid(args.alpha))
    if np.any(r <= 0):
        raise UsageError("--r-grid must be positive")
    R = radial_r(sol, r)
    U = hyperradial_u(sol, r)
    rows = [[ri, Ri, Ui] for ri, Ri, Ui in zip(r.tolist(), np.atleast_1d(R).tolist(),
                                               np.atleast_1d(U).tolist())]
    return "wavefunction", ["r", "R", "U"], rows


def cmd_expectations(args):
    params = _params(args, args.alpha)
    columns = ["D", "ell", "n_r", "alpha", "sinh_centrifugal_hft", "sinh_centrifugal_quad",
               "inv_r2_quad", "V_hft", "V_quad", "T", "T_quad", "E"]
    rows = []
    for D in sorted(set(args.D)):
        for ell in sorted(set(args.ell)):
            for n_r in sorted(set(args.nr)):
                state = StateLabel(D, ell, n_r)
                _require_bound(params, state)
                rep = expectation_report(params, state)

                def na(x):
                    return "n/a" if x is None else x

                rows.append([D, ell, n_r, args.alpha, na(rep.inv_r2_hft),
                             na(rep.sinh_centrifugal_quad), na(rep.inv_r2_quad),
                             rep.potential_hft, rep.potential_quad, rep.kinetic,
                             rep.kinetic_quad, rep.energy])
    return "expectations", columns, rows


def figure_alpha(fig_id: int, V0=1.0, mu=1.0, hbar=1.0) -> float:
    """0.5, or 0.8 of the critical value when 0.5 would leave the state unbound."""
    state = FIGURE_STATES[fig_id]
    if is_bound(PhysicalParams(V0, DEFAULT_FIGURE_ALPHA, mu, hbar), state):
        return DEFAULT_FIGURE_ALPHA
    return 0.8 * critical_alpha(state.n, state.D, V0, mu, hbar)


def cmd_figure(args):
    if args.id == 1:
        if args.alpha is not None:
            raise UsageError("figure 1 takes --alpha-grid, not --alpha")
        grid = args.alpha_grid if args.alpha_grid is not None else _alpha_grid(FIGURE1_GRID)
        D_list = args.D if args.D is not None else FIGURE1_D
        n_list = args.n if args.n is not None else FIGURE1_N
        table = figure1_data(sorted(set(D_list)), sorted(set(n_list)), grid,
                             args.V0, args.mu, args.hbar)
        rows = [[r.D, r.n, r.alpha, r.energy, r.bound] for r in table]
        return "spectra", ["D", "n", "alpha", "E", "bound"], rows
    if args.alpha_grid is not None or args.D is not None or args.n is not None:
        raise UsageError("figures 2-5 take only --alpha and --r-grid")
    state = FIGURE_STATES[args.id]
    alpha = args.alpha if args.alpha is not None else figure_alpha(args.id, args.V0, args.mu, args.hbar)
    args.alpha = alpha  # echoed in the config block
    params = _params(args, alpha)
    _require_bound(params, state)
    sol = radial_solution(params, state, args.mode)
    r = np.asarray(args.r_grid if args.r_grid is not None else default_r_grid(alpha))
    U = np.abs(np.atleast_1d(hyperradial_u(sol, r)))
    rows = [[state.D, state.ell, state.n_r, alpha, ri, ui] for ri, ui in zip(r.tolist(), U.tolist())]
    return "profile", ["D", "ell", "n_r", "alpha", "r", "abs_U"], rows


def cmd_validate(args):
    results = run_checks(quick=args.quick, mode=args.mode)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        value = "n/a" if r.value is None else format_number(r.value)
        print(f"[{status}] criterion {r.criterion}: {r.name} = {value} "
              f"(needs {r.relation} {format_number(r.tolerance)}) {r.detail}".rstrip(),
              file=sys.stderr)
    text = report_json(results, {"quick": args.quick, "mode": args.mode})
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "spectrum": cmd_spectrum,
    "critical-alpha": cmd_critical_alpha,
    "wavefunction": cmd_wavefunction,
    "expectations": cmd_expectations,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "validate":
            return cmd_validate(args)
        schema, columns, rows = COMMANDS[args.command](args)
        _emit(_render(schema, columns, rows, _config(args), args.format), args.out)
        return EXIT_OK
    except UsageError as exc:
        print(f"ptd {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoBoundStateError, DomainError, PTDError) as exc:
        print(f"ptd {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"ptd {args.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
