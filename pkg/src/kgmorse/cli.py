"""Command-line front end: emits CSV or JSON tables.

    kgmorse spectrum --nmax 2 --lmax 1
    kgmorse scan-potential --rmin 4 --rmax 14 --points 201
    kgmorse sweep-depth --d0-values 60,90,120
    kgmorse density --n 0 --l 0 --branch particle
    kgmorse validate --lmax 0 --nmax 1

Every flag may also come from a JSON file given with ``--config``; flags on
the command line win.  Exit status: 0 on success, 1 for invalid input,
2 when the requested states do not exist or validation fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Sequence

import numpy as np

from .model import Coupling, ModelParams, approx_effective_term, effective_term, morse_potential
from .model import pekeris_coefficients, rho_of_r
from .oracle import ShootingConfig, oracle_spectrum
from .spectrum import Branch, depth_sweep, solve_spectrum
from .wavefunction import build_profile, norm_domain

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INVALID, EXIT_MISSING = 0, 1, 2

DEFAULTS: dict[str, Any] = {
    "d0": 90.0,
    "re": 7.5,
    "a": 0.43,
    "mass": 280.0,
    "l": None,
    "nmax": 5,
    "lmax": 3,
    "coupling": "vector",
    "rmin": None,
    "rmax": None,
    "points": None,
    "format": "csv",
    "out": None,
    "n": 0,
    "branch": "particle",
    "d0_values": None,
    "bound": 5.0,
    "step": ShootingConfig.step,
}
DEFAULT_DEPTHS = [50.0 + 5.0 * i for i in range(17)]  # 50..130 MeV


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; here 2 means "nothing found"."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # None everywhere so that config-file values are only overridden by explicit flags
    common.add_argument("--config", help="JSON file with default values for any flag")
    common.add_argument("--d0", type=float, help="well depth D0 in MeV (90)")
    common.add_argument("--re", type=float, help="equilibrium distance in fm (7.5)")
    common.add_argument("--a", type=float, help="width parameter in 1/fm (0.43)")
    common.add_argument("--mass", type=float, help="rest-mass energy in MeV (280)")
    common.add_argument("--l", type=int, help="orbital quantum number")
    common.add_argument("--nmax", type=int, help="largest radial quantum number (5)")
    common.add_argument("--lmax", type=int, help="largest orbital quantum number (3)")
    common.add_argument("--coupling", choices=[c.value for c in Coupling])
    common.add_argument("--rmin", type=float, help="first radius of the output grid, fm")
    common.add_argument("--rmax", type=float, help="last radius of the output grid, fm")
    common.add_argument("--points", type=int, help="number of grid points")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", help="output file (default: standard output)")

    parser = _Parser(
        prog="kgmorse", description="Klein-Gordon bound states in a shifted Morse well."
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="analytic eigenvalues")
    sub.add_parser("scan-potential", parents=[common], help="exact vs quadratic effective term")
    sweep = sub.add_parser("sweep-depth", parents=[common], help="eigenvalues against D0")
    sweep.add_argument("--d0-values", dest="d0_values", help="comma-separated depths in MeV")
    dens = sub.add_parser("density", parents=[common], help="wavefunction and charge density")
    dens.add_argument("--n", type=int, help="radial quantum number (0)")
    dens.add_argument("--branch", choices=[b.value for b in Branch])
    val = sub.add_parser("validate", parents=[common], help="analytic vs shooting energies")
    val.add_argument("--bound", type=float, help="allowed |dE| in MeV (5)")
    val.add_argument("--step", type=float, help="shooting step in ln r")
    return parser


def _resolve(ns: argparse.Namespace) -> dict[str, Any]:
    opts = dict(DEFAULTS)
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        opts.update(loaded)
    for key in DEFAULTS:
        value = getattr(ns, key, None)
        if value is not None:
            opts[key] = value
    return opts


def _params(opts: dict[str, Any], ell: int = 0) -> ModelParams:
    return ModelParams(
        d0=float(opts["d0"]),
        a=float(opts["a"]),
        re=float(opts["re"]),
        mc2=float(opts["mass"]),
        ell=ell,
        coupling=Coupling(opts["coupling"]),
    )


def _nonneg(opts, key):
    value = int(opts[key])
    if value < 0:
        raise UsageError(f"--{key} must be nonnegative")
    return value


def _ell(opts, default: int) -> int:
    ell = default if opts["l"] is None else int(opts["l"])
    if ell < 0:
        raise UsageError("--l must be nonnegative")
    return ell


def cmd_spectrum(opts) -> tuple[list[str], list[list], int]:
    p = _params(opts)
    states = solve_spectrum(p, _nonneg(opts, "nmax"), _nonneg(opts, "lmax"))
    cols = ["n", "l", "branch", "E_MeV", "beta0", "beta1", "beta2", "residual"]
    rows = [
        [s.n, s.ell, s.branch.value, s.energy, s.betas.beta0, s.betas.beta1, s.betas.beta2, s.residual]
        for s in states
    ]
    return cols, rows, EXIT_OK if rows else EXIT_MISSING


def cmd_scan_potential(opts) -> tuple[list[str], list[list], int]:
    p = _params(opts, _ell(opts, 1))
    rmin = 4.0 if opts["rmin"] is None else float(opts["rmin"])
    rmax = 14.0 if opts["rmax"] is None else float(opts["rmax"])
    points = 201 if opts["points"] is None else int(opts["points"])
    if points < 1 or rmin <= 0 or rmax < rmin or (points > 1 and rmax == rmin):
        raise UsageError("need 0 < rmin < rmax and points >= 1 (rmin may equal rmax for one point)")
    r = np.linspace(rmin, rmax, points)
    c = pekeris_coefficients(p)
    u_exact = np.atleast_1d(effective_term(p, r))
    u_quad = np.atleast_1d(approx_effective_term(c, rho_of_r(p, r)))
    v = np.atleast_1d(morse_potential(p, r))
    cols = ["r_fm", "U_exact", "U_pekeris", "V_MeV"]
    return cols, [list(row) for row in zip(r, u_exact, u_quad, v)], EXIT_OK


def _depths(opts) -> list[float]:
    raw = opts["d0_values"]
    if raw is None:
        return list(DEFAULT_DEPTHS)
    if isinstance(raw, str):
        try:
            values = [float(x) for x in raw.split(",") if x.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --d0-values: {raw!r}") from exc
    else:
        values = [float(x) for x in raw]
    if not values or any(v <= 0 for v in values):
        raise UsageError("--d0-values must be a nonempty list of positive depths")
    return values


def cmd_sweep_depth(opts) -> tuple[list[str], list[list], int]:
    p = _params(opts)
    table = depth_sweep(p, _depths(opts), _nonneg(opts, "nmax"), _nonneg(opts, "lmax"))
    cols = ["D0_MeV", "n", "l", "branch", "E_MeV"]
    return cols, [[t.d0, t.n, t.ell, t.branch.value, t.energy] for t in table], EXIT_OK


def cmd_density(opts) -> tuple[list[str], list[list], int]:
    ell = _ell(opts, 0)
    n = _nonneg(opts, "n")
    branch = Branch(opts["branch"])
    p = _params(opts, ell)
    states = [
        s for s in solve_spectrum(p, n_max=n, ell_max=ell) if (s.n, s.ell, s.branch) == (n, ell, branch)
    ]
    if not states:
        print(f"no {branch.value} state with n={n}, l={ell}", file=sys.stderr)
        return [], [], EXIT_MISSING
    lo, hi = norm_domain(p)
    rmin = lo if opts["rmin"] is None else float(opts["rmin"])
    rmax = hi if opts["rmax"] is None else float(opts["rmax"])
    points = 2001 if opts["points"] is None else int(opts["points"])
    prof = build_profile(states[0], p, rmin, rmax, points)
    cols = ["r_fm", "chi", "u", "chi_sq", "u_sq", "rho_charge"]
    rows = [list(row) for row in zip(prof.r, prof.chi, prof.u, prof.chi_sq, prof.u_sq, prof.rho_charge)]
    return cols, rows, EXIT_OK


def cmd_validate(opts) -> tuple[list[str], list[list], int]:
    p = _params(opts)
    n_max, ell_max = _nonneg(opts, "nmax"), _nonneg(opts, "lmax")
    bound = float(opts["bound"])
    if bound < 0:
        raise UsageError("--bound must be nonnegative")
    oracle = oracle_spectrum(p, ShootingConfig(step=float(opts["step"])), n_max, ell_max)
    cols = ["n", "l", "branch", "E_analytic", "E_oracle", "abs_diff", "status", "note"]
    rows: list[list] = []
    if p.coupling is Coupling.EQUAL_SCALAR_VECTOR:
        for o in oracle:
            rows.append([o.n, o.ell, Branch.of_energy(o.energy).value, "n/a", o.energy, "n/a",
                         "oracle-only", "no analytic solution for equal coupling"])
        return cols, rows, EXIT_OK if rows else EXIT_MISSING

    analytic = {(s.n, s.ell, s.branch): s.energy for s in solve_spectrum(p, n_max, ell_max)}
    exact = {(o.n, o.ell, Branch.of_energy(o.energy)): o.energy for o in oracle}
    failed = False
    for key in sorted(set(analytic) | set(exact), key=lambda k: (k[1], k[0], k[2].value)):
        n, ell, branch = key
        ea, eo = analytic.get(key), exact.get(key)
        if ea is None or eo is None:
            failed = True
            note = "no analytic state" if ea is None else "no oracle state"
            rows.append([n, ell, branch.value, "n/a" if ea is None else ea,
                         "n/a" if eo is None else eo, "n/a", "fail", note])
            continue
        diff = abs(ea - eo)
        ok = diff <= bound
        failed |= not ok
        rows.append([n, ell, branch.value, ea, eo, diff, "pass" if ok else "fail", ""])
    return cols, rows, EXIT_MISSING if failed or not rows else EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "scan-potential": cmd_scan_potential,
    "sweep-depth": cmd_sweep_depth,
    "density": cmd_density,
    "validate": cmd_validate,
}


def _cell(value) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def render(cols: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    """Serialize a table; floats use repr, which round-trips exactly."""
    rows = [[_cell(v) for v in row] for row in rows]
    if fmt == "json":
        return json.dumps([dict(zip(cols, row)) for row in rows], indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    ns = _build_parser().parse_args(argv)
    try:
        opts = _resolve(ns)
        if opts["format"] not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        cols, rows, status = COMMANDS[ns.command](opts)
    except ValueError as exc:
        print(f"kgmorse: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not cols:
        return status
    text = render(cols, rows, opts["format"])
    if opts["out"]:
        with open(opts["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
