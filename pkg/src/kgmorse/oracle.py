"""Shooting solution of the exact radial Klein-Gordon equation.

Solves chi'' + W(r; E) chi = 0 with

    W = [(E - V_v)^2 - (mc2 + V_s)^2] / (hbar c)^2 - l(l+1)/r^2

for the shifted Morse potential, V_s = 0 or V_s = V_v.  Nothing here uses
the Pekeris coefficients or the analytic quantization condition, so the
energies are an independent check on the spectrum module.

The grid is uniform in t = ln r.  With chi = sqrt(r) phi the equation
becomes phi'' + (r^2 W - 1/4) phi = 0 in t, which Numerov's three-term
recurrence integrates outward from r_min (phi ~ r^(l+1/2)) and inward from
r_max (chi ~ exp(-kappa r)); the two are matched at ``match_point``.  The
log grid keeps the centrifugal term at constant strength and puts points
where the wavenumber is large.

With vector coupling only, (E - V)^2 exceeds mc2^2 again where the Morse
wall is higher than E + mc2, so the region near the origin is classically
allowed and the outward solution oscillates rapidly there.  Nodes are
counted beyond the barrier that separates this inner zone from the well
(the minimum of W without its centrifugal part, inside the match point),
and a root is kept only if W is positive somewhere beyond that barrier and
most of the norm sits there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .model import HBAR_C, Coupling, ModelParams, morse_potential

MISMATCH_THRESHOLD = 1e-3  # fm^-1, log-derivative mismatch allowed at a root
WELL_FRACTION = 0.5
_BIG = 1e150


class OracleError(ValueError):
    """Raised when a shot cannot be carried out."""


@dataclass(frozen=True)
class ShootingConfig:
    """Grid and search settings.

    ``step`` is the increment of ln r.  ``r_max=None`` means r_e + 30/a and
    ``match_point=None`` means r_e.
    """

    r_min: float = 1e-3
    r_max: float | None = None
    step: float = 0.0025
    match_point: float | None = None
    e_bracket_resolution: float = 0.5
    tolerance: float = 1e-6

    def resolved(self, p: ModelParams) -> "ShootingConfig":
        cfg = ShootingConfig(
            r_min=self.r_min,
            r_max=p.re + 30.0 / p.a if self.r_max is None else self.r_max,
            step=self.step,
            match_point=p.re if self.match_point is None else self.match_point,
            e_bracket_resolution=self.e_bracket_resolution,
            tolerance=self.tolerance,
        )
        if not 0.0 < cfg.r_min < cfg.match_point < cfg.r_max:
            raise ValueError("need 0 < r_min < match_point < r_max")
        if not (cfg.step > 0 and cfg.tolerance > 0 and cfg.e_bracket_resolution > 0):
            raise ValueError("step, tolerance and e_bracket_resolution must be positive")
        return cfg


@dataclass(frozen=True)
class OracleResult:
    n: int
    ell: int
    energy: float
    node_count: int
    log_derivative_mismatch: float


def effective_w(p: ModelParams, e, r):
    """Coefficient W of chi in chi'' + W chi = 0, in fm^-2."""
    r = np.asarray(r, dtype=float)
    v = morse_potential(p, r)
    vs = v if p.coupling is Coupling.EQUAL_SCALAR_VECTOR else 0.0
    out = ((e - v) ** 2 - (p.mc2 + vs) ** 2) / HBAR_C**2 - p.gamma / r**2
    return float(out) if np.ndim(out) == 0 else out


class _Grid:
    def __init__(self, p: ModelParams, cfg: ShootingConfig):
        h = cfg.step
        t0 = math.log(cfg.r_min)
        self.h = h
        self.ell = p.ell
        self.gamma = p.gamma
        self.size = int(round((math.log(cfg.r_max) - t0) / h)) + 1
        self.r = np.exp(t0 + h * np.arange(self.size))
        self.r2 = self.r**2
        self.im = int(round((math.log(cfg.match_point) - t0) / h))
        if not 2 <= self.im <= self.size - 3:
            raise OracleError("match point too close to the grid ends")
        self.v = morse_potential(p, self.r)
        vs = self.v if p.coupling is Coupling.EQUAL_SCALAR_VECTOR else 0.0
        self.s2 = (p.mc2 + vs) ** 2 * np.ones_like(self.r)

    def w(self, e):
        return ((e - self.v) ** 2 - self.s2) / HBAR_C**2 - self.gamma / self.r2

    def g(self, e):
        """r^2 W - 1/4, the coefficient in the t = ln r form."""
        return self.r2 * ((e - self.v) ** 2 - self.s2) / HBAR_C**2 - (self.gamma + 0.25)

    def seeds(self, kappa):
        """Outward phi ~ r^(l+1/2) and inward phi ~ e^{-kappa r}/sqrt(r) starting pairs."""
        out1 = math.exp((self.ell + 0.5) * self.h)
        in1 = np.exp(kappa * (self.r[-1] - self.r[-2]) + 0.5 * self.h)
        return 1.0, out1, 1.0, in1


def _numerov(f: list, y0: float, y1: float) -> list:
    """y[i+1] = ((12 - 10 f_i) y_i - f_{i-1} y_{i-1}) / f_{i+1}, f = 1 + h^2 g / 12."""
    y = [0.0] * len(f)
    y[0], y[1] = y0, y1
    for i in range(1, len(f) - 1):
        y[i + 1] = ((12.0 - 10.0 * f[i]) * y[i] - f[i - 1] * y[i - 1]) / f[i + 1]
        if abs(y[i + 1]) > _BIG:
            for j in range(i + 2):
                y[j] /= _BIG
    return y


@dataclass
class _Shot:
    log_mismatch: float
    angle_mismatch: float
    nodes: int
    well_fraction: float
    allowed: bool
    r: np.ndarray
    chi: np.ndarray


def _shoot(grid: _Grid, e: float) -> _Shot:
    h, im = grid.h, grid.im
    w = grid.w(e)
    if w[-1] >= 0.0:
        raise OracleError("W(r_max) >= 0: energy is not in a bound-state window")
    g = grid.g(e)
    if h * h * np.max(g) >= 6.0:
        raise OracleError("step too coarse for the local wavenumber (Numerov unstable)")
    f = (1.0 + (h * h / 12.0) * g).tolist()
    out0, out1, in0, in1 = grid.seeds(math.sqrt(-w[-1]))
    yo = _numerov(f[: im + 2], out0, out1)
    yi = _numerov(f[im - 1 :][::-1], in0, float(in1))[::-1]
    yo_m, dyo = yo[im], (yo[im + 1] - yo[im - 1]) / (2.0 * h)
    yi_m, dyi = yi[1], (yi[2] - yi[0]) / (2.0 * h)
    if not all(math.isfinite(v) for v in (yo_m, dyo, yi_m, dyi)) or yi_m == 0.0:
        raise OracleError("integration overflowed")

    # d ln chi / dr = (1/2 + d ln phi / dt) / r; the 1/2 cancels in the difference
    log_mismatch = float((dyo / yo_m - dyi / yi_m) / grid.r[im])
    angle = (yo_m * dyi - dyo * yi_m) / (math.hypot(yo_m, dyo) * math.hypot(yi_m, dyi))

    phi = np.concatenate([np.asarray(yo[:im]), (yo_m / yi_m) * np.asarray(yi[1:])])
    chi = np.sqrt(grid.r) * phi
    ib = int(np.argmin((w + grid.gamma / grid.r2)[: im + 1]))
    outer = chi[ib:]
    nz = outer[outer != 0.0]
    nodes = int(np.count_nonzero(np.signbit(nz[1:]) != np.signbit(nz[:-1])))
    # int chi^2 dr = int chi^2 r dt on the log grid
    dens = chi * chi * grid.r
    total = float(np.sum(dens))
    fraction = float(np.sum(dens[ib:]) / total) if total > 0 else 0.0
    allowed = bool(np.max(w[ib:]) > 0.0)
    return _Shot(log_mismatch, angle, nodes, fraction, allowed, grid.r, chi)


def shoot(p: ModelParams, cfg: ShootingConfig, e: float) -> tuple[float, int]:
    """Log-derivative mismatch (fm^-1) at the match point and the node count at ``e``.

    Raises ``OracleError`` if W(r_max) >= 0 or the integration blows up.
    """
    cfg = cfg.resolved(p)
    shot = _shoot(_Grid(p, cfg), float(e))
    return shot.log_mismatch, shot.nodes


def _batch_recurrence(f_at, indices, y0: np.ndarray, y1: np.ndarray):
    """Numerov over ``indices`` for many energies; returns the last three values."""
    fp, fc = f_at(indices[0]), f_at(indices[1])
    yold, ym, yc = y0, y0.copy(), y1.copy()
    for k in range(2, len(indices)):
        fn = f_at(indices[k])
        yn = ((12.0 - 10.0 * fc) * yc - fp * ym) / fn
        big = np.abs(yn) > _BIG
        if big.any():
            for arr in (yn, yc, ym, yold):
                arr[big] /= _BIG
        yold, ym, yc = ym, yc, yn
        fp, fc = fc, fn
    return yold, ym, yc


def _scan_angles(grid: _Grid, energies: np.ndarray) -> np.ndarray:
    """Angle mismatch for many energies at once, NaN where W(r_max) >= 0.

    Same recurrence and seeds as ``_shoot``, vectorized across energies.
    """
    h, im, n = grid.h, grid.im, grid.size
    e = np.asarray(energies, dtype=float)
    c = h * h / 12.0
    g_const = -(grid.gamma + 0.25)

    def f_at(i):
        return 1.0 + c * (grid.r2[i] * ((e - grid.v[i]) ** 2 - grid.s2[i]) / HBAR_C**2 + g_const)

    w_end = ((e - grid.v[-1]) ** 2 - grid.s2[-1]) / HBAR_C**2 - grid.gamma / grid.r2[-1]
    bound = w_end < 0.0
    out0, out1, in0, in1 = grid.seeds(np.sqrt(np.where(bound, -w_end, 0.0)))
    ones = np.ones_like(e)
    o_lo, o_m, o_hi = _batch_recurrence(f_at, range(0, im + 2), ones * out0, ones * out1)
    i_hi, i_m, i_lo = _batch_recurrence(f_at, range(n - 1, im - 2, -1), ones * in0, in1 * ones)
    dyo = (o_hi - o_lo) / (2.0 * h)
    dyi = (i_hi - i_lo) / (2.0 * h)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        angle = (o_m * dyi - dyo * i_m) / (np.hypot(o_m, dyo) * np.hypot(i_m, dyi))
    angle[~bound] = np.nan
    return angle


def _refine(grid: _Grid, lo: float, hi: float, tol: float) -> float:
    """Bracketed root of the angle mismatch (Brent's method keeps the bracket)."""
    return brentq(lambda e: _shoot(grid, e).angle_mismatch, lo, hi, xtol=tol)


def _roots_for_ell(p: ModelParams, cfg: ShootingConfig, n_max: int) -> list[OracleResult]:
    grid = _Grid(p, cfg)
    res = cfg.e_bracket_resolution
    count = int(math.ceil(2.0 * p.mc2 / res))
    energies = -p.mc2 + res * np.arange(1, count)
    energies = energies[energies < p.mc2]
    angles = _scan_angles(grid, energies)

    found: dict[tuple[bool, int], tuple[float, OracleResult]] = {}
    pos = angles > 0
    ok = np.isfinite(angles)
    for i in np.nonzero(ok[:-1] & ok[1:] & (pos[:-1] != pos[1:]))[0]:
        try:
            e = _refine(grid, float(energies[i]), float(energies[i + 1]), cfg.tolerance)
            shot = _shoot(grid, e)
        except OracleError:
            continue
        if not shot.allowed or shot.well_fraction < WELL_FRACTION:
            continue
        if abs(shot.log_mismatch) > MISMATCH_THRESHOLD or shot.nodes > n_max:
            continue
        key = (e > 0, shot.nodes)
        result = OracleResult(shot.nodes, p.ell, e, shot.nodes, shot.log_mismatch)
        # a second root with the same label keeps whichever lives more in the well
        if key not in found or found[key][0] < shot.well_fraction:
            found[key] = (shot.well_fraction, result)
    return [r for _, r in found.values()]


def oracle_spectrum(
    p: ModelParams, cfg: ShootingConfig | None = None, n_max: int = 5, ell_max: int = 3
) -> list[OracleResult]:
    """Bound states of the exact equation with node label n <= n_max, l <= ell_max.

    Scans the open window (-mc2, mc2) on ``cfg.e_bracket_resolution`` and
    refines each sign change to ``cfg.tolerance``.  Sorted by (l, n, energy).
    """
    if n_max < 0 or ell_max < 0:
        raise ValueError("n_max and ell_max must be nonnegative")
    cfg = (cfg or ShootingConfig()).resolved(p)
    results: list[OracleResult] = []
    for ell in range(ell_max + 1):
        results.extend(_roots_for_ell(p.with_(ell=ell), cfg, n_max))
    results.sort(key=lambda r: (r.ell, r.n, r.energy))
    return results
