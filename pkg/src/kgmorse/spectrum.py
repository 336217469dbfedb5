"""Analytic bound-state spectrum from the Pekeris-approximated equation.

With the quadratic replacement of the effective term the radial equation in
rho becomes

    rho^2 chi'' + rho chi' + (-b0^2 + b1 rho - b2^2 rho^2) chi = 0,

whose normalizable solutions exist when b1 / (2 b2) - b0 = n + 1/2.  The
left-hand side depends on the trial energy through b0, b1, b2, so the
eigenvalues are roots of a transcendental function that is scanned on a
uniform grid and refined by bisection.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .model import HBAR_C, ModelParams, PekerisCoefficients, pekeris_coefficients

logger = logging.getLogger(__name__)

SCAN_STEP = 0.01  # MeV
EDGE_GAP = 1e-6  # MeV, kept away from +-mc2 and from domain boundaries
ROOT_TOL = 1e-9  # MeV
_CHUNK = 1_000_000


class Branch(str, enum.Enum):
    PARTICLE = "particle"
    ANTIPARTICLE = "antiparticle"

    @classmethod
    def of_energy(cls, e: float) -> "Branch":
        return cls.PARTICLE if e > 0 else cls.ANTIPARTICLE


@dataclass(frozen=True)
class BetaSet:
    """Positive roots b0, b2 and the linear coefficient b1 at ``energy``."""

    beta0: float
    beta1: float
    beta2: float
    energy: float


@dataclass(frozen=True)
class BoundState:
    n: int
    ell: int
    energy: float
    branch: Branch
    betas: BetaSet

    @property
    def residual(self) -> float:
        b = self.betas
        return b.beta1 / (2.0 * b.beta2) - b.beta0 - (self.n + 0.5)


@dataclass(frozen=True)
class SweepRow:
    d0: float
    n: int
    ell: int
    branch: Branch
    energy: float


def _beta_squares(p: ModelParams, c: PekerisCoefficients, e):
    """Return (b0^2, b1, b2^2) for scalar or array energies."""
    s = (p.a * HBAR_C) ** 2
    al2 = c.alpha**2
    b0sq = (p.mc2**2 - e * e) / s - c.a0 / al2
    b1 = 4.0 * e * p.d0 / s + c.a1 / al2
    b2sq = (2.0 * e * p.d0 - 4.0 * p.d0**2) / s - c.a2 / al2
    return b0sq, b1, b2sq


def beta_set(p: ModelParams, c: PekerisCoefficients, e: float) -> Optional[BetaSet]:
    """Barred beta coefficients at energy ``e``.

    Returns ``None`` when either square is non-positive, i.e. the energy is
    outside the region where the Kummer-type solution is defined.
    """
    if not abs(e) <= p.mc2:
        raise ValueError(f"energy {e!r} outside [-mc2, mc2]")
    b0sq, b1, b2sq = _beta_squares(p, c, float(e))
    if b0sq <= 0.0 or b2sq <= 0.0:
        return None
    return BetaSet(beta0=math.sqrt(b0sq), beta1=b1, beta2=math.sqrt(b2sq), energy=float(e))


def quantization_residual(p: ModelParams, n: int, e: float) -> Optional[float]:
    """g(E) = b1/(2 b2) - b0 - (n + 1/2) at orbital number ``p.ell``; ``None`` off-domain."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = beta_set(p, pekeris_coefficients(p), e)
    if b is None:
        return None
    return b.beta1 / (2.0 * b.beta2) - b.beta0 - (n + 0.5)


def _lhs(p: ModelParams, c: PekerisCoefficients, e: np.ndarray) -> np.ndarray:
    """b1/(2 b2) - b0 on an energy array, NaN where undefined."""
    b0sq, b1, b2sq = _beta_squares(p, c, e)
    ok = (b0sq > 0) & (b2sq > 0)
    out = np.full(e.shape, np.nan)
    out[ok] = b1[ok] / (2.0 * np.sqrt(b2sq[ok])) - np.sqrt(b0sq[ok])
    return out


def scan_grid(mc2: float, step: float = SCAN_STEP) -> np.ndarray:
    """Uniform energy grid over [-mc2 + gap, mc2 - gap] including both ends."""
    lo, hi = -mc2 + EDGE_GAP, mc2 - EDGE_GAP
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    grid = lo + step * np.arange(count)
    if grid[-1] < hi:
        grid = np.append(grid, hi)
    return grid


def _brackets(p: ModelParams, c: PekerisCoefficients, n_values: Iterable[int], step: float):
    """List (n, lo, hi) for every sign change of g on the scan grid."""
    grid = scan_grid(p.mc2, step)
    n_values = list(n_values)
    found = []
    # chunks overlap by one point so no interval is lost at the seams
    for start in range(0, grid.size - 1, _CHUNK):
        e = grid[start : start + _CHUNK + 1]
        base = _lhs(p, c, e)
        for n in n_values:
            g = base - (n + 0.5)
            pos = g > 0
            defined = ~np.isnan(g)
            idx = np.nonzero(defined[:-1] & defined[1:] & (pos[:-1] != pos[1:]))[0]
            found.extend((n, float(e[i]), float(e[i + 1])) for i in idx)
    return found


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _states_for_ell(p: ModelParams, n_max: int, step: float) -> list[BoundState]:
    c = pekeris_coefficients(p)
    states: list[BoundState] = []
    for n, lo, hi in _brackets(p, c, range(n_max + 1), step):

        def g(e, n=n):
            b0sq, b1, b2sq = _beta_squares(p, c, e)
            return b1 / (2.0 * math.sqrt(b2sq)) - math.sqrt(b0sq) - (n + 0.5)

        try:
            root = _bisect(g, lo, hi, ROOT_TOL)
        except ValueError:
            # the bracket straddles a hole in the domain
            continue
        betas = beta_set(p, c, root)
        if betas is None or betas.beta1 <= 0.0:
            continue
        # roots hugging a domain edge are artifacts of the sign change of b0^2 or b2^2
        if beta_set(p, c, max(root - EDGE_GAP, -p.mc2)) is None:
            continue
        if beta_set(p, c, min(root + EDGE_GAP, p.mc2)) is None:
            continue
        if any(s.n == n and abs(s.energy - root) < 1e-6 for s in states):
            continue
        states.append(BoundState(n, p.ell, root, Branch.of_energy(root), betas))
    return states


def solve_spectrum(
    p: ModelParams, n_max: int = 5, ell_max: int = 3, step: float = SCAN_STEP
) -> list[BoundState]:
    """All analytic bound states with n <= n_max and l <= ell_max.

    ``p.ell`` is ignored; every orbital number from 0 to ``ell_max`` is
    solved.  The result is sorted by (l, n, energy) and holds both branches.
    """
    if n_max < 0 or ell_max < 0:
        raise ValueError("n_max and ell_max must be nonnegative")
    states: list[BoundState] = []
    for ell in range(ell_max + 1):
        states.extend(_states_for_ell(p.with_(ell=ell), n_max, step))
    states.sort(key=lambda s: (s.ell, s.n, s.energy))
    return states


def depth_sweep(
    p: ModelParams, d0_values: Iterable[float], n_max: int = 5, ell_max: int = 3
) -> list[SweepRow]:
    """Recompute the spectrum for each well depth.

    A depth whose solve fails contributes no rows; it is logged and skipped.
    """
    d0_values = [float(d) for d in d0_values]
    if any(not d > 0 for d in d0_values):
        raise ValueError("all depths must be positive")
    rows: list[SweepRow] = []
    for d0 in d0_values:
        try:
            states = solve_spectrum(p.with_(d0=d0), n_max, ell_max)
        except (ValueError, ArithmeticError) as exc:
            logger.warning("depth %g MeV skipped: %s", d0, exc)
            continue
        rows.extend(SweepRow(d0, s.n, s.ell, s.branch, s.energy) for s in states)
    return rows
