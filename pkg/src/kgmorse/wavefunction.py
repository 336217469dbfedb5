"""Radial wavefunctions and charge densities of the analytic bound states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kummer import KummerPolynomial, kummer_eval
from .model import ModelParams, rho_of_r
from .spectrum import BoundState, Branch

NORM_POINTS = 20001
COVERAGE = 0.999


@dataclass(frozen=True)
class RadialProfile:
    """Normalized radial functions of one state on a uniform r grid (fm).

    ``rho_charge`` is the signed density (|E|/mc2) |u|^2 in units of e fm^-3,
    positive for particles and negative for antiparticles.
    """

    r: np.ndarray
    chi: np.ndarray
    u: np.ndarray
    rho_charge: np.ndarray
    state: BoundState

    @property
    def chi_sq(self) -> np.ndarray:
        return self.chi**2

    @property
    def u_sq(self) -> np.ndarray:
        return self.u**2


def norm_domain(p: ModelParams) -> tuple[float, float]:
    return max(1e-3, p.re - 15.0 / p.a), p.re + 25.0 / p.a


def build_chi(state: BoundState, p: ModelParams, r):
    """Unnormalized chi = rho^b0 exp(-b2 rho) Phi(-n, 2 b0 + 1; 2 b2 rho)."""
    b = state.betas
    rho = rho_of_r(p, r)
    poly = KummerPolynomial(state.n, 2.0 * b.beta0 + 1.0)
    # rho^b0 e^{-b2 rho} written as one exponential to keep the far tail finite
    envelope = np.exp(b.beta0 * np.log(rho) - b.beta2 * rho)
    out = envelope * kummer_eval(poly, 2.0 * b.beta2 * rho)
    return float(out) if np.ndim(out) == 0 else out


def _charge_sign(state: BoundState) -> float:
    return 1.0 if state.branch is Branch.PARTICLE else -1.0


def _assemble(state: BoundState, p: ModelParams, r: np.ndarray, chi: np.ndarray) -> RadialProfile:
    u = chi / r
    scale = abs(state.energy) / p.mc2
    rho_charge = _charge_sign(state) * scale * u**2
    return RadialProfile(r=r, chi=chi, u=u, rho_charge=rho_charge, state=state)


def build_profile(
    state: BoundState,
    p: ModelParams,
    r_min: float | None = None,
    r_max: float | None = None,
    n_points: int = NORM_POINTS,
) -> RadialProfile:
    """Normalized profile on ``n_points`` uniform points in [r_min, r_max].

    Defaults to the normalization window [max(1e-3, r_e - 15/a), r_e + 25/a].
    Raises ``ValueError`` if the grid holds less than 99.9 % of the norm found
    on that window, i.e. if it misses where the state lives.
    """
    lo, hi = norm_domain(p)
    r_min = lo if r_min is None else float(r_min)
    r_max = hi if r_max is None else float(r_max)
    if not 0.0 < r_min < r_max:
        raise ValueError(f"need 0 < r_min < r_max, got {r_min}, {r_max}")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")

    r_ext = np.linspace(lo, hi, NORM_POINTS)
    total = np.trapezoid(build_chi(state, p, r_ext) ** 2, r_ext)

    r = np.linspace(r_min, r_max, int(n_points))
    chi = np.asarray(build_chi(state, p, r))
    captured = np.trapezoid(chi**2, r)
    if captured < COVERAGE * total:
        raise ValueError(
            f"grid [{r_min}, {r_max}] fm holds only {captured / total:.4%} of the state's norm"
        )
    return _assemble(state, p, r, chi / np.sqrt(captured))


def renormalize(profile: RadialProfile, p: ModelParams) -> RadialProfile:
    """Rescale chi to unit trapezoid norm on the profile's own grid."""
    chi = profile.chi / np.sqrt(np.trapezoid(profile.chi**2, profile.r))
    return _assemble(profile.state, p, profile.r, chi)


def count_nodes(profile: RadialProfile) -> int:
    """Number of strict interior sign changes of chi.

    Exact zeros on grid points are skipped.  Raises ``ValueError`` when two
    sign changes lie within two grid steps, since the grid cannot then
    resolve the node structure.
    """
    chi = profile.chi
    idx = np.nonzero(chi != 0.0)[0]
    signs = np.signbit(chi[idx])
    flips = idx[1:][signs[1:] != signs[:-1]]
    if flips.size > 1 and np.min(np.diff(flips)) <= 2:
        raise ValueError("grid too coarse to separate consecutive nodes")
    return int(flips.size)


__all__ = [
    "RadialProfile",
    "build_chi",
    "build_profile",
    "count_nodes",
    "norm_domain",
    "renormalize",
]
