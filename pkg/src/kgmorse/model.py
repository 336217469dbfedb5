"""Shifted Morse oscillator: parameters, potential and the effective radial term.

Units are MeV for energies and fm for lengths throughout.  The radial
Klein-Gordon equation is written in the Morse variable

    x = (r - r_e) / r_e,        rho = exp(-a r_e x) = exp(-a (r - r_e)),

in which the terms that are not quadratic in rho are collected into

    U(r) = D rho^4 - 4 D rho^3 - l(l+1) / (1 + x)^2,   D = D0^2 r_e^2 / (hbar c)^2.

The Pekeris-type replacement ``U ~ A0 + A1 rho + A2 rho^2`` matches U in
value, slope and curvature at r = r_e.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

HBAR_C = 197.3269804  # MeV fm


class Coupling(str, enum.Enum):
    """How the Morse potential enters the Klein-Gordon equation."""

    VECTOR_ONLY = "vector"
    EQUAL_SCALAR_VECTOR = "equal"


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs of the relativistic Morse problem.

    Parameters
    ----------
    d0 : float
        Well depth D0 in MeV.
    a : float
        Width parameter in fm^-1.
    re : float
        Equilibrium distance in fm.
    mc2 : float
        Rest-mass energy m0 c^2 in MeV.
    ell : int
        Orbital quantum number.
    coupling : Coupling
        ``VECTOR_ONLY`` (V_s = 0) or ``EQUAL_SCALAR_VECTOR`` (V_s = V_v).
    """

    d0: float = 90.0
    a: float = 0.43
    re: float = 7.5
    mc2: float = 280.0
    ell: int = 0
    coupling: Coupling = Coupling.VECTOR_ONLY

    def __post_init__(self) -> None:
        for name in ("d0", "a", "re", "mc2"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if int(self.ell) != self.ell or self.ell < 0:
            raise ValueError(f"ell must be a nonnegative integer, got {self.ell!r}")
        object.__setattr__(self, "ell", int(self.ell))
        object.__setattr__(self, "coupling", Coupling(self.coupling))

    @property
    def alpha(self) -> float:
        return self.a * self.re

    @property
    def gamma(self) -> int:
        return self.ell * (self.ell + 1)

    @property
    def dcap(self) -> float:
        """Dimensionless strength D = D0^2 r_e^2 / (hbar c)^2."""
        return (self.d0 * self.re / HBAR_C) ** 2

    def with_(self, **changes) -> "ModelParams":
        """Copy with some fields replaced."""
        fields = dict(
            d0=self.d0, a=self.a, re=self.re, mc2=self.mc2, ell=self.ell, coupling=self.coupling
        )
        fields.update(changes)
        return ModelParams(**fields)


@dataclass(frozen=True)
class PekerisCoefficients:
    a0: float
    a1: float
    a2: float
    gamma: float
    alpha: float
    dcap: float


def rho_of_r(p: ModelParams, r):
    return np.exp(-p.a * (np.asarray(r, dtype=float) - p.re))


def morse_potential(p: ModelParams, r):
    """Shifted Morse potential D0 (1 - e^{-a(r - r_e)})^2 - D0 in MeV.

    Accepts scalars or arrays; the minimum -D0 sits at r = r_e and the
    potential tends to zero as r grows.
    """
    r = np.asarray(r, dtype=float)
    out = p.d0 * (-np.expm1(-p.a * (r - p.re))) ** 2 - p.d0
    return float(out) if out.ndim == 0 else out


def effective_term(p: ModelParams, r):
    """Exact U(r) = D rho^4 - 4 D rho^3 - l(l+1)/(1+x)^2 (dimensionless)."""
    r = np.asarray(r, dtype=float)
    rho = rho_of_r(p, r)
    one_plus_x = r / p.re
    out = p.dcap * rho**3 * (rho - 4.0) - p.gamma / one_plus_x**2
    return float(out) if out.ndim == 0 else out


def pekeris_coefficients(p: ModelParams) -> PekerisCoefficients:
    g, al, d = p.gamma, p.alpha, p.dcap
    al2 = al * al
    a0 = (3 * g * al - g * al2 - 3 * g) / al2 - d
    a1 = (6 * g - 4 * g * al) / al2 + 4 * d
    a2 = (g * al - 3 * g) / al2 - 6 * d
    return PekerisCoefficients(a0=a0, a1=a1, a2=a2, gamma=g, alpha=al, dcap=d)


def approx_effective_term(c: PekerisCoefficients, rho):
    """Quadratic replacement A0 + A1 rho + A2 rho^2."""
    rho = np.asarray(rho, dtype=float)
    out = c.a0 + rho * (c.a1 + rho * c.a2)
    return float(out) if out.ndim == 0 else out
