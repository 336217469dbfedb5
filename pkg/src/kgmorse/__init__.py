"""Bound states of a spin-0 particle in a shifted Morse oscillator (Klein-Gordon)."""

from .kummer import KummerPolynomial, kummer_eval
from .model import (
    HBAR_C,
    Coupling,
    ModelParams,
    PekerisCoefficients,
    approx_effective_term,
    effective_term,
    morse_potential,
    pekeris_coefficients,
)
from .oracle import OracleResult, ShootingConfig, effective_w, oracle_spectrum, shoot
from .spectrum import (
    BetaSet,
    BoundState,
    Branch,
    beta_set,
    depth_sweep,
    quantization_residual,
    solve_spectrum,
)
from .wavefunction import RadialProfile, build_chi, build_profile, count_nodes

__all__ = [
    "HBAR_C",
    "OracleResult",
    "RadialProfile",
    "ShootingConfig",
    "build_chi",
    "build_profile",
    "count_nodes",
    "effective_w",
    "oracle_spectrum",
    "shoot",
    "BetaSet",
    "BoundState",
    "Branch",
    "Coupling",
    "KummerPolynomial",
    "ModelParams",
    "PekerisCoefficients",
    "approx_effective_term",
    "beta_set",
    "depth_sweep",
    "effective_term",
    "kummer_eval",
    "morse_potential",
    "pekeris_coefficients",
    "quantization_residual",
    "solve_spectrum",
]
