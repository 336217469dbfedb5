"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import subprocess
import sys
import time

import mpmath as mp
import numpy as np
import pytest

from kgmorse.kummer import KummerPolynomial, kummer_eval
from kgmorse.model import HBAR_C, Coupling, ModelParams, pekeris_coefficients
from kgmorse.oracle import ShootingConfig, oracle_spectrum
from kgmorse.spectrum import Branch, solve_spectrum
from kgmorse.wavefunction import build_profile, count_nodes

REF = ModelParams(d0=90.0, a=0.43, re=7.5, mc2=280.0)
EQUAL = REF.with_(coupling=Coupling.EQUAL_SCALAR_VECTOR)

# first calibration run of the oracle at ell = 0 (MeV); bound is twice the gap, capped at 5
MEASURED_GAP = {0: 1.416, 1: 4.835}


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


@pytest.fixture(scope="module")
def spectrum():
    return solve_spectrum(REF, n_max=5, ell_max=3)


def test_criterion_01_particle_window(report):
    t0 = time.perf_counter()
    states = solve_spectrum(REF, n_max=5, ell_max=3)
    elapsed = time.perf_counter() - t0
    particle = [s for s in states if s.branch is Branch.PARTICLE]
    outside = [(s.n, s.ell, round(s.energy, 4)) for s in particle if not 178.0 < s.energy < 272.0]
    ok = bool(particle) and not outside and elapsed < 1.0
    lo, hi = min(s.energy for s in particle), max(s.energy for s in particle)
    detail = f"{len(particle)} particle states in [{lo:.3f}, {hi:.3f}] MeV, {elapsed:.3f} s"
    if outside:
        detail += f"; outside (178, 272): {outside}"
    assert report(1, ok, detail)


def test_criterion_02_antiparticle_window(report, spectrum):
    anti = [s for s in spectrum if s.branch is Branch.ANTIPARTICLE]
    outside = [(s.n, s.ell, s.energy) for s in anti if not -13.5 < s.energy < -3.5]
    detail = f"{len(anti)} antiparticle states found"
    if not anti:
        detail += " (holds vacuously; see criterion 10 for the missing |00> antiparticle)"
    if outside:
        detail += f"; outside (-13.5, -3.5): {outside}"
    assert report(2, not outside, detail)


def test_criterion_03_bound_window(report, spectrum):
    worst = max(abs(s.energy) for s in spectrum)
    ok = bool(spectrum) and worst < REF.mc2
    assert report(3, ok, f"{len(spectrum)} states, max |E| = {worst:.4f} MeV < 280")


def test_criterion_04_equal_coupling_ground_state(report):
    t0 = time.perf_counter()
    results = oracle_spectrum(EQUAL, n_max=5, ell_max=0)
    elapsed = time.perf_counter() - t0
    ground = [r for r in results if r.n == 0 and r.node_count == 0]
    energy = ground[0].energy if ground else float("nan")
    ok = bool(ground) and abs(energy - 310.0) <= 10.0 and elapsed < 5.0
    found = ", ".join(f"n={r.n}: {r.energy:.3f}" for r in results)
    assert report(4, ok, f"nodeless l=0 state at {energy:.3f} MeV (target 310 +- 10), {elapsed:.2f} s; all: {found}")


def test_criterion_05_oracle_agreement(report, spectrum):
    results = oracle_spectrum(REF, n_max=1, ell_max=0)
    parts, ok = [], True
    for n in (0, 1):
        analytic = [s.energy for s in spectrum if (s.n, s.ell, s.branch) == (n, 0, Branch.PARTICLE)]
        exact = [r.energy for r in results if r.n == n and r.energy > 0]
        if not analytic or not exact:
            ok = False
            parts.append(f"n={n}: missing")
            continue
        gap = abs(analytic[0] - exact[0])
        bound = min(5.0, 2.0 * MEASURED_GAP[n])
        ok &= gap <= bound
        parts.append(f"n={n}: |dE| = {gap:.4f} MeV (bound {bound:.3f})")
    assert report(5, ok, "; ".join(parts))


def _stencil(f, h):
    """Value, first and second central differences at 0."""
    return f(0), (f(h) - f(-h)) / (2 * h), (f(h) - 2 * f(0) + f(-h)) / h**2


def test_criterion_06_pekeris_third_order(report):
    # the stencil runs in 40-digit arithmetic: in doubles the second difference at
    # h = 1e-5 carries roundoff of order eps / h^2 ~ 2e-6, above the tolerance itself
    rng = np.random.default_rng(20240606)
    worst = 0.0
    with mp.workdps(40):
        h = mp.mpf("1e-5")
        for _ in range(50):
            p = ModelParams(
                d0=float(rng.uniform(10.0, 200.0)),
                a=float(rng.uniform(0.2, 1.0)),
                re=float(rng.uniform(2.0, 10.0)),
                ell=int(rng.integers(0, 6)),
            )
            c = pekeris_coefficients(p)
            al = mp.mpf(p.a) * mp.mpf(p.re)
            dd = (mp.mpf(p.d0) * mp.mpf(p.re) / mp.mpf(HBAR_C)) ** 2
            u = lambda x: dd * mp.exp(-4 * al * x) - 4 * dd * mp.exp(-3 * al * x) - p.gamma / (1 + x) ** 2  # noqa: E731
            ub = lambda x: mp.mpf(c.a0) + mp.mpf(c.a1) * mp.exp(-al * x) + mp.mpf(c.a2) * mp.exp(-2 * al * x)  # noqa: E731
            for e, q in zip(_stencil(u, h), _stencil(ub, h)):
                worst = max(worst, float(abs(e - q) / abs(e)))
    assert report(6, worst < 1e-6, f"max relative deviation over 50 sets x 3 orders = {worst:.2e}")


def test_criterion_07_kummer(report):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(0, 7))
        b = float(rng.uniform(0.5, 20.0))
        z = float(rng.uniform(0.0, 10.0))
        with mp.workdps(50):
            exact = mp.fsum(
                mp.rf(-n, k) / mp.rf(mp.mpf(b), k) * mp.mpf(z) ** k / mp.factorial(k) for k in range(n + 1)
            )
            got = kummer_eval(KummerPolynomial(n, b), z)
            worst = max(worst, float(abs(got - exact) / abs(exact)))
    at_zero = all(kummer_eval(KummerPolynomial(n, b), 0.0) == 1.0 for n in range(7) for b in (0.5, 3.3, 19.9))
    ok = worst < 1e-12 and at_zero
    assert report(7, ok, f"max relative error {worst:.2e} over 200 cases; Phi(-n, b; 0) == 1: {at_zero}")


def test_criterion_08_node_theorem(report, spectrum):
    bad = []
    for s in spectrum:
        nodes = count_nodes(build_profile(s, REF.with_(ell=s.ell)))
        if nodes != s.n:
            bad.append((s.n, s.ell, s.branch.value, nodes))
    ok = bool(spectrum) and not bad
    assert report(8, ok, f"{len(spectrum)} states checked; mismatches: {bad or 'none'}")


def test_criterion_09_nonrelativistic_limit(report):
    p = ModelParams(mc2=5e4, d0=5.0, a=0.43, re=7.5)
    states = {s.n: s.energy for s in solve_spectrum(p, n_max=1, ell_max=0) if s.branch is Branch.PARTICLE}
    hw = HBAR_C * p.a * math.sqrt(2 * p.d0 / p.mc2)
    parts, ok = [], True
    for n in (0, 1):
        k = n + 0.5
        nr = -p.d0 + hw * k - (HBAR_C * p.a) ** 2 / (2 * p.mc2) * k * k
        if n not in states:
            ok = False
            parts.append(f"n={n}: missing")
            continue
        rel = abs((states[n] - p.mc2 - nr) / nr)
        ok &= rel < 0.01
        parts.append(f"n={n}: {states[n] - p.mc2:.6f} vs {nr:.6f} MeV (rel {rel:.1e})")
    assert report(9, ok, "; ".join(parts))


def test_criterion_10_density_maxima(report, spectrum):
    def peak(branch):
        s = [x for x in spectrum if (x.n, x.ell, x.branch) == (0, 0, branch)]
        if not s:
            return None
        prof = build_profile(s[0], REF)
        return float(prof.r[np.argmax(prof.u_sq)])

    rp, ra = peak(Branch.PARTICLE), peak(Branch.ANTIPARTICLE)
    if rp is None or ra is None:
        ok = False
        detail = f"particle |00> max at {rp} fm; antiparticle |00> state {'missing' if ra is None else ra}"
    else:
        ok = ra < rp and abs(rp - REF.re) <= 1.5 and abs(ra - REF.re) <= 1.5
        detail = f"particle max {rp:.3f} fm, antiparticle max {ra:.3f} fm"
    assert report(10, ok, detail)


def test_criterion_11_oracle_step_halving(report):
    worst, parts, ok = 0.0, [], True
    for label, p in (("vector", REF), ("equal", EQUAL)):
        cfg = ShootingConfig()
        coarse = oracle_spectrum(p, cfg)
        fine = oracle_spectrum(p, ShootingConfig(step=cfg.step / 2))
        key = lambda r: (r.ell, r.n, r.energy > 0)  # noqa: E731
        a, b = {key(r): r.energy for r in coarse}, {key(r): r.energy for r in fine}
        if set(a) != set(b) or not a:
            ok = False
            parts.append(f"{label}: state sets differ")
            continue
        change = max(abs(a[k] - b[k]) for k in a)
        worst = max(worst, change)
        parts.append(f"{label}: {len(a)} states, max change {change:.2e} MeV")
    ok &= worst < 0.01
    assert report(11, ok, "; ".join(parts))


def test_criterion_12_cli_determinism(report, tmp_path):
    config = tmp_path / "run.json"
    config.write_text('{"nmax": 1, "lmax": 1}')
    commands = [
        ["spectrum"],
        ["scan-potential"],
        ["sweep-depth", "--d0-values", "80,90"],
        ["density", "--n", "1", "--l", "1"],
        ["validate", "--lmax", "0"],
        ["spectrum", "--format", "json"],
    ]
    differing = []
    for cmd in commands:
        outputs = []
        for run in range(2):
            target = tmp_path / f"out{run}"
            subprocess.run(
                [sys.executable, "-m", "kgmorse", *cmd, "--config", str(config), "--out", str(target)],
                check=False,
            )
            outputs.append(target.read_bytes())
        if outputs[0] != outputs[1] or not outputs[0]:
            differing.append(cmd[0])
    ok = not differing
    assert report(12, ok, f"{len(commands)} commands run twice; differing: {differing or 'none'}")
