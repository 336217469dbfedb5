"""Terminating confluent hypergeometric function Phi(-n, b; z).

For a nonpositive integer first argument Kummer's series stops after n + 1
terms and is a degree-n polynomial in z.  Near its zeros the polynomial
suffers cancellation that costs several digits in plain double precision,
so the nested (Horner) evaluation below runs in double-double arithmetic
and only rounds to a float at the very end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul(xh, xl, yh, yl):
    p, e = _two_prod(xh, yh)
    e = e + (xh * yl + xl * yh)
    return _fast_two_sum(p, e)


def _dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    ph, pl = _dd_mul(q1, 0.0 * q1, yh, yl)
    rh, rl = _two_sum(xh, -ph)
    rl = rl - pl + xl
    q2 = (rh + rl) / yh
    return _fast_two_sum(q1, q2)


@dataclass(frozen=True)
class KummerPolynomial:
    """Phi(-n, b; z) as a polynomial of degree ``n`` with parameter ``b > 0``."""

    n: int
    b: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"degree n must be a nonnegative integer, got {self.n!r}")
        if not self.b > 0:
            raise ValueError(f"second parameter b must be positive, got {self.b!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "b", float(self.b))

    def __call__(self, z):
        return kummer_eval(self, z)

    def coefficients(self) -> np.ndarray:
        """Power-series coefficients c_0..c_n (float precision)."""
        c = np.empty(self.n + 1)
        c[0] = 1.0
        for k in range(self.n):
            c[k + 1] = c[k] * (k - self.n) / ((self.b + k) * (k + 1))
        return c


def kummer_eval(k: KummerPolynomial, z):
    """Evaluate sum_{j<=n} (-n)_j / (b)_j z^j / j!.

    Uses the nested form ``1 + t_0 (1 + t_1 (1 + ...))`` with
    ``t_j = (j - n) z / ((b + j)(j + 1))``, which is Horner's rule on the
    coefficient recurrence.  Works elementwise on arrays.
    """
    z = np.asarray(z, dtype=float)
    n, b = k.n, k.b
    acc_h = np.ones_like(z)
    acc_l = np.zeros_like(z)
    for j in range(n - 1, -1, -1):
        # t_j in double-double: exact numerator, exactly-formed denominator
        num_h, num_l = _two_prod(float(j - n), z)
        den_h, den_l = _two_sum(b, float(j))
        den_h, den_l = _dd_mul(den_h, den_l, float(j + 1), 0.0)
        t_h, t_l = _dd_div(num_h, num_l, den_h, den_l)
        acc_h, acc_l = _dd_mul(acc_h, acc_l, t_h, t_l)
        s, e = _two_sum(1.0, acc_h)
        acc_h, acc_l = _fast_two_sum(s, e + acc_l)
    out = acc_h + acc_l
    return float(out) if out.ndim == 0 else out


def kummer_roots(k: KummerPolynomial) -> np.ndarray:
    """Real zeros of the polynomial, ascending."""
    if k.n == 0:
        return np.empty(0)
    roots = np.roots(k.coefficients()[::-1])
    return np.sort(roots.real[np.abs(roots.imag) < 1e-9 * np.maximum(1.0, np.abs(roots))])
