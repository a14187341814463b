"""Appell F1 by double series and Euler integral, with the Picard and K integrals.

Two independent evaluation routes are kept deliberately separate: the
series route takes jet arguments and carries partials, the quadrature
route integrates the Euler representation with Gauss-Jacobi rules whose
endpoint exponents match the integrand exactly.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.special

from .jets import Jet

SERIES_CAP = 10_000


def gamma(z) -> complex:
    """Complex gamma; rejects the poles explicitly."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == int(z.real):
        raise ValueError(f"gamma pole at {z}")
    return complex(scipy.special.gamma(z))


def _as_fraction(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    return None


class F1Params:
    """Parameters (a; b, b'; c); rationals accepted as int, Fraction or 'p/q'."""

    __slots__ = ("a", "b", "bprime", "c")

    def __init__(self, a, b, bprime, c):
        self.a, self.b, self.bprime, self.c = (
            complex(_as_fraction(v)) if _as_fraction(v) is not None else complex(v)
            for v in (a, b, bprime, c)
        )

    def require_series_ok(self):
        c = self.c
        if c.imag == 0 and c.real <= 0 and c.real == int(c.real):
            raise ValueError("c must not be a nonpositive integer")

    def require_euler_ok(self):
        if not (self.c.real > self.a.real > 0):
            raise ValueError("Euler integral needs Re(c) > Re(a) > 0")

    def __repr__(self):
        return f"F1Params(a={self.a}, b={self.b}, bprime={self.bprime}, c={self.c})"


class QuadratureSpec:
    """Gauss-Jacobi rule on (0, 1): exponents (alpha at t=1, beta at t=0)."""

    __slots__ = ("nodes", "tol", "exponents")

    def __init__(self, nodes: int = 160, tol: float = 1e-9, exponents=None):
        if nodes < 8:
            raise ValueError("node count must be >= 8")
        if exponents is not None:
            alpha, beta = exponents
            if alpha <= -1 or beta <= -1:
                raise ValueError("endpoint exponents must exceed -1")
        self.nodes = int(nodes)
        self.tol = float(tol)
        self.exponents = exponents


@lru_cache(maxsize=64)
def _jacobi_rule(n: int, alpha: float, beta: float):
    """Nodes on (0,1), weights, and the 2^-(alpha+beta+1) interval factor."""
    with np.errstate(invalid="ignore", divide="ignore"):
        # alpha + beta = -1 hits a discarded 0/0 branch inside the recurrence
        s, w = scipy.special.roots_jacobi(n, alpha, beta)
    t = (1.0 + s) / 2.0
    return t, w, 2.0 ** (-(alpha + beta + 1.0))


def _quad(g, alpha: float, beta: float, spec: QuadratureSpec | None) -> complex:
    """Integral over (0,1) of t^beta (1-t)^alpha g(t)."""
    spec = spec or QuadratureSpec()
    if spec.exponents is not None:
        alpha, beta = spec.exponents
    t, w, factor = _jacobi_rule(spec.nodes, float(alpha), float(beta))
    return complex(factor * np.sum(w * g(t)))


def _ppow(base, p):
    """Principal branch base**p for array or scalar complex base."""
    return np.exp(p * np.log(np.asarray(base, dtype=np.complex128)))


def f1_series(p: F1Params, x, y, tol: float = 1e-12):
    """Double series sum_{m,n} (a)_{m+n} (b)_m (b')_n / ((c)_{m+n} m! n!) x^m y^n.

    x, y may be complex numbers or jets with |constant term| < 1; in the jet
    case the result is a jet carrying all partials. Anti-diagonal terms are
    accumulated with coefficient recurrences; summation stops once three
    consecutive anti-diagonals each contribute below tol relative to the
    partial sum, with a hard cap on the term count.
    """
    p.require_series_ok()
    jets_in = isinstance(x, Jet) or isinstance(y, Jet)
    if jets_in:
        proto = x if isinstance(x, Jet) else y
        if not isinstance(x, Jet):
            x = Jet.constant(proto.dim, proto.order, x)
        if not isinstance(y, Jet):
            y = Jet.constant(proto.dim, proto.order, y)
    else:
        x = Jet.constant(1, 0, x)
        y = Jet.constant(1, 0, y)
    if abs(x.value) >= 1 or abs(y.value) >= 1:
        raise ValueError("series needs |x|, |y| < 1 at the base point")

    a, b, bp, c = p.a, p.b, p.bprime, p.c
    one = Jet.constant(x.dim, x.order, 1.0)
    x_pows, y_pows = [one], [one]

    def pw(pows, base, k):
        while len(pows) <= k:
            pows.append(pows[-1] * base)
        return pows[k]

    total = one.copy()  # (m, n) = (0, 0) term
    coeff_row = [1.0 + 0.0j]  # C_{m, d-m} along the current anti-diagonal
    terms = 1
    quiet = 0
    d = 0
    while quiet < 3:
        d += 1
        new_row = []
        # C_{0, d} from C_{0, d-1}; C_{m, d-m} from C_{m-1, d-m} for m >= 1
        nn = d - 1
        new_row.append(coeff_row[0] * (a + nn) * (bp + nn) / ((c + nn) * (nn + 1)))
        for m in range(1, d + 1):
            n = d - m
            new_row.append(coeff_row[m - 1] * (a + d - 1) * (b + m - 1) / ((c + d - 1) * m))
        block = Jet(x.dim, x.order)
        for m, cmn in enumerate(new_row):
            if cmn == 0:
                continue
            block = block + cmn * (pw(x_pows, x, m) * pw(y_pows, y, d - m))
        total = total + block
        terms += d + 1
        scale = max(total.max_abs(), 1e-300)
        quiet = quiet + 1 if block.max_abs() < tol * scale else 0
        if terms > SERIES_CAP:
            raise RuntimeError(f"series did not settle within {SERIES_CAP} terms")
        coeff_row = new_row
    return total if jets_in else total.value


def f1_euler(p: F1Params, x, y, spec: QuadratureSpec | None = None) -> complex:
    """Euler integral Gamma(c)/(Gamma(a)Gamma(c-a)) int_0^1 t^{a-1}(1-t)^{c-a-1}(1-tx)^{-b}(1-ty)^{-b'} dt."""
    p.require_euler_ok()
    a, b, bp, c = p.a, p.b, p.bprime, p.c
    alpha = (c - a - 1).real
    beta = (a - 1).real

    def g(t):
        out = _ppow(1 - t * x, -b) * _ppow(1 - t * y, -bp)
        if a.imag != 0:
            out = out * _ppow(t, 1j * a.imag)
        if (c - a).imag != 0:
            out = out * _ppow(1 - t, 1j * (c - a).imag)
        return out

    pref = gamma(c) / (gamma(a) * gamma(c - a))
    return pref * _quad(g, alpha, beta, spec)


def f1_pde_residual(p: F1Params, x, y) -> tuple[complex, complex]:
    """Residuals of the two second-order equations satisfied by F1.

    x(1-x) z_xx + y(1-x) z_xy + [c-(a+b+1)x] z_x - b y z_y - a b z and the
    (y, b') mirror; both stay finite at x = y.
    """
    a, b, bp, c = p.a, p.b, p.bprime, p.c
    X = Jet.variable(2, 2, 0, base=x)
    Y = Jet.variable(2, 2, 1, base=y)
    F = f1_series(p, X, Y)
    z = F.value
    zx, zy = F.partial((1, 0)), F.partial((0, 1))
    zxx, zxy, zyy = F.partial((2, 0)), F.partial((1, 1)), F.partial((0, 2))
    r1 = x * (1 - x) * zxx + y * (1 - x) * zxy + (c - (a + b + 1) * x) * zx - b * y * zy - a * b * z
    r2 = (
        y * (1 - y) * zyy
        + x * (1 - y) * zxy
        + (c - (a + bp + 1) * y) * zy
        - bp * x * zx
        - a * bp * z
    )
    return r1, r2


def picard_integral(x, y, spec: QuadratureSpec | None = None) -> complex:
    """int_0^1 dt / cbrt(t (t-1) (t-x) (t-y)), principal branch per factor.

    On (0, 1) the factor (t-1)^{-1/3} contributes a constant phase
    exp(-i pi/3) times (1-t)^{-1/3}; endpoint exponents are (-1/3, -1/3).
    """
    for v in (x, y):
        v = complex(v)
        if v.imag == 0 and 0 <= v.real <= 1:
            raise ValueError("branch point on the contour: modulus in [0, 1]")

    phase = cmath.exp(-1j * cmath.pi / 3)

    def g(t):
        return phase * _ppow(t - x, -1.0 / 3.0) * _ppow(t - y, -1.0 / 3.0)

    return _quad(g, -1.0 / 3.0, -1.0 / 3.0, spec)


def picard_f1_identity_rhs(x, y) -> complex:
    """-Gamma(2/3)^2/Gamma(4/3) x^{-1/3} y^{-1/3} F1(2/3; 1/3, 1/3; 4/3; 1/x, 1/y)."""
    pref = -gamma(Fraction(2, 3)) ** 2 / gamma(Fraction(4, 3))
    params = F1Params("2/3", "1/3", "1/3", "4/3")
    xr = complex(_ppow(complex(x), -1.0 / 3.0))
    yr = complex(_ppow(complex(y), -1.0 / 3.0))
    return pref * xr * yr * f1_series(params, 1 / x, 1 / y)


def k_integral(ki, kj, spec: QuadratureSpec | None = None) -> complex:
    """int_0^1 dx / cbrt(x^2 (1-x) (1-ki x) (1-kj x)); exponents (-1/3, -2/3)."""
    for v in (ki, kj):
        v = complex(v)
        if v.imag == 0 and v.real >= 1:
            raise ValueError("modulus on the cut [1, inf)")

    def g(t):
        return _ppow(1 - ki * t, -1.0 / 3.0) * _ppow(1 - kj * t, -1.0 / 3.0)

    return _quad(g, -1.0 / 3.0, -2.0 / 3.0, spec)


def k_integral_substituted(ki, kj, spec: QuadratureSpec | None = None) -> complex:
    """Same integral after x = t^3: 3 int_0^1 dt / cbrt((1-t^3)(1-ki t^3)(1-kj t^3))."""
    for v in (ki, kj):
        v = complex(v)
        if v.imag == 0 and v.real >= 1:
            raise ValueError("modulus on the cut [1, inf)")

    def g(t):
        t3 = t**3
        return (
            3.0
            * _ppow(1 + t + t * t, -1.0 / 3.0)
            * _ppow(1 - ki * t3, -1.0 / 3.0)
            * _ppow(1 - kj * t3, -1.0 / 3.0)
        )

    return _quad(g, -1.0 / 3.0, 0.0, spec)
