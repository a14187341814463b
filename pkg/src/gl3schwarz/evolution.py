"""Evolution system driven by the four derivative fields.

Maps (u1, u2)(x, y, t1, t2) belong to the system when the determinant
quotients of their time and space partials reproduce the two brace and two
bracket fields of the spatial map.  The fields of any member then satisfy a
pair of first-order equations; this module evaluates those residuals, the
Galilean covariance of the equations, and the mixed-partial consistency
identity behind them, all on truncated Taylor data.

Variable order of every jet here is (x, y, t1, t2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .derivs import MapJet2, deriv_quad
from .jets import Jet, JetError, compose, monomials

IX, IY, IT1, IT2 = range(4)
_DX = (1, 0, 0, 0)
_DY = (0, 1, 0, 0)
_DT1 = (0, 0, 1, 0)
_DT2 = (0, 0, 0, 1)


def _det(a, b):
    """det of rows a = (a1, a2), b = (b1, b2)."""
    return a[0] * b[1] - a[1] * b[0]


def evo_quotients(u, which: str):
    """The two determinant quotients of the chosen time variable.

    u: pair of jets in (x, y, t1, t2), order >= 1 in the time direction and
    >= 1 spatially.  Returned in the displayed order: for t1 the brace and
    bracket quotients over det(u_y; u_x), for t2 the bracket and brace
    quotients over det(u_x; u_y).  Membership in the evolution system means
    these match (brace_x, bracket_x) resp. (bracket_y, brace_y) of the
    spatial quad.
    """
    u1, u2 = u
    ux = (u1.partial(_DX), u2.partial(_DX))
    uy = (u1.partial(_DY), u2.partial(_DY))
    if which == "t1":
        ut = (u1.partial(_DT1), u2.partial(_DT1))
        den = _det(uy, ux)
        if abs(den) < 1e-14:
            raise ZeroDivisionError("spatial Jacobian vanishes")
        return _det(ut, ux) / den, _det(ut, uy) / den
    if which == "t2":
        ut = (u1.partial(_DT2), u2.partial(_DT2))
        den = _det(ux, uy)
        if abs(den) < 1e-14:
            raise ZeroDivisionError("spatial Jacobian vanishes")
        return _det(ut, ux) / den, _det(ut, uy) / den
    raise ValueError(f"time variable must be 't1' or 't2', got {which!r}")


def membership_residual(u) -> float:
    """Distance of the four quotients from the spatial quad entries."""
    brace_x, brace_y, bracket_x, bracket_y = deriv_quad(
        MapJet2(u[0], u[1], active=(IX, IY))
    ).values()
    q1 = evo_quotients(u, "t1")
    q2 = evo_quotients(u, "t2")
    return max(
        abs(q1[0] - brace_x),
        abs(q1[1] - bracket_x),
        abs(q2[0] - bracket_y),
        abs(q2[1] - brace_y),
    )


@dataclass(frozen=True)
class EvoFields:
    """The four fields as jets in (x, y, t1, t2) at a common base point."""

    v1: Jet
    v2: Jet
    w1: Jet
    w2: Jet

    def __post_init__(self):
        for f in (self.v1, self.v2, self.w1, self.w2):
            if f.dim != 4 or f.order < 1:
                raise JetError("fields must be order >= 1 jets in 4 variables")

    @classmethod
    def constant(cls, c1, c2, c3, c4, order: int = 1) -> "EvoFields":
        mk = lambda c: Jet.constant(4, order, c)
        return cls(mk(c1), mk(c2), mk(c3), mk(c4))

    @classmethod
    def shear(cls, lam, c1, c2, order: int = 1) -> "EvoFields":
        """v1 = c1, v2 = -lam t1, w1 = lam t2, w2 = c2: an exact solution."""
        t1 = Jet.variable(4, order, IT1)
        t2 = Jet.variable(4, order, IT2)
        return cls(
            Jet.constant(4, order, c1), -lam * t1, lam * t2, Jet.constant(4, order, c2)
        )

    @classmethod
    def random(cls, rng, order: int = 2, radius: float = 0.5) -> "EvoFields":
        """Dense random polynomial fields; generically not a solution."""

        def draw():
            coeffs = {}
            for alpha in monomials(4, order):
                coeffs[alpha] = complex(*rng.uniform(-radius, radius, 2))
            return Jet(4, order, coeffs)

        return cls(draw(), draw(), draw(), draw())


def mt4_residuals(f: EvoFields):
    """Left sides of the two field equations at the base point."""
    r1 = (
        f.w1.partial(_DT2)
        + f.v2.partial(_DT1)
        - f.v1.value * f.v2.partial(_DY)
        - f.v2.value * f.w1.partial(_DX)
        + f.w1.value * f.v2.partial(_DX)
        + f.w2.value * f.w1.partial(_DY)
    )
    r2 = (
        f.w2.partial(_DT1)
        + f.v1.partial(_DT2)
        - f.v1.value * f.w2.partial(_DY)
        - f.v2.value * f.v1.partial(_DX)
        + f.w1.value * f.w2.partial(_DX)
        + f.w2.value * f.v1.partial(_DY)
    )
    return r1, r2


def _shifted(field: Jet, a, b) -> Jet:
    """field(x - a t1, y - b t2, t1, t2) as a jet at the same base point.

    Valid when the base has t1 = t2 = 0, so the shift fixes it.
    """
    order = field.order
    x = Jet.variable(4, order, IX)
    y = Jet.variable(4, order, IY)
    t1 = Jet.variable(4, order, IT1)
    t2 = Jet.variable(4, order, IT2)
    return compose(field, [x - a * t1, y - b * t2, t1, t2])


def galilean_shift(f: EvoFields, a1, a2, b1, b2) -> EvoFields:
    """The drift action: spatial arguments slide with time, brackets offset.

    Field jets must be taken at a base point with t1 = t2 = 0.  (x, y) shifts
    by (a1 t1, b1 t2) in v1 and w1, by (a2 t1, b2 t2) in v2 and w2; then a2 is
    added to w1 and b1 to w2.
    """
    return EvoFields(
        _shifted(f.v1, a1, b1),
        _shifted(f.v2, a2, b2),
        _shifted(f.w1, a1, b1) + a2,
        _shifted(f.w2, a2, b2) + b1,
    )


def galilean_covariance_check(f: EvoFields, a1, a2, b1, b2) -> float:
    """Residual of R_i(shifted fields) = R_i(fields) at a base with t = 0.

    The offsets entering through the time partials cancel against the
    constant bracket offsets, so this holds for arbitrary fields, not only
    solutions of the system.
    """
    r = mt4_residuals(f)
    rs = mt4_residuals(galilean_shift(f, a1, a2, b1, b2))
    return max(abs(rs[0] - r[0]), abs(rs[1] - r[1]))


def consistency_residual(f: EvoFields, u: Jet) -> float:
    """Mixed-partial identity linking the transport relations to R1, R2.

    For any u carried by u_t1 = v1 u_y - w1 u_x and u_t2 = v2 u_x - w2 u_y,
    the two expansions of the t1 t2 mixed partial differ by exactly
    R1 u_x - R2 u_y; the combination below therefore vanishes identically in
    the jet coefficients of the fields and of u.
    """
    if u.dim != 4 or u.order < 2:
        raise JetError("u must be an order >= 2 jet in 4 variables")
    ux, uy = u.partial(_DX), u.partial(_DY)
    uxx, uxy, uyy = u.partial((2, 0, 0, 0)), u.partial((1, 1, 0, 0)), u.partial((0, 2, 0, 0))
    v1, v2, w1, w2 = f.v1, f.v2, f.w1, f.w2
    a = (
        v1.partial(_DT2) * uy
        - w1.partial(_DT2) * ux
        + v1.value * (v2.partial(_DY) * ux + v2.value * uxy - w2.partial(_DY) * uy - w2.value * uyy)
        - w1.value * (v2.partial(_DX) * ux + v2.value * uxx - w2.partial(_DX) * uy - w2.value * uxy)
    )
    b = (
        v2.partial(_DT1) * ux
        - w2.partial(_DT1) * uy
        + v2.value * (v1.partial(_DX) * uy + v1.value * uxy - w1.partial(_DX) * ux - w1.value * uxx)
        - w2.value * (v1.partial(_DY) * uy + v1.value * uyy - w1.partial(_DY) * ux - w1.value * uxy)
    )
    r1, r2 = mt4_residuals(f)
    return abs(a - b + r1 * ux - r2 * uy)


def transformed_pair(g, u):
    """Linear fractional image of the pair u under the matrix g, as jets."""
    m = np.asarray(g, dtype=np.complex128) if not hasattr(g, "to_numpy") else g.to_numpy()
    u1, u2 = u
    den = m[2, 0] * u1 + m[2, 1] * u2 + m[2, 2]
    if abs(den.value) < 1e-10:
        raise ZeroDivisionError("vanishing denominator at the base point")
    return (
        (m[0, 0] * u1 + m[0, 1] * u2 + m[0, 2]) / den,
        (m[1, 0] * u1 + m[1, 1] * u2 + m[1, 2]) / den,
    )
