"""Residual checks for the rank-three linear systems attached to a planar map.

Two directions are covered.  Given a map (w1, w2) of (v1, v2), the cube
root of the inverse Jacobian must satisfy three linear second-order
equations whose coefficients are built from the map's derivative
quadruple (``mt1_residuals``).  Conversely, when the quadruple has the
three-pole rational shape parametrized by (alpha, beta, gamma), the
system has closed-form solutions: an Appell series times an algebraic
prefactor (``mt2_solution_residuals``).  Everything is evaluated on
truncated jets, so residuals of a true identity sit at rounding level.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .appell import F1Params, f1_series
from .derivs import MapJet2, deriv_quad
from .jets import Jet, JetError, jet_powq

__all__ = [
    "BASE_MARGIN",
    "PICARD",
    "PICARD_MODULAR",
    "FieldQuad",
    "ParamTriple",
    "appell_fields",
    "field_quad",
    "mt1_residuals",
    "mt1_relative_residual",
    "mt2_solution_residuals",
    "mt2_field_recovery_gap",
    "pfaffian_jet",
    "picard_modular_form_residuals",
    "ratio_map_quad",
    "w_system_residuals",
    "z_system_residuals",
    "z_system_scale",
]

# Sample points must keep this distance from the poles {0, 1, v_other}.
BASE_MARGIN = 0.05


def _base(x) -> complex:
    return x.value if isinstance(x, Jet) else complex(x)


def _coerce(x) -> complex:
    if isinstance(x, Fraction):
        return complex(float(x))
    return complex(x)


@dataclass(frozen=True)
class ParamTriple:
    """Exponent triple (alpha, beta, gamma) of the three-pole fields."""

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", _coerce(self.alpha))
        object.__setattr__(self, "beta", _coerce(self.beta))
        object.__setattr__(self, "gamma", _coerce(self.gamma))

    def f1_params(self, which: str = "first") -> F1Params:
        """Appell parameters of the solution branch.

        first:  (alpha+beta-1; -gamma, -gamma; alpha-gamma) in (v1, v2)
        second: (alpha+beta-1; -gamma, -gamma; beta-gamma) in (1-v1, 1-v2)
        """
        a = self.alpha + self.beta - 1
        b = -self.gamma
        if which == "first":
            c = self.alpha - self.gamma
        elif which == "second":
            c = self.beta - self.gamma
        else:
            raise ValueError(f"unknown branch {which!r}")
        p = F1Params(a, b, b, c)
        p.require_series_ok()
        return p


# The two parameter sets realized by period maps of the cubic-curve
# families: the generic one and the one attached to the modular form.
PICARD = ParamTriple(Fraction(2, 3), Fraction(2, 3), Fraction(-1, 3))
PICARD_MODULAR = ParamTriple(Fraction(3, 4), Fraction(1, 2), Fraction(-1, 4))


@dataclass(frozen=True)
class FieldQuad:
    """Coefficient fields (F1, F2, P1, P2); entries are scalars or jets."""

    F1: object
    F2: object
    P1: object
    P2: object

    def values(self) -> tuple[complex, complex, complex, complex]:
        return tuple(_base(f) for f in (self.F1, self.F2, self.P1, self.P2))


def _check_poles(v1, v2, margin: float):
    b1, b2 = _base(v1), _base(v2)
    gap = min(abs(b1), abs(b2), abs(b1 - 1), abs(b2 - 1), abs(b1 - b2))
    if gap < margin:
        raise ValueError(f"pole hit: point within {margin} of {{0, 1, v_other}}")


def field_quad(p: ParamTriple, v) -> FieldQuad:
    """Closed-form fields; v entries may be numbers or jets."""
    v1, v2 = v
    _check_poles(v1, v2, 1e-12)
    a, b, g = p.alpha, p.beta, p.gamma
    f1 = -g * v2 * (v2 - 1) / (v1 * (v1 - 1) * (v1 - v2))
    f2 = -g * v1 * (v1 - 1) / (v2 * (v2 - 1) * (v2 - v1))
    p1 = a / v1 + b / (v1 - 1) + g / (v1 - v2)
    p2 = a / v2 + b / (v2 - 1) + g / (v2 - v1)
    return FieldQuad(f1, f2, p1, p2)


def appell_fields(a, b, bprime, c, v) -> FieldQuad:
    """Derivative quadruple of a ratio pair of Appell-system solutions.

    Written directly in the (a; b, b'; c) parameters; for b == b' it is
    field_quad at (alpha, beta, gamma) = (c-b', a+b-c+1, -b').
    """
    v1, v2 = v
    _check_poles(v1, v2, 1e-12)
    a, b, bp, c = (_coerce(t) for t in (a, b, bprime, c))
    f1 = b * v2 * (v2 - 1) / (v1 * (v1 - 1) * (v1 - v2))
    f2 = bp * v1 * (v1 - 1) / (v2 * (v2 - 1) * (v2 - v1))
    p1 = (c - bp) / v1 + (a + b - c + 1) / (v1 - 1) + (bp - 2 * b) / (v1 - v2)
    p2 = (c - b) / v2 + (a + bp - c + 1) / (v2 - 1) + (b - 2 * bp) / (v2 - v1)
    return FieldQuad(f1, f2, p1, p2)


def _field_data(fields):
    """Values and first partials of the four fields (jets of order >= 1)."""
    if hasattr(fields, "brace_x"):
        fields = FieldQuad(
            fields.brace_x, fields.brace_y, fields.bracket_x, fields.bracket_y
        )
    out = []
    for f in (fields.F1, fields.F2, fields.P1, fields.P2):
        if not isinstance(f, Jet):
            raise JetError("fields must be jets of order >= 1")
        out.append((f.value, f.partial((1, 0)), f.partial((0, 1))))
    return out


def _z_system(z: Jet, fields):
    """Residuals and term scale of the three linear equations."""
    (f1, f1_1, f1_2), (f2, f2_1, f2_2), (p1, p1_1, p1_2), (p2, p2_1, p2_2) = (
        _field_data(fields)
    )
    z0 = z.value
    z1, z2 = z.partial((1, 0)), z.partial((0, 1))
    z11, z12, z22 = z.partial((2, 0)), z.partial((1, 1)), z.partial((0, 2))
    third = Fraction(1, 3)
    eqs = (
        (z11, third * p1 * z1, -f1 * z2,
         (f1_2 - third * p1_1 - Fraction(2, 9) * p1 * p1
          - Fraction(2, 3) * f1 * p2) * z0),
        (z12, -third * p2 * z1, -third * p1 * z2,
         (third * p2_1 + third * p1_2 + Fraction(1, 9) * p1 * p2
          - f1 * f2) * z0),
        (z22, third * p2 * z2, -f2 * z1,
         (f2_1 - third * p2_2 - Fraction(2, 9) * p2 * p2
          - Fraction(2, 3) * f2 * p1) * z0),
    )
    residuals = tuple(sum(terms) for terms in eqs)
    scale = max(abs(t) for terms in eqs for t in terms)
    return residuals, scale


def z_system_residuals(z: Jet, fields) -> tuple[complex, complex, complex]:
    """Three equation residuals for a candidate z (jet of order >= 2).

    ``fields`` is a FieldQuad of jets or a DerivQuad; first partials of
    the fields enter the zeroth-order coefficients.  Each equation is
    homogeneous in z, so the branch constant of a cube root drops out.
    """
    return _z_system(z, fields)[0]


def z_system_scale(z: Jet, fields) -> float:
    """Largest term magnitude, the reference for relative residuals."""
    return _z_system(z, fields)[1]


def _as_map(w) -> MapJet2:
    return w if isinstance(w, MapJet2) else MapJet2(*w)


def mt1_residuals(w, branch: int = 0) -> tuple[complex, complex, complex]:
    """Residuals of the linear system satisfied by (1/det Dw)^(1/3).

    ``w`` is a MapJet2 (or pair of jets) of order >= 3; the coefficient
    fields are its derivative quadruple.  ``branch`` multiplies z by a
    cube root of unity; residuals are invariant under that choice.
    """
    m = _as_map(w)
    if m.order < 3:
        raise JetError("map jets must have order >= 3")
    quad = deriv_quad(m)
    delta = 1 / m.jacobian_jet()
    z = jet_powq(delta, Fraction(1, 3))
    if branch % 3:
        z = cmath.exp(2j * cmath.pi * (branch % 3) / 3) * z
    return z_system_residuals(z, quad)


def mt1_relative_residual(w, branch: int = 0) -> float:
    """max residual / max term, over the three equations."""
    m = _as_map(w)
    if m.order < 3:
        raise JetError("map jets must have order >= 3")
    quad = deriv_quad(m)
    delta = 1 / m.jacobian_jet()
    z = jet_powq(delta, Fraction(1, 3))
    if branch % 3:
        z = cmath.exp(2j * cmath.pi * (branch % 3) / 3) * z
    residuals, scale = _z_system(z, quad)
    return max(abs(r) for r in residuals) / scale


def w_system_residuals(w: Jet, p: ParamTriple, v) -> tuple[complex, complex, complex]:
    """Residuals of the three equations for the prefactor-stripped w.

    w_v1v1 + (a/v1 + b/(v1-1) - g/(v1-v2)) w_v1
           + (g v2(v2-1)/(v1(v1-1)(v1-v2))) w_v2
           + ((1-a-b) g/(v1(v1-1))) w = 0,
    its v1 <-> v2 mirror, and
    w_v1v2 + (g/(v1-v2)) w_v1 - (g/(v1-v2)) w_v2 = 0.
    """
    v1, v2 = _base(v[0]), _base(v[1])
    a, b, g = p.alpha, p.beta, p.gamma
    w0 = w.value
    w1, w2 = w.partial((1, 0)), w.partial((0, 1))
    w11, w12, w22 = w.partial((2, 0)), w.partial((1, 1)), w.partial((0, 2))
    r1 = (
        w11
        + (a / v1 + b / (v1 - 1) - g / (v1 - v2)) * w1
        + (g * v2 * (v2 - 1) / (v1 * (v1 - 1) * (v1 - v2))) * w2
        + ((1 - a - b) * g / (v1 * (v1 - 1))) * w0
    )
    r2 = (
        w22
        + (a / v2 + b / (v2 - 1) - g / (v2 - v1)) * w2
        + (g * v1 * (v1 - 1) / (v2 * (v2 - 1) * (v2 - v1))) * w1
        + ((1 - a - b) * g / (v2 * (v2 - 1))) * w0
    )
    r3 = w12 + (g / (v1 - v2)) * w1 - (g / (v1 - v2)) * w2
    return (r1, r2, r3)


def _variable_jets(v, order: int = 2) -> tuple[Jet, Jet]:
    v1, v2 = _base(v[0]), _base(v[1])
    return (
        Jet.variable(2, order, 0, base=v1),
        Jet.variable(2, order, 1, base=v2),
    )


def _z_prefactor(p: ParamTriple, V1: Jet, V2: Jet) -> Jet:
    """v1^(a/3) v2^(a/3) (v1-1)^(b/3) (v2-1)^(b/3) (v1-v2)^(-2g/3)."""
    a3 = p.alpha / 3
    b3 = p.beta / 3
    g3 = -2 * p.gamma / 3
    return (
        jet_powq(V1, a3)
        * jet_powq(V2, a3)
        * jet_powq(V1 - 1, b3)
        * jet_powq(V2 - 1, b3)
        * jet_powq(V1 - V2, g3)
    )


def _series_domain(v1: complex, v2: complex, which: str):
    if which == "first":
        if max(abs(v1), abs(v2)) >= 1:
            raise ValueError("first branch needs |v1|, |v2| < 1")
    else:
        if max(abs(1 - v1), abs(1 - v2)) >= 1:
            raise ValueError("second branch needs |1-v1|, |1-v2| < 1")


def _branch_solution(p: ParamTriple, V1: Jet, V2: Jet, which: str) -> Jet:
    params = p.f1_params(which)
    if which == "first":
        return f1_series(params, V1, V2)
    return f1_series(params, 1 - V1, 1 - V2)


def mt2_solution_residuals(p: ParamTriple, v, which: str = "first") -> dict:
    """Residuals of the closed-form solution on both levels.

    Builds w from the Appell series branch, checks the three w-equations,
    then rebuilds z = prefactor * w and checks the three z-equations with
    the closed-form fields.  Returns
    {"w_residuals": (r1, r2, r3), "z_residuals": (r1, r2, r3)}.
    """
    v1, v2 = _base(v[0]), _base(v[1])
    _check_poles(v1, v2, BASE_MARGIN)
    _series_domain(v1, v2, which)
    V1, V2 = _variable_jets((v1, v2))
    w = _branch_solution(p, V1, V2, which)
    wr = w_system_residuals(w, p, (v1, v2))
    z = _z_prefactor(p, V1, V2) * w
    zr = z_system_residuals(z, field_quad(p, (V1, V2)))
    return {"w_residuals": wr, "z_residuals": zr}


def pfaffian_jet(p: ParamTriple, v, data) -> Jet:
    """Order-2 jet of the w-system solution with value and gradient ``data``.

    The three equations express every second partial through (w, w_v1,
    w_v2), so a local solution jet is determined by that triple alone.
    """
    v1, v2 = _base(v[0]), _base(v[1])
    _check_poles(v1, v2, 1e-12)
    a, b, g = p.alpha, p.beta, p.gamma
    w0, w1, w2 = (complex(t) for t in data)
    w11 = -(
        (a / v1 + b / (v1 - 1) - g / (v1 - v2)) * w1
        + (g * v2 * (v2 - 1) / (v1 * (v1 - 1) * (v1 - v2))) * w2
        + ((1 - a - b) * g / (v1 * (v1 - 1))) * w0
    )
    w22 = -(
        (a / v2 + b / (v2 - 1) - g / (v2 - v1)) * w2
        + (g * v1 * (v1 - 1) / (v2 * (v2 - 1) * (v2 - v1))) * w1
        + ((1 - a - b) * g / (v2 * (v2 - 1))) * w0
    )
    w12 = -(g / (v1 - v2)) * w1 + (g / (v1 - v2)) * w2
    return Jet(
        2,
        2,
        {
            (0, 0): w0,
            (1, 0): w1,
            (0, 1): w2,
            (2, 0): w11 / 2,
            (1, 1): w12,
            (0, 2): w22 / 2,
        },
    )


# Generic gradient triples; any basis of the three-dimensional local
# solution space works, as long as the denominator entry has w != 0.
_RATIO_DATA = ((1.0, 0.3, -0.2), (0.1, 1.0, 0.4), (1.0, -0.5, 0.9))


def ratio_map_quad(p: ParamTriple, v, data=_RATIO_DATA) -> FieldQuad:
    """Derivative quadruple of (s1/s3, s2/s3) for three solution jets.

    The ratio map of any solution basis must reproduce the closed-form
    fields; this recovers (F1, F2, P1, P2) without using them.
    """
    s1, s2, s3 = (pfaffian_jet(p, v, d) for d in data)
    quad = deriv_quad(MapJet2(s1 / s3, s2 / s3))
    f1, f2, p1, p2 = quad.values()
    return FieldQuad(f1, f2, p1, p2)


def mt2_field_recovery_gap(p: ParamTriple, v, third=(1.0, -0.5, 0.9)) -> float:
    """Cross-check: series solutions feed the map-side field extraction.

    Takes the two series branches as s1, s2, completes the basis with a
    prescribed-gradient jet s3, and compares the derivative quadruple of
    (s1/s3, s2/s3) against the closed-form fields.  Needs a point where
    both branches converge.
    """
    v1, v2 = _base(v[0]), _base(v[1])
    _check_poles(v1, v2, BASE_MARGIN)
    _series_domain(v1, v2, "first")
    _series_domain(v1, v2, "second")
    V1, V2 = _variable_jets((v1, v2))
    s1 = _branch_solution(p, V1, V2, "first")
    s2 = _branch_solution(p, V1, V2, "second")
    s3 = pfaffian_jet(p, (v1, v2), third)
    quad = deriv_quad(MapJet2(s1 / s3, s2 / s3))
    target = field_quad(p, (v1, v2)).values()
    return max(abs(a - b) for a, b in zip(quad.values(), target))


def picard_modular_form_residuals(v, coeffs=(1.0, 1.0)) -> tuple:
    """Residuals of the rebuilt cube-root-of-Jacobian at the modular set.

    z = v1^(1/4) v2^(1/4) (v1-1)^(1/6) (v2-1)^(1/6) (v1-v2)^(1/6)
        * [c1 * F1(1/4; 1/4, 1/4; 1; v1, v2)
           + c2 * F1(1/4; 1/4, 1/4; 3/4; 1-v1, 1-v2)]
    checked against the system with (alpha, beta, gamma) = (3/4, 1/2, -1/4).
    """
    v1, v2 = _base(v[0]), _base(v[1])
    _check_poles(v1, v2, BASE_MARGIN)
    _series_domain(v1, v2, "first")
    _series_domain(v1, v2, "second")
    c1, c2 = coeffs
    V1, V2 = _variable_jets((v1, v2))
    head = (
        jet_powq(V1, Fraction(1, 4))
        * jet_powq(V2, Fraction(1, 4))
        * jet_powq(V1 - 1, Fraction(1, 6))
        * jet_powq(V2 - 1, Fraction(1, 6))
        * jet_powq(V1 - V2, Fraction(1, 6))
    )
    sA = f1_series(F1Params("1/4", "1/4", "1/4", 1), V1, V2)
    sB = f1_series(F1Params("1/4", "1/4", "1/4", "3/4"), 1 - V1, 1 - V2)
    z = head * (c1 * sA + c2 * sB)
    return z_system_residuals(z, field_quad(PICARD_MODULAR, (V1, V2)))
