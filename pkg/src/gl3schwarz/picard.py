"""Moduli arithmetic for the plane quartic-cover family y^3 = x(x-1)(x-l1)(x-l2).

Covers the two absolute invariants and their sixfold symmetry, the
degree-three modular equation between two moduli pairs, the order-five
rational transform with its differential-form pullback identity (checked
in cubed, branch-free shape), and the parameter-permutation table for
the three-pole coefficient fields under the anharmonic actions.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .derivs import DerivQuad, second_arg_transform
from .jets import Jet, jet_powq
from .pde_verify import ParamTriple, field_quad

__all__ = [
    "ModuliPair",
    "TransformABG",
    "S3_MATRICES",
    "corollary52_check",
    "f1_func",
    "f2_func",
    "f_sign_relations",
    "j_invariants",
    "modular_form_value",
    "modular_residual",
    "modular_solve",
    "order5_map",
    "p1_func",
    "p2_func",
    "p_transform_relations",
    "param_table_check",
    "pullback_identity_check",
    "s3_orbit",
    "surface_forms",
    "transform_abg",
]

_TINY = 1e-12


def _degenerate(u1: complex, u2: complex) -> bool:
    return min(abs(u1), abs(u2), abs(u1 - 1), abs(u2 - 1), abs(u1 - u2)) < _TINY


@dataclass(frozen=True)
class ModuliPair:
    """A pair of cubed moduli; degenerate configurations are rejected."""

    u1: complex
    u2: complex

    def __post_init__(self):
        object.__setattr__(self, "u1", complex(self.u1))
        object.__setattr__(self, "u2", complex(self.u2))
        if _degenerate(self.u1, self.u2):
            raise ValueError("degenerate moduli: need u1, u2 off {0, 1} and distinct")

    def as_tuple(self) -> tuple[complex, complex]:
        return (self.u1, self.u2)


def _as_pair(u) -> ModuliPair:
    return u if isinstance(u, ModuliPair) else ModuliPair(*u)


# ---------------------------------------------------------------------------
# absolute invariants


def j_invariants(l1, l2) -> tuple[complex, complex]:
    """(J1, J2) of the branch configuration {0, 1, l1, l2, inf}."""
    l1, l2 = complex(l1), complex(l2)
    if _degenerate(l1, l2):
        raise ValueError("degenerate moduli")
    j1 = l2**2 * (l2 - 1) ** 2 / (l1**2 * (l1 - 1) ** 2 * (l1 - l2) ** 2)
    j2 = l1**2 * (l1 - 1) ** 2 / (l2**2 * (l2 - 1) ** 2 * (l2 - l1) ** 2)
    return (j1, j2)


# ---------------------------------------------------------------------------
# the anharmonic S3 x S3 actions on (x, y)

_T = np.array([[-1, 0, 1], [0, -1, 1], [0, 0, 1]], dtype=np.complex128)
_S1 = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=np.complex128)
_S2 = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=np.complex128)

S3_MATRICES = {
    "T": _T,
    "S1": _S1,
    "S2": _S2,
    "S1T": _S1 @ _T,
    "TS1": _T @ _S1,
    "S1TS1": _S1 @ _T @ _S1,
    "S2T": _S2 @ _T,
    "TS2": _T @ _S2,
    "S2TS2": _S2 @ _T @ _S2,
}

# printed coordinate forms of the same actions
_S3_FORMS = {
    "T": lambda x, y: (1 - x, 1 - y),
    "S1": lambda x, y: (x / y, 1 / y),
    "S1T": lambda x, y: ((1 - x) / (1 - y), 1 / (1 - y)),
    "TS1": lambda x, y: ((y - x) / y, (y - 1) / y),
    "S1TS1": lambda x, y: ((y - x) / (y - 1), y / (y - 1)),
    "S2": lambda x, y: (1 / x, y / x),
    "S2T": lambda x, y: (1 / (1 - x), (1 - y) / (1 - x)),
    "TS2": lambda x, y: ((x - 1) / x, (x - y) / x),
    "S2TS2": lambda x, y: (x / (x - 1), (x - y) / (x - 1)),
}


def s3_orbit(name: str, x, y) -> tuple[complex, complex]:
    """Image of (x, y) under the named action, by the printed formula."""
    if name not in _S3_FORMS:
        raise ValueError(f"unknown action {name!r}")
    x, y = complex(x), complex(y)
    m = S3_MATRICES[name]
    den = m[2, 0] * x + m[2, 1] * y + m[2, 2]
    if abs(den) < _TINY:
        raise ZeroDivisionError("vanishing denominator")
    return _S3_FORMS[name](x, y)


# ---------------------------------------------------------------------------
# the pole-functions and their transformation tables


def f1_func(x, y):
    return y * (y - 1) / (x * (x - 1) * (x - y))


def f2_func(x, y):
    return x * (x - 1) / (y * (y - 1) * (y - x))


def p1_func(a, b, g, x, y):
    return a / x + b / (x - 1) + g / (x - y)


def p2_func(a, b, g, x, y):
    return a / y + b / (y - 1) + g / (y - x)


def f_sign_relations(x, y) -> float:
    """Largest error in the ten sign identities of f1 and f2 on the orbit."""
    errs = []
    for name, sign in [("T", -1), ("S1", -1), ("S1T", 1), ("TS1", 1), ("S1TS1", -1)]:
        errs.append(abs(f1_func(*s3_orbit(name, x, y)) - sign * f1_func(x, y)))
    for name, sign in [("T", -1), ("S2", -1), ("S2T", 1), ("TS2", 1), ("S2TS2", -1)]:
        errs.append(abs(f2_func(*s3_orbit(name, x, y)) - sign * f2_func(x, y)))
    return max(errs)


def p_transform_relations(a, b, g, x, y) -> float:
    """Largest error in the ten prefactor-permutation identities of P1, P2."""
    rows1 = [
        ("T", -1, (b, a, g)),
        ("S1", y, (a, g, b)),
        ("S1T", y - 1, (g, a, b)),
        ("TS1", -y, (b, g, a)),
        ("S1TS1", 1 - y, (g, b, a)),
    ]
    rows2 = [
        ("T", -1, (b, a, g)),
        ("S2", x, (a, g, b)),
        ("S2T", x - 1, (g, a, b)),
        ("TS2", -x, (b, g, a)),
        ("S2TS2", 1 - x, (g, b, a)),
    ]
    errs = []
    for name, pref, perm in rows1:
        lhs = p1_func(a, b, g, *s3_orbit(name, x, y))
        errs.append(abs(lhs - pref * p1_func(*perm, x, y)))
    for name, pref, perm in rows2:
        lhs = p2_func(a, b, g, *s3_orbit(name, x, y))
        errs.append(abs(lhs - pref * p2_func(*perm, x, y)))
    return max(errs)


# ---------------------------------------------------------------------------
# modular equation and the order-five transform


def modular_form_value(u) -> complex:
    """(u1-1)(u2-1)(u1-u2), the invariant matched by the modular equation."""
    p = _as_pair(u)
    return (p.u1 - 1) * (p.u2 - 1) * (p.u1 - p.u2)


def modular_residual(u, v) -> complex:
    return modular_form_value(v) - modular_form_value(u)


def modular_solve(u, v2) -> tuple[complex, complex]:
    """Both roots v1 of (v1-1)(v2-1)(v1-v2) = (u1-1)(u2-1)(u1-u2).

    A double root is returned twice; callers filter by extra constraints.
    """
    p = _as_pair(u)
    v2 = complex(v2)
    if min(abs(v2), abs(v2 - 1)) < _TINY:
        raise ValueError("v2 must avoid {0, 1}")
    k = modular_form_value(p)
    # (v2-1) v1^2 - (1+v2)(v2-1) v1 + v2(v2-1) - k = 0
    a = v2 - 1
    b = -(1 + v2) * (v2 - 1)
    c = v2 * (v2 - 1) - k
    disc = cmath.sqrt(b * b - 4 * a * c)
    return ((-b + disc) / (2 * a), (-b - disc) / (2 * a))


@dataclass(frozen=True)
class TransformABG:
    """Coefficients of the order-five transform; (a+b+g)g = 1 on-shell."""

    alpha: complex
    beta: complex
    gamma: complex

    def constraint_residual(self) -> complex:
        return (self.alpha + self.beta + self.gamma) * self.gamma - 1


def transform_abg(u, v) -> TransformABG:
    """(alpha, beta, gamma) of the transform taking moduli u to v.

    Requires the modular equation to hold within 1e-10 of the form scale.
    """
    pu, pv = _as_pair(u), _as_pair(v)
    ku, kv = modular_form_value(pu), modular_form_value(pv)
    if abs(kv - ku) > 1e-10 * max(1.0, abs(ku), abs(kv)):
        raise ValueError("modular equation violated")
    u1, u2 = pu.as_tuple()
    v1, v2 = pv.as_tuple()
    du = (u1 - 1) * (u2 - 1)
    dv = (v1 - 1) * (v2 - 1)
    alpha = (dv * (v1 + v2 - 2) - du * (u1 + u2 - 2)) / (2 * du * dv)
    beta = (-dv * (2 * v1 * v2 - v1 - v2) + du * (2 * u1 * u2 - u1 - u2)) / (
        2 * du * dv
    )
    gamma = dv / du
    return TransformABG(alpha, beta, gamma)


def order5_map(abg: TransformABG, t1, t2) -> tuple:
    """(w1, w2) of the order-five transform; t1, t2 may be jets.

    w1 = ((b+g) t1 + a)/(b t1 + (a+g)),
    w2 = t1 ((b+g) t1 + a)^2 (b t1 + (a+g)) / t2^5.
    """
    a, b, g = abg.alpha, abg.beta, abg.gamma
    num = (b + g) * t1 + a
    den = b * t1 + (a + g)
    t2_5 = t2 * t2 * t2 * t2 * t2
    den0 = den.value if isinstance(den, Jet) else den
    t2_0 = t2.value if isinstance(t2, Jet) else t2
    if abs(complex(den0)) < _TINY or abs(complex(t2_0)) < _TINY:
        raise ZeroDivisionError("vanishing denominator")
    w1 = num / den
    w2 = t1 * num * num * den / t2_5
    return (w1, w2)


def _radicand_t(u: ModuliPair, t1):
    return t1 * t1 * (1 - t1) * (1 - u.u1 * t1) * (1 - u.u2 * t1)


def _abg_unchecked(pu: ModuliPair, pv: ModuliPair) -> TransformABG:
    """Coefficient formulas without the modular-equation gate."""
    u1, u2 = pu.as_tuple()
    v1, v2 = pv.as_tuple()
    du = (u1 - 1) * (u2 - 1)
    dv = (v1 - 1) * (v2 - 1)
    return TransformABG(
        (dv * (v1 + v2 - 2) - du * (u1 + u2 - 2)) / (2 * du * dv),
        (-dv * (2 * v1 * v2 - v1 - v2) + du * (2 * u1 * u2 - u1 - u2))
        / (2 * du * dv),
        dv / du,
    )


def _pullback_sides(u, v, t, check_modular: bool):
    pu, pv = _as_pair(u), _as_pair(v)
    abg = transform_abg(pu, pv) if check_modular else _abg_unchecked(pu, pv)
    t1, t2 = complex(t[0]), complex(t[1])
    T1 = Jet.variable(2, 1, 0, base=t1)
    T2 = Jet.variable(2, 1, 1, base=t2)
    w1, w2 = order5_map(abg, T1, T2)
    jac = w1.partial((1, 0)) * w2.partial((0, 1)) - w1.partial((0, 1)) * w2.partial(
        (1, 0)
    )
    ft = t1 * t1 * t2 * t2 * (1 - t1) * (1 - pu.u1 * t1) * (1 - pu.u2 * t1)
    w1v, w2v = w1.value, w2.value
    fw = w1v * w1v * w2v * w2v * (1 - w1v) * (1 - pv.u1 * w1v) * (1 - pv.u2 * w1v)
    if min(abs(ft), abs(fw)) < _TINY:
        raise ValueError("radicand zero")
    lhs = jac**3 * ft
    rhs = (-5 * t1 / (t2 * t2)) ** 3 * fw
    return lhs, rhs


def pullback_identity_check(u, v, t, check_modular: bool = True) -> float:
    """Relative residual of the cubed differential-form identity.

    Jac^3 f_t(t1, t2) = (-5 t1/t2^2)^3 f_w(w1, w2), with Jac the jet
    Jacobian of the order-five map, f_t, f_w the two quintic radicands.
    Cubing removes every cube-root branch choice.
    """
    lhs, rhs = _pullback_sides(u, v, t, check_modular)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def surface_forms(u, t, t4=1.0) -> tuple[complex, complex]:
    """(t3^3, degree-seven form) of the associated algebraic surface.

    t3^3 = t1^2 t2^2 (1-t1)(1-u1 t1)(1-u2 t1) and its homogenization
    t3^3 t4^4 = t1^2 t2^2 (t4-t1)(t4-u1 t1)(t4-u2 t1); at t4 = 1 the two
    coincide, and the right side scales with degree seven.
    """
    p = _as_pair(u)
    t1, t2 = complex(t[0]), complex(t[1])
    t4 = complex(t4)
    cubic = t1 * t1 * t2 * t2 * (1 - t1) * (1 - p.u1 * t1) * (1 - p.u2 * t1)
    hom = t1 * t1 * t2 * t2 * (t4 - t1) * (t4 - p.u1 * t1) * (t4 - p.u2 * t1)
    return (cubic, hom)


def corollary52_check(u, v, x, check_modular: bool = True) -> float:
    """Relative residual of the cubed identity in the root coordinates.

    With t_i = x_i^3 and y_i = w_i^(1/3), checks
    Jac_y^3 g_x = (-5 x1^3/x2^6)^3 g_y for the sextic-free radicands
    g_x = (1-x1^3)(1-u1 x1^3)(1-u2 x1^3), g_y the same in (v, y1^3).
    """
    pu, pv = _as_pair(u), _as_pair(v)
    abg = transform_abg(pu, pv) if check_modular else _abg_unchecked(pu, pv)
    x1, x2 = complex(x[0]), complex(x[1])
    X1 = Jet.variable(2, 1, 0, base=x1)
    X2 = Jet.variable(2, 1, 1, base=x2)
    t1, t2 = X1 * X1 * X1, X2 * X2 * X2
    w1, w2 = order5_map(abg, t1, t2)
    y1 = jet_powq(w1, "1/3")
    y2 = jet_powq(w2, "1/3")
    jac = y1.partial((1, 0)) * y2.partial((0, 1)) - y1.partial((0, 1)) * y2.partial(
        (1, 0)
    )
    x1c = x1**3
    gx = (1 - x1c) * (1 - pu.u1 * x1c) * (1 - pu.u2 * x1c)
    w1v = w1.value
    gy = (1 - w1v) * (1 - pv.u1 * w1v) * (1 - pv.u2 * w1v)
    if min(abs(gx), abs(gy)) < _TINY:
        raise ValueError("radicand zero")
    lhs = jac**3 * gx
    rhs = (-5 * x1c / x2**6) ** 3 * gy
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


# ---------------------------------------------------------------------------
# parameter-permutation table under the anharmonic actions

# row -> (S1-family element, S2-family element, bracket parameters)
_TABLE_ROWS = {
    1: ("T", "T", lambda a, b, g: (b, a, g)),
    2: ("S1", "S2", lambda a, b, g: (a, -2 * g, b + 3 * g)),
    3: ("S1T", "S2T", lambda a, b, g: (-2 * g, a, b + 3 * g)),
    4: ("TS1", "TS2", lambda a, b, g: (b, -2 * g, a + 3 * g)),
    5: ("S1TS1", "S2TS2", lambda a, b, g: (-2 * g, b, a + 3 * g)),
}


def _transported_quad(p: ParamTriple, name: str, v) -> tuple:
    """Quad of the composite (fields at g(v), carried back through g)."""
    image = s3_orbit(name, *v)
    fq = field_quad(p, image)
    quad = DerivQuad(*fq.values())
    return second_arg_transform(quad, S3_MATRICES[name], v).values()


def param_table_check(row: int, p: ParamTriple, v, tol: float = 1e-10) -> dict:
    """One row of the transformation table, checked by transport.

    The composite's quad is computed from the closed-form fields at the
    image point via the second-argument transport, then compared with
    the row's claim: braces keep F(gamma), brackets take the permuted
    and shifted parameters.  Rows 2-5 claim the v1-components for the
    S1-family element and the v2-components for the S2-family element.
    """
    if row not in _TABLE_ROWS:
        raise ValueError("row must be 1..5")
    name1, name2, perm = _TABLE_ROWS[row]
    a, b, g = p.alpha, p.beta, p.gamma
    v1, v2 = complex(v[0]), complex(v[1])
    target_f = (-g * f1_func(v1, v2), -g * f2_func(v1, v2))
    pa, pb, pg = perm(a, b, g)
    target_p = (p1_func(pa, pb, pg, v1, v2), p2_func(pa, pb, pg, v1, v2))
    got1 = _transported_quad(p, name1, (v1, v2))
    errors = {
        "brace_1": abs(got1[0] - target_f[0]),
        "bracket_1": abs(got1[2] - target_p[0]),
    }
    got2 = got1 if name2 == name1 else _transported_quad(p, name2, (v1, v2))
    errors["brace_2"] = abs(got2[1] - target_f[1])
    errors["bracket_2"] = abs(got2[3] - target_p[1])
    return {
        "row": row,
        "elements": (name1, name2),
        "errors": errors,
        "max_error": max(errors.values()),
        "ok": max(errors.values()) < tol,
    }
