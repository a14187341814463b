"""Seeded verification suites with deterministic, schema-versioned reports.

Every identity the package implements is re-checked here as a named check
with a fixed tolerance and sample budget.  All randomness derives from one
64-bit seed: each check owns a SHA-256-split subseed, so reports are
byte-identical for identical (suites, seed, samples, tolerance) inputs and
suites can run in any order or in parallel without changing the output.
"""

from __future__ import annotations

import cmath
import hashlib
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .appell import (
    F1Params,
    f1_euler,
    f1_pde_residual,
    f1_series,
    gamma,
    k_integral,
    picard_f1_identity_rhs,
    picard_integral,
)
from .derivs import (
    ExtendedTransport,
    MapJet2,
    chain_rule_rhs,
    compose_maps,
    deriv_quad,
    exp_solution_map,
    exp_system_oracle,
    jacobian_deformation,
    lft_map,
    random_map,
    second_arg_transform,
    transport_matrix,
    transported_pair,
)
from .eta import (
    eta36_transform_check,
    eta_variant_identities,
    ledger_multipliers,
    s_invariant_map,
    translation_invariant_map,
)
from .evolution import (
    EvoFields,
    evo_quotients,
    galilean_covariance_check,
    mt4_residuals,
    transformed_pair,
)
from .jets import Jet
from .lft import OMEGA, EisMatrix, generators, verify_word, word_product
from .pde_verify import (
    PICARD,
    PICARD_MODULAR,
    ParamTriple,
    mt1_residuals,
    mt1_relative_residual,
    mt2_field_recovery_gap,
    mt2_solution_residuals,
    picard_modular_form_residuals,
)
from .picard import (
    f_sign_relations,
    j_invariants,
    modular_solve,
    p_transform_relations,
    param_table_check,
    pullback_identity_check,
    s3_orbit,
    transform_abg,
)

SCHEMA = "gl3schwarz-report/1"
TOL_ENV = "GL3SCHWARZ_TOL"

_GEN_NAMES = ("T1", "T2", "S", "U1", "g4", "g5")
_LEDGER_EXPECTED = {
    "eta3(g1)": Fraction(7, 27),
    "eta1(g1)": Fraction(-5, 27),
    "eta3(g2)": Fraction(1, 27),
    "eta1(g2)": Fraction(-23, 27),
    "eta1(g3)": Fraction(26, 27),
    "eta4(g4)": Fraction(19, 27),
    "eta1(T1)": Fraction(2, 9),
    "eta(U1)": Fraction(13, 54),
    "eta(U2)": Fraction(2, 27),
}


def split_seed(seed: int, label: str) -> int:
    """Counted splitting: an independent 64-bit stream id per check."""
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _rng(seed: int, label: str):
    sub = split_seed(seed, label)
    return np.random.default_rng(sub), sub


def _cpx(rng, radius=1.0):
    return complex(*rng.uniform(-radius, radius, 2))


def _det_of_pair(f1, f2):
    return f1.partial((1, 0)) * f2.partial((0, 1)) - f2.partial((1, 0)) * f1.partial((0, 1))


# ---------------------------------------------------------------------------
# samplers (margins match the frozen test suites)


def _safe_pair(rng, margin=0.1, box=2.0):
    while True:
        x, y = _cpx(rng, box), _cpx(rng, box)
        if min(abs(x), abs(y), abs(x - 1), abs(y - 1), abs(x - y)) >= margin:
            return x, y


def _mt2_point(rng, region):
    while True:
        v = rng.uniform(-0.9, 0.9, 4)
        v1 = complex(v[0], 0.4 * v[1])
        v2 = complex(v[2], 0.4 * v[3])
        if region == "first":
            v1, v2 = 0.85 * v1, 0.85 * v2
            if max(abs(v1), abs(v2)) >= 0.9:
                continue
        elif region == "second":
            v1 = 1 - 0.4 * abs(v1) - 0.2 + 0.2j * v[1]
            v2 = 1 - 0.4 * abs(v2) - 0.2 + 0.2j * v[3]
            if max(abs(1 - v1), abs(1 - v2)) >= 0.9:
                continue
        else:  # lens: both branches converge fast under the series term cap
            v1 = 0.5 + 0.2 * v[0] + 0.12j * v[1]
            v2 = 0.5 + 0.2 * v[2] + 0.12j * v[3]
            if max(abs(v1), abs(v2), abs(1 - v1), abs(1 - v2)) >= 0.72:
                continue
        if min(abs(v1), abs(v2), abs(v1 - 1), abs(v2 - 1), abs(v1 - v2)) < 0.1:
            continue
        return v1, v2


def _eta_domain_point(rng):
    while True:
        z1 = complex(rng.uniform(0.8, 2.2), rng.uniform(-1, 1))
        z2 = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        if abs(z2) >= 0.1:
            return z1, z2


def _safe_lft_point(rng, g):
    m = g.to_numpy() if hasattr(g, "to_numpy") else np.asarray(g, dtype=complex)
    while True:
        z = (complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5)), _cpx(rng, 0.5))
        if abs(m[2, 0] * z[0] + m[2, 1] * z[1] + m[2, 2]) > 0.2:
            return z


def _moduli_instance(rng):
    """Moduli pair (u, v) satisfying the modular equation, all roots safe."""
    while True:
        u = (_cpx(rng, 2.0), _cpx(rng, 2.0))
        v2 = _cpx(rng, 2.0)
        if min(abs(u[0]), abs(u[1]), abs(u[0] - 1), abs(u[1] - 1), abs(u[0] - u[1])) < 0.1:
            continue
        try:
            roots = modular_solve(u, v2)
        except ValueError:
            continue
        for v1 in roots:
            if min(abs(v1), abs(v1 - 1), abs(v1 - v2)) > 1e-3:
                return u, (v1, v2)


def _order5_point(rng, u):
    zeros = (0.0, 1.0, 1 / u[0], 1 / u[1])
    while True:
        t1 = rng.uniform(0.3, 2) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        t2 = rng.uniform(0.3, 2) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        if min(abs(t1 - z) for z in zeros) >= 0.05:
            return t1, t2


# ---------------------------------------------------------------------------
# check runners: (rng, samples) -> (max residual, samples actually used)


def _check_group_algebra(rng, n):
    g = generators()
    results = [
        verify_word(g["commutator"], (("T1", 1), ("T2", 1), ("T1", -1), ("T2", -1))),
        (g["S"] * g["T1"]) ** 4 == EisMatrix.identity().scale(OMEGA),
        (g["S"] * g["T2"]) ** 4 == EisMatrix.identity().scale(OMEGA),
    ]
    form = g["J"]
    for name in sorted(g):
        if name != "J":
            m = g[name]
            results.append(m.conj_transpose() * form * m == form)
    words = {
        "g1": (("U1", -4), ("T1", -1), ("T2", -2)),
        "g2": (("U1", -4), ("T1", -2), ("T2", -1)),
        "g3": (("U1", 4),),
        "g5": (("S", 3), ("U1", -4), ("T1", -1), ("T2", 1), ("S", 3)),
    }
    for name, w in words.items():
        results.append(word_product(w) == g[name])
    g4 = (
        word_product((("S", 3), ("commutator", 1), ("S", 3)))
        * (g["S"] ** 4 * g["U2"]).inv()
        * g["commutator"]
    )
    results.append(g4 == g["g4"])
    return (0.0 if all(results) else 1.0), len(results)


def _check_invariance(rng, n):
    worst, done = 0.0, 0
    gens = generators()
    while done < n:
        u = random_map(rng)
        m = gens[_GEN_NAMES[rng.integers(len(_GEN_NAMES))]].to_numpy()
        den = m[2, 0] * u.u1 + m[2, 1] * u.u2 + m[2, 2]
        if abs(den.value) < 0.2:
            continue
        v1 = (m[0, 0] * u.u1 + m[0, 1] * u.u2 + m[0, 2]) / den
        v2 = (m[1, 0] * u.u1 + m[1, 1] * u.u2 + m[1, 2]) / den
        base = deriv_quad(u).vector()
        diff = np.abs(deriv_quad(MapJet2(v1, v2)).vector() - base).max()
        worst = max(worst, diff / max(1.0, np.abs(base).max()))
        done += 1
    return worst, n


def _check_vanishing(rng, n):
    worst = 0.0
    gens = generators()
    for k in range(n):
        g = gens[_GEN_NAMES[k % len(_GEN_NAMES)]]
        z = _safe_lft_point(rng, g)
        worst = max(worst, deriv_quad(lft_map(g, z)).max_abs())
    return worst, n


def _check_chain_rule(rng, n):
    worst = 0.0
    for _ in range(n):
        w, u = random_map(rng), random_map(rng)
        lhs = deriv_quad(compose_maps(u, w)).vector()
        rhs = chain_rule_rhs(deriv_quad(u), w).vector()
        worst = max(worst, np.abs(lhs - rhs).max())
    return worst, n


def _check_cocycle(rng, n):
    worst = 0.0
    for _ in range(n):
        w, u = random_map(rng), random_map(rng)
        lhs = transport_matrix(w) @ transport_matrix(u)
        worst = max(worst, np.abs(lhs - transport_matrix(compose_maps(u, w))).max())
    return worst, n


def _check_cocycle_u(rng, n):
    worst = 0.0
    cs = (0.0, 1.0, 2.5)
    for k in range(n):
        c = cs[k % 3]
        w, u = random_map(rng), random_map(rng)
        lhs = ExtendedTransport(w, c).matrix() @ ExtendedTransport(u, c).matrix()
        rhs = ExtendedTransport(compose_maps(u, w), c).matrix()
        worst = max(worst, np.abs(lhs - rhs).max())
    return worst, n


def _check_second_argument(rng, n):
    worst = 0.0
    gens = generators()
    for k in range(n):
        g = gens[_GEN_NAMES[k % len(_GEN_NAMES)]]
        z = _safe_lft_point(rng, g)
        u = random_map(rng)
        lhs = deriv_quad(compose_maps(u, lft_map(g, z))).vector()
        rhs = second_arg_transform(deriv_quad(u), g, z).vector()
        worst = max(worst, np.abs(lhs - rhs).max())
    return worst, n


def _check_jacobian_deformation(rng, n):
    worst = 0.0
    for _ in range(n):
        zm = random_map(rng)
        f1h, f2h = random_map(rng).u1, random_map(rng).u2
        lhs = jacobian_deformation(f1h, f2h, zm)
        f1w, f2w = transported_pair(f1h, f2h, zm)
        rhs = _det_of_pair(f1w, f2w) / zm.jacobian_value()
        worst = max(worst, abs(lhs - rhs))
    return worst, n


def _check_exp_oracle(rng, n):
    worst, done = 0.0, 0
    while done < n:
        pts = rng.uniform(-1, 1, size=(3, 2)) + 1j * rng.uniform(-1, 1, size=(3, 2))
        pairs = [tuple(row) for row in pts]
        try:
            _, _, _, predicted = exp_system_oracle(pairs)
        except ValueError:
            continue
        m = exp_solution_map(pairs, base=(0.05, -0.03))
        worst = max(worst, np.abs(deriv_quad(m).vector() - predicted.vector()).max())
        done += 1
    return worst, n


def _check_mt1(rng, n):
    worst = 0.0
    for _ in range(n):
        worst = max(worst, mt1_relative_residual(random_map(rng, order=3)))
    return worst, n


def _check_mt1_branch(rng, n):
    worst = 0.0
    for _ in range(n):
        m = random_map(rng, order=3)
        r0 = mt1_residuals(m)
        for branch in (1, 2):
            rb = mt1_residuals(m, branch=branch)
            phase = cmath.exp(2j * cmath.pi * branch / 3)
            worst = max(worst, max(abs(b - phase * a) for a, b in zip(r0, rb)))
    return worst, n


def _mt2_branch_runner(which):
    def run(rng, n):
        worst = 0.0
        for _ in range(n):
            v = _mt2_point(rng, which)
            for p in (PICARD, PICARD_MODULAR):
                rep = mt2_solution_residuals(p, v, which)
                vals = list(rep["w_residuals"]) + list(rep["z_residuals"])
                worst = max(worst, max(abs(r) for r in vals))
        return worst, n

    return run


def _check_mt2_picard(rng, n):
    worst = 0.0
    for _ in range(n):
        v = _mt2_point(rng, "lens")
        for p in (PICARD, PICARD_MODULAR):
            worst = max(worst, mt2_field_recovery_gap(p, v))
    return worst, n


def _check_mt2_picard_modular(rng, n):
    worst = 0.0
    coeff_sets = ((1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (2.0, -0.7 + 0.3j))
    for k in range(n):
        v = _mt2_point(rng, "lens")
        res = picard_modular_form_residuals(v, coeff_sets[k % len(coeff_sets)])
        worst = max(worst, max(abs(r) for r in res))
    return worst, n


def _check_f1_euler(rng, n):
    worst = 0.0
    params = (("1/3", "1/3", "1/3", 1), ("1/4", "1/4", "1/4", 1), ("2/3", "1/3", "1/3", "4/3"))
    for k in range(n):
        p = F1Params(*params[k % len(params)])
        x, y = _cpx(rng, 0.45), _cpx(rng, 0.45)
        worst = max(worst, abs(f1_series(p, x, y) - f1_euler(p, x, y)))
    return worst, n


def _check_f1_pde(rng, n):
    worst = 0.0
    params = (("1/3", "1/3", "1/3", 1), ("1/4", "1/4", "1/4", 1), ("2/3", "1/3", "1/3", "4/3"))
    for k in range(n):
        p = F1Params(*params[k % len(params)])
        r1, r2 = f1_pde_residual(p, _cpx(rng, 0.45), _cpx(rng, 0.45))
        worst = max(worst, abs(r1), abs(r2))
    return worst, n


def _gamma_modulus(rng):
    # outside the unit disc so the reciprocal-argument series converges,
    # with either a real value > 1 or a safely nonreal one (off the cut)
    while True:
        if rng.uniform() < 0.4:
            return complex(rng.uniform(1.5, 7), 0.0)
        sign = 1.0 if rng.uniform() < 0.5 else -1.0
        x = complex(rng.uniform(-6, 6), sign * rng.uniform(0.5, 3.5))
        if abs(x) >= 1.5:
            return x


def _check_f1_picard_gamma(rng, n):
    # cubed comparison: off the reals the principal branch drifts by a cube
    # root of unity, and cubing both sides removes it
    worst = 0.0
    for _ in range(n):
        x, y = _gamma_modulus(rng), _gamma_modulus(rng)
        lhs = picard_integral(x, y) ** 3
        rhs = picard_f1_identity_rhs(x, y) ** 3
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst, n


def _check_f1_k3(rng, n):
    worst = 0.0
    pref = gamma(1 / 3) * gamma(2 / 3)
    p = F1Params("1/3", "1/3", "1/3", 1)
    for _ in range(n):
        ki, kj = _cpx(rng, 0.45), _cpx(rng, 0.45)
        worst = max(worst, abs(k_integral(ki, kj) - pref * f1_series(p, ki, kj)))
    return worst, n


def _check_f1_beta(rng, n):
    return abs(k_integral(0.0, 0.0) - 2 * math.pi / math.sqrt(3)), 1


def _check_mt3(rng, n):
    worst, per_instance = 0.0, 10
    for _ in range(n):
        u, v = _moduli_instance(rng)
        done = 0
        while done < per_instance:
            t = _order5_point(rng, u)
            try:
                res = pullback_identity_check(u, v, t)
            except (ValueError, ZeroDivisionError):
                continue
            worst = max(worst, res)
            done += 1
    return worst, n * per_instance


def _check_mt3_constraint(rng, n):
    worst = 0.0
    for _ in range(n):
        u, v = _moduli_instance(rng)
        worst = max(worst, abs(transform_abg(u, v).constraint_residual()))
    return worst, n


def _check_j_orbit(rng, n):
    worst = 0.0
    fam1 = ("T", "S1", "S1T", "TS1", "S1TS1")
    fam2 = ("T", "S2", "S2T", "TS2", "S2TS2")
    for _ in range(n):
        l1, l2 = _safe_pair(rng)
        j1, j2 = j_invariants(l1, l2)
        for name in fam1:
            got = j_invariants(*s3_orbit(name, l1, l2))[0]
            worst = max(worst, abs(got - j1) / abs(j1))
        for name in fam2:
            got = j_invariants(*s3_orbit(name, l1, l2))[1]
            worst = max(worst, abs(got - j2) / abs(j2))
    return worst, n


def _check_param_table(rng, n):
    worst = 0.0
    p = ParamTriple(0.3 + 0.1j, -0.8, 1.1)
    per_row = max(1, n // 5)
    for row in (1, 2, 3, 4, 5):
        for _ in range(per_row):
            rep = param_table_check(row, p, _safe_pair(rng))
            worst = max(worst, rep["max_error"])
    return worst, 5 * per_row


def _check_sign_tables(rng, n):
    worst = 0.0
    for _ in range(n):
        x, y = _safe_pair(rng)
        worst = max(worst, f_sign_relations(x, y))
        worst = max(worst, p_transform_relations(0.3 + 0.1j, -0.8, 1.1, x, y))
    return worst, n


def _p4_runner(section):
    def run(rng, n):
        rep = eta_variant_identities()[section]
        return (0.0 if rep["ok"] else 1.0), len(rep["rows"])

    return run


def _check_eta_ledger(rng, n):
    ok = ledger_multipliers() == _LEDGER_EXPECTED
    return (0.0 if ok else 1.0), len(_LEDGER_EXPECTED)


def _check_eta36(rng, n):
    worst = 0.0
    gens = generators()
    cell = word_product((("commutator", 3),))
    for _ in range(n):
        z = _eta_domain_point(rng)
        worst = max(worst, eta36_transform_check(gens["S"], s_invariant_map, z))
        worst = max(worst, eta36_transform_check(cell, translation_invariant_map, z))
    return worst, n


def _check_mt4(rng, n):
    worst = 0.0
    half = max(1, n // 2)
    for _ in range(half):
        f = EvoFields.constant(_cpx(rng), _cpx(rng), _cpx(rng), _cpx(rng))
        r1, r2 = mt4_residuals(f)
        worst = max(worst, abs(r1), abs(r2))
    for _ in range(n - half):
        f = EvoFields.shear(_cpx(rng), _cpx(rng), _cpx(rng))
        r1, r2 = mt4_residuals(f)
        worst = max(worst, abs(r1), abs(r2))
    return worst, n


def _check_mt4_galilean(rng, n):
    worst = 0.0
    for _ in range(n):
        f = EvoFields.random(rng, order=3)
        worst = max(worst, galilean_covariance_check(f, *rng.uniform(-1.5, 1.5, 4)))
    return worst, n


_MT4_MATS = (
    np.array([[2, 1, 0], [1, 1, 1], [1, 0, 3]], dtype=np.complex128),
    np.array([[1, 0, 1j], [0.5, 2, 0], [0, 0.3, 2]], dtype=np.complex128),
)


def _random_evo_pair(rng, order=3):
    xs = [Jet.variable(4, order, k, base=b) for k, b in enumerate(rng.uniform(-0.8, 0.8, 4))]

    def poly():
        out = Jet.constant(4, order, _cpx(rng, 0.6))
        for v in xs:
            out = out + _cpx(rng, 0.6) * v
        return out + _cpx(rng, 0.6) * xs[0] * xs[1] + _cpx(rng, 0.6) * xs[1] * xs[3]

    return (xs[0] + 0.3 * poly(), xs[1] + 0.3 * poly())


def _check_mt4_invariance(rng, n):
    worst, done = 0.0, 0
    while done < n:
        u = _random_evo_pair(rng)
        try:
            ut = transformed_pair(_MT4_MATS[done % 2], u)
            for which in ("t1", "t2"):
                qa, qb = evo_quotients(u, which), evo_quotients(ut, which)
                worst = max(worst, abs(qa[0] - qb[0]), abs(qa[1] - qb[1]))
            va = deriv_quad(MapJet2(u[0], u[1], active=(0, 1))).values()
            vb = deriv_quad(MapJet2(ut[0], ut[1], active=(0, 1))).values()
        except ZeroDivisionError:
            continue
        worst = max(worst, max(abs(a - b) for a, b in zip(va, vb)))
        done += 1
    return worst, n


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CheckDef:
    id: str
    suite: str
    anchor: str
    tolerance: float  # 0.0 marks an exact (integer/rational arithmetic) check
    samples: int
    run: object


CHECKS = (
    CheckDef("group-algebra", "group", "generator word and unitarity identities", 0.0, 0, _check_group_algebra),
    CheckDef("invariance", "derivs", "quad invariance under linear fractional maps", 1e-10, 50, _check_invariance),
    CheckDef("vanishing", "derivs", "quad vanishes on linear fractional pairs", 1e-10, 50, _check_vanishing),
    CheckDef("chain-rule", "derivs", "composition chain rule for the quad", 1e-9, 20, _check_chain_rule),
    CheckDef("cocycle", "derivs", "transport matrix multiplicativity", 1e-9, 20, _check_cocycle),
    CheckDef("cocycle-u", "derivs", "extended transport multiplicativity", 1e-9, 20, _check_cocycle_u),
    CheckDef("second-argument", "derivs", "base-change transform of the quad", 1e-9, 20, _check_second_argument),
    CheckDef("jacobian-deformation", "derivs", "determinant transport of pair fields", 1e-9, 20, _check_jacobian_deformation),
    CheckDef("exp-oracle", "derivs", "exponential solution family oracle", 1e-10, 10, _check_exp_oracle),
    CheckDef("MT1", "pde", "cube-root-of-Jacobian linear system", 1e-8, 20, _check_mt1),
    CheckDef("MT1-branch", "pde", "branch covariance of the residuals", 1e-12, 5, _check_mt1_branch),
    CheckDef("MT2-first", "pde", "first-branch closed-form solutions", 1e-8, 10, _mt2_branch_runner("first")),
    CheckDef("MT2-second", "pde", "second-branch closed-form solutions", 1e-8, 10, _mt2_branch_runner("second")),
    CheckDef("MT2-picard", "pde", "field recovery from solution gradients", 1e-7, 5, _check_mt2_picard),
    CheckDef("MT2-picard-modular", "pde", "power-product form rebuilt from F1", 1e-8, 5, _check_mt2_picard_modular),
    CheckDef("F1-euler", "f1", "double series vs Euler integral", 1e-8, 50, _check_f1_euler),
    CheckDef("F1-pde", "f1", "hypergeometric system residuals", 1e-8, 20, _check_f1_pde),
    CheckDef("F1-picard-gamma", "f1", "period integral Gamma-factor identity", 1e-6, 10, _check_f1_picard_gamma),
    CheckDef("F1-k3", "f1", "K-integral as an F1 value", 1e-6, 10, _check_f1_k3),
    CheckDef("F1-beta", "f1", "Beta special value 2*pi/sqrt(3)", 1e-10, 1, _check_f1_beta),
    CheckDef("MT3", "picard", "order-5 pullback identity, cubed form", 1e-10, 10, _check_mt3),
    CheckDef("MT3-constraint", "picard", "coefficient normalization constraint", 1e-12, 50, _check_mt3_constraint),
    CheckDef("J-orbit", "picard", "moduli invariants constant on orbits", 1e-10, 50, _check_j_orbit),
    CheckDef("param-table", "picard", "parameter rows under moduli swaps", 1e-10, 50, _check_param_table),
    CheckDef("sign-tables", "picard", "sign and prefactor relations", 1e-12, 100, _check_sign_tables),
    CheckDef("P4.1", "eta", "variant identities: translations", 0.0, 0, _p4_runner("P4.1")),
    CheckDef("P4.2", "eta", "variant identities: lattice generators", 0.0, 0, _p4_runner("P4.2")),
    CheckDef("P4.3", "eta", "variant identities: scaled conjugates", 0.0, 0, _p4_runner("P4.3")),
    CheckDef("P4.4", "eta", "quotient transformation laws", 0.0, 0, _p4_runner("P4.4")),
    CheckDef("P4.5", "eta", "quotient translation laws", 0.0, 0, _p4_runner("P4.5")),
    CheckDef("P4.6", "eta", "quotient cube laws", 0.0, 0, _p4_runner("P4.6")),
    CheckDef("eta-ledger", "eta", "phase multiplier table as exact rationals", 0.0, 0, _check_eta_ledger),
    CheckDef("eta36", "eta", "transformation law of the 36th power", 1e-9, 10, _check_eta36),
    CheckDef("MT4", "evolution", "field equations on solution families", 1e-12, 10, _check_mt4),
    CheckDef("MT4-galilean", "evolution", "drift covariance on arbitrary fields", 1e-10, 10, _check_mt4_galilean),
    CheckDef("MT4-invariance", "evolution", "quotients invariant under the group", 1e-10, 10, _check_mt4_invariance),
)

SUITES = {}
for _c in CHECKS:
    SUITES.setdefault(_c.suite, []).append(_c.id)


def available_suites() -> dict:
    return {k: tuple(v) for k, v in SUITES.items()}


def run_suites(suites=("all",), seed: int = 42, samples=None, tol_overrides=None) -> dict:
    """Run the selected suites and assemble the deterministic report."""
    names = list(suites) if suites else ["all"]
    if "all" in names:
        chosen = {c.id for c in CHECKS}
    else:
        chosen = set()
        for s in names:
            if s not in SUITES:
                raise ValueError(
                    f"unknown suite {s!r}; available: {', '.join(sorted(SUITES))}, all"
                )
            chosen.update(SUITES[s])

    env_tol = os.environ.get(TOL_ENV)
    env_tol = float(env_tol) if env_tol else None
    overrides = {k: float(v) for k, v in (tol_overrides or {}).items()}
    unknown = set(overrides) - {c.id for c in CHECKS}
    if unknown:
        raise ValueError(f"tolerance override for unknown check(s): {sorted(unknown)}")

    entries = []
    for c in sorted(CHECKS, key=lambda c: c.id):
        if c.id not in chosen:
            continue
        tol = c.tolerance
        if env_tol is not None and tol > 0:
            tol = env_tol
        if c.id in overrides:
            tol = overrides[c.id]
        n = c.samples
        if samples is not None and c.tolerance > 0:
            n = max(1, int(samples))
        rng, sub = _rng(seed, c.id)
        residual, used = c.run(rng, n)
        entries.append(
            {
                "id": c.id,
                "anchor": c.anchor,
                "residual": float(residual),
                "tolerance": float(tol),
                "pass": bool(residual <= tol),
                "samples": int(used),
                "seed": sub,
            }
        )

    passed = sum(1 for e in entries if e["pass"])
    return {
        "schema": SCHEMA,
        "seed": int(seed),
        "suites": sorted(set(names)),
        "checks": entries,
        "summary": {
            "total": len(entries),
            "passed": passed,
            "failed": len(entries) - passed,
        },
    }


def render_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for e in report["checks"]:
        status = "PASS" if e["pass"] else "FAIL"
        lines.append(
            f"{status}  {e['id']:<20} residual {e['residual']:.3e}  "
            f"tol {e['tolerance']:.1e}  n={e['samples']}"
        )
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} checks passed (seed {report['seed']})")
    return "\n".join(lines) + "\n"
