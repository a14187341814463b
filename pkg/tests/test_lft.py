"""Exact Eisenstein algebra, generator zoo, Heisenberg lattice, LFT action."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from gl3schwarz.lft import (
    FIXED_POINTS,
    OMEGA,
    OMEGA_BAR,
    OMEGA_C,
    T1_HEIS,
    T2_HEIS,
    Eis,
    EisMatrix,
    HeisenbergElem,
    act,
    act_jets,
    decompose_heisenberg,
    generators,
    generators_json,
    heisenberg_inv,
    heisenberg_mul,
    jacobian_factor,
    rho,
    verify_word,
    word_product,
)

G = generators()
I3 = EisMatrix.identity()
UNITARY = ["T1", "T2", "S", "U1", "U2", "g1", "g2", "g3", "g4", "g5"]


class TestEis:
    def test_ring_relations(self):
        w = OMEGA
        assert w * w == -1 - w
        assert w * w * w == Eis(1, 0)
        assert w.conj() == OMEGA_BAR
        assert Eis(3, 5).conj() == Eis(3 - 5, -5)

    def test_norm_and_division(self):
        x = Eis(2, -1)
        assert x.norm() == Fraction(7)
        assert x / x == Eis(1, 0)
        y = (1 - OMEGA) / 3
        assert y * 3 == 1 - OMEGA
        assert y == 1 / (1 - OMEGA_BAR)

    def test_to_complex(self):
        assert abs(OMEGA.to_complex() - OMEGA_C) < 1e-15
        assert abs(Eis(1, 2).to_complex() - (1 + 2 * OMEGA_C)) < 1e-15

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Eis(1, 0) / Eis(0, 0)


class TestEisMatrix:
    def test_inverse_round_trip(self):
        for name in UNITARY:
            g = G[name]
            assert g * g.inv() == I3
            assert g.inv() * g == I3

    def test_det_multiplicative(self):
        a, b = G["g4"], G["T2"]
        assert (a * b).det() == a.det() * b.det()

    def test_pow_negative(self):
        t = G["T1"]
        assert t**-2 == t.inv() * t.inv()
        assert t**0 == I3

    def test_embedding(self):
        m = G["S"].to_numpy()
        wb = OMEGA_C.conjugate()
        assert np.allclose(m, [[0, 0, -wb], [0, wb, 0], [-wb, 0, 0]])


class TestGenerators:
    def test_commutator_value(self):
        wb, w = OMEGA_BAR, OMEGA
        assert G["commutator"] == EisMatrix([[1, 0, wb - w], [0, 1, 0], [0, 0, 1]])

    def test_J_antidiagonal(self):
        assert G["J"] == EisMatrix([[0, 0, 1], [0, -1, 0], [1, 0, 0]])

    def test_g3_diagonal(self):
        assert G["g3"] == EisMatrix.diag(1, OMEGA, 1)

    def test_unitarity(self):
        # g* J g = J, exactly
        J = G["J"]
        for name in UNITARY:
            g = G[name]
            assert g.conj_transpose() * J * g == J, name

    def test_scalar_identities(self):
        w = OMEGA
        assert G["S"] ** 2 == I3.scale(w)
        assert G["S"] ** 6 == I3
        assert (G["S"] * G["T1"]) ** 4 == I3.scale(w)
        assert (G["S"] * G["T2"]) ** 4 == I3.scale(w)
        assert G["U2"] ** 3 == I3.scale(-1)
        assert (G["U1"] * G["U2"]) ** 3 == EisMatrix.diag(-1, 1, -1)

    def test_diagonal_scalar_table(self):
        # every unit-diagonal case is a word in S, U1, U2
        w, wb = OMEGA, OMEGA_BAR
        S, U1 = G["S"], G["U1"]
        table = {
            (1, 1, 1): S**6,
            (w, 1, w): S**2 * U1**2,
            (wb, 1, wb): (S**2 * U1**2) ** 2,
            (1, w, 1): U1**4,
            (w, w, w): S**2,
            (wb, w, wb): S**4 * U1**2,
            (1, wb, 1): U1**2,
            (w, wb, w): (S**4 * U1**2) ** 2,
            (wb, wb, wb): S**4,
        }
        for (d1, d2, d3), word in table.items():
            assert EisMatrix.diag(d1, d2, d3) == word
        assert G["U1"] ** 4 == G["U2"] ** 4
        assert G["U1"] ** 2 == G["U2"] ** 2
        assert G["U1"] ** 2 * G["U2"] ** 3 * G["S"] ** 2 == EisMatrix.diag(-w, -1, -w)

    def test_json_export(self):
        data = generators_json()
        assert set(data) == set(G)
        assert data["g3"][1][1] == [0, 1]  # omega as (a, b)
        rebuilt = EisMatrix([[Eis(a, b) for a, b in row] for row in data["g4"]])
        assert rebuilt == G["g4"]


class TestWords:
    def test_g1_g2_g3(self):
        assert verify_word(G["g1"], [("U1", -4), ("T1", -1), ("T2", -2)])
        assert verify_word(G["g2"], [("U1", -4), ("T1", -2), ("T2", -1)])
        assert verify_word(G["g3"], [("U1", 4)])

    def test_g4_g5(self):
        S3 = G["S"] ** 3
        tail = (G["S"] ** 4 * G["U2"]).inv()
        word = [(S3, 1), ("commutator", 1), (S3, 1), (tail, 1), ("commutator", 1)]
        assert verify_word(G["g4"], word)
        word5 = [(S3, 1), ("U1", -4), ("T1", -1), ("T2", 1), (S3, 1)]
        assert verify_word(G["g5"], word5)

    def test_mismatch_is_false(self):
        assert not verify_word(G["T1"], [("T2", 1)])

    def test_s3_conjugations(self):
        # S^3 swaps the upper and lower unipotent one-parameter subgroups
        wb, w = OMEGA_BAR, OMEGA
        S3 = G["S"] ** 3
        assert S3 == EisMatrix([[0, 0, -1], [0, 1, 0], [-1, 0, 0]])
        for k in (1, 2, 3, -1):
            lower = EisMatrix([[1, 0, 0], [0, 1, 0], [k * (wb - w), 0, 1]])
            assert S3 * G["commutator"] ** k * S3 == lower
        assert S3 * G["T1"] ** -1 * S3 == EisMatrix([[1, 0, 0], [1, 1, 0], [-wb, 1, 1]])


class TestAction:
    def test_identity(self):
        z = (0.3 + 0.1j, -0.2 + 0.7j)
        assert act(np.eye(3), z) == z

    def test_printed_actions(self):
        z = (0.37 + 0.21j, -0.44 + 0.93j)
        w = OMEGA_C
        assert np.allclose(act(G["S"], z), (1 / z[0], -z[1] / z[0]))
        assert np.allclose(act(G["T1"], z), (z[0] + z[1] - w, z[1] + 1))
        assert np.allclose(act(G["T2"], z), (z[0] + w * z[1] - w, z[1] + w.conjugate()))
        assert np.allclose(act(G["U1"], z), (z[0], -w * z[1]))
        assert np.allclose(act(G["U2"], z), (z[0], w * z[1]))

    def test_group_action_property(self):
        rng = np.random.default_rng(7)
        names = list(G)
        for _ in range(100):
            g1 = G[names[rng.integers(len(names))]]
            g2 = G[names[rng.integers(len(names))]]
            z = (
                complex(1 + rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)),
                complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)),
            )
            lhs = act(g1 * g2, z)
            rhs = act(g1, act(g2, z))
            assert np.allclose(lhs, rhs, atol=1e-12)

    def test_vanishing_denominator(self):
        with pytest.raises(ZeroDivisionError):
            act(G["S"], (0.0, 0.5))


class TestJacobianFactor:
    def test_identity(self):
        assert jacobian_factor(np.eye(3), (0.4, 0.1j)) == 1

    def test_constant_diagonal(self):
        d = EisMatrix.diag(3, 1 - OMEGA, 1)
        expect = 3 * (1 - OMEGA_C)
        assert abs(jacobian_factor(d, (0.2, 0.3)) - expect) < 1e-14

    def test_matches_jet_jacobian(self):
        rng = np.random.default_rng(11)
        names = ["T1", "S", "g4", "g5", "g1"]
        for name in names:
            z = (
                complex(1 + rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)),
                complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)),
            )
            a1, a2 = act_jets(G[name], z)
            jac = a1.partial((1, 0)) * a2.partial((0, 1)) - a1.partial((0, 1)) * a2.partial((1, 0))
            assert abs(jac - jacobian_factor(G[name], z)) < 1e-12

    def test_cocycle(self):
        rng = np.random.default_rng(13)
        for _ in range(30):
            names = list(G)
            g1 = G[names[rng.integers(len(names))]]
            g2 = G[names[rng.integers(len(names))]]
            z = (
                complex(1 + rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)),
                complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)),
            )
            lhs = jacobian_factor(g1 * g2, z)
            rhs = jacobian_factor(g1, act(g2, z)) * jacobian_factor(g2, z)
            assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


class TestRho:
    def test_values(self):
        assert abs(rho((1, 0)) - 2) < 1e-14
        assert abs(rho(FIXED_POINTS["minus"]) - 2 * (3**0.5 - 1)) < 1e-12
        assert abs(rho(FIXED_POINTS["omega_pair"]) + 2) < 1e-12
        assert abs(rho(FIXED_POINTS["plus"]) + 2 + 2 * 3**0.5) < 1e-12

    def test_fixed_point_equation(self):
        # z1 + z2 - omega = 1/z1 at the interior fixed point: T1(z) = S(z)
        for key in ("minus", "omega_pair"):
            z = FIXED_POINTS[key]
            assert np.allclose(act(G["T1"], z), act(G["S"], z), atol=1e-12)


class TestHeisenberg:
    def test_group_law_matches_matrices(self):
        pairs = [
            (T1_HEIS, T2_HEIS),
            (T2_HEIS, T1_HEIS),
            (HeisenbergElem.from_alpha_q(Eis(2, -1), 3), T1_HEIS),
        ]
        for n1, n2 in pairs:
            prod = heisenberg_mul(n1, n2)
            assert prod.to_matrix() == n1.to_matrix() * n2.to_matrix()

    def test_inverse(self):
        x = HeisenbergElem.from_alpha_q(Eis(2, -1), 3)
        e = heisenberg_mul(x, heisenberg_inv(x))
        assert e.alpha.is_zero() and e.p == 0 and e.q == 0

    def test_center_is_additive(self):
        a = HeisenbergElem(Eis(0, 0), 0, 2)
        b = HeisenbergElem(Eis(0, 0), 0, -5)
        c = heisenberg_mul(a, b)
        assert c.alpha.is_zero() and (c.p, c.q) == (0, -3)

    def test_condition_enforced(self):
        with pytest.raises(ValueError):
            HeisenbergElem(Eis(1, 0), 0, 0)  # beta + conj(beta) != norm(alpha)

    def test_t1_decomposition(self):
        assert T1_HEIS.beta() == -OMEGA
        assert decompose_heisenberg(T1_HEIS) == (1, 0, -1)

    def test_t2_decomposition(self):
        assert decompose_heisenberg(T2_HEIS) == (0, 1, -1)

    def test_central_element(self):
        center = HeisenbergElem(Eis(0, 0), 0, -2)  # beta = omegabar - omega
        assert center.beta() == OMEGA_BAR - OMEGA
        m, n, l = decompose_heisenberg(center)
        assert (m, n) == (0, 0)
        assert -l - m - n - m * n == 1

    def test_round_trips(self):
        for m0, n0, l0 in itertools.product(range(-5, 6, 2), range(-5, 6, 2), range(-5, 6, 2)):
            word = [("T1", m0), ("T2", n0), ("commutator", -l0 - m0 - n0 - m0 * n0)]
            target = word_product(word)
            beta = target.m[0][2]
            elem = HeisenbergElem(Eis(m0, n0), int(2 * beta.a - beta.b), int(beta.b))
            assert elem.to_matrix() == target
            assert decompose_heisenberg(elem) == (m0, n0, l0)
