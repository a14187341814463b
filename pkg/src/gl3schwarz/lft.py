"""GL(3, C) linear fractional action on C^2 and exact Eisenstein-integer algebra.

The exact layer (Eis, EisMatrix) carries the generator zoo, word
verification, and the Heisenberg-lattice decomposition; the numeric layer
(act, jacobian_factor) drives everything downstream that samples points.

omega = e^{2 pi i/3} = (-1+sqrt(-3))/2 throughout; conj(a+b*omega) =
(a-b) - b*omega; omegabar - omega = -sqrt(-3).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .jets import Jet

OMEGA_C = complex(-0.5, 3**0.5 / 2)
SQRTM3_C = complex(0.0, 3**0.5)


class Eis:
    """a + b*omega with exact rational a, b (integral for lattice elements)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, other):
        other = _lift(other)
        return Eis(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        return Eis(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _lift(other) - self

    def __neg__(self):
        return Eis(-self.a, -self.b)

    def __mul__(self, other):
        other = _lift(other)
        # omega^2 = -1 - omega
        return Eis(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a - self.b * other.b,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Eisenstein number")
        num = self * other.conj()
        return Eis(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        return _lift(other) / self

    def __eq__(self, other):
        try:
            other = _lift(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def conj(self) -> "Eis":
        return Eis(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def to_complex(self) -> complex:
        return complex(self.a) + complex(self.b) * OMEGA_C

    def __repr__(self):
        return f"Eis({self.a}, {self.b})"


def _lift(x) -> Eis:
    if isinstance(x, Eis):
        return x
    if isinstance(x, (int, Fraction)):
        return Eis(x, 0)
    raise TypeError(f"cannot coerce {type(x).__name__} to Eis")


#: Lattice elements have integer a, b; the class itself is exact over Q(omega).
EisInt = Eis

#: 3x3 complex ndarray with rows (a1 a2 a3; b1 b2 b3; c1 c2 c3).
Gl3Matrix = np.ndarray

OMEGA = Eis(0, 1)
OMEGA_BAR = Eis(-1, -1)
SQRTM3 = Eis(1, 2)  # omega - omegabar = sqrt(-3)


class EisMatrix:
    """3x3 matrix over Q(omega), exact."""

    __slots__ = ("m",)

    def __init__(self, rows):
        self.m = tuple(tuple(_lift(x) for x in row) for row in rows)
        if len(self.m) != 3 or any(len(r) != 3 for r in self.m):
            raise ValueError("EisMatrix needs 3x3 entries")

    @classmethod
    def diag(cls, d1, d2, d3):
        return cls([[d1, 0, 0], [0, d2, 0], [0, 0, d3]])

    @classmethod
    def identity(cls):
        return cls.diag(1, 1, 1)

    def __mul__(self, other):
        if not isinstance(other, EisMatrix):
            return NotImplemented
        a, b = self.m, other.m
        return EisMatrix(
            [
                [sum((a[i][k] * b[k][j] for k in range(3)), Eis()) for j in range(3)]
                for i in range(3)
            ]
        )

    def scale(self, c) -> "EisMatrix":
        c = _lift(c)
        return EisMatrix([[c * x for x in row] for row in self.m])

    def __eq__(self, other):
        if not isinstance(other, EisMatrix):
            return NotImplemented
        return self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def det(self) -> Eis:
        m = self.m
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def inv(self) -> "EisMatrix":
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        m = self.m
        cof = [
            [
                m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
                for j in range(3)
            ]
            for i in range(3)
        ]
        # adjugate = transpose of cofactors
        return EisMatrix([[cof[j][i] / d for j in range(3)] for i in range(3)])

    def __pow__(self, n: int) -> "EisMatrix":
        if n < 0:
            return self.inv() ** (-n)
        out = EisMatrix.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj_transpose(self) -> "EisMatrix":
        return EisMatrix([[self.m[j][i].conj() for j in range(3)] for i in range(3)])

    def is_integral(self) -> bool:
        return all(x.is_integral() for row in self.m for x in row)

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[x.to_complex() for x in row] for row in self.m], dtype=np.complex128
        )

    def __repr__(self):
        return f"EisMatrix({[[repr(x) for x in row] for row in self.m]})"


def _build_generators() -> dict[str, EisMatrix]:
    w, wb = OMEGA, OMEGA_BAR
    T1 = EisMatrix([[1, 1, -w], [0, 1, 1], [0, 0, 1]])
    T2 = EisMatrix([[1, w, -w], [0, 1, wb], [0, 0, 1]])
    S = EisMatrix([[0, 0, -wb], [0, wb, 0], [-wb, 0, 0]])
    U1 = EisMatrix.diag(1, -w, 1)
    U2 = EisMatrix.diag(-1, -w, -1)
    J = EisMatrix([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    comm = T1 * T2 * T1.inv() * T2.inv()
    g1 = EisMatrix([[1, wb - w, 1 - wb], [0, wb, 1 - w], [0, 0, 1]])
    g2 = EisMatrix([[1, wb - 1, 1 - wb], [0, wb, 1 - wb], [0, 0, 1]])
    g3 = EisMatrix.diag(1, w, 1)
    g4 = EisMatrix([[-w, 0, wb - 1], [0, -1, 0], [wb - 1, 0, 2 * w]])
    g5 = EisMatrix([[1, 0, 0], [wb - w, wb, 0], [1 - wb, 1 - w, 1]])
    return {
        "T1": T1,
        "T2": T2,
        "S": S,
        "U1": U1,
        "U2": U2,
        "J": J,
        "commutator": comm,
        "g1": g1,
        "g2": g2,
        "g3": g3,
        "g4": g4,
        "g5": g5,
    }


_GENERATORS = _build_generators()


def generators() -> dict[str, EisMatrix]:
    return dict(_GENERATORS)


def generators_json() -> dict:
    """Generator set with entries as exact (a, b) integer pairs for a + b*omega."""
    return {
        name: [[[int(x.a), int(x.b)] for x in row] for row in g.m]
        for name, g in _GENERATORS.items()
    }


def word_product(word) -> EisMatrix:
    """Product of (generator-name-or-EisMatrix, integer exponent) pairs."""
    out = EisMatrix.identity()
    for gen, exp in word:
        g = _GENERATORS[gen] if isinstance(gen, str) else gen
        out = out * g**exp
    return out


def verify_word(target: EisMatrix, word) -> bool:
    """Exact equality of target with the word product; no floating point."""
    return word_product(word) == target


def _as_numpy(g) -> np.ndarray:
    if isinstance(g, EisMatrix):
        return g.to_numpy()
    return np.asarray(g, dtype=np.complex128)


def act(g, z) -> tuple[complex, complex]:
    """((a.z)/(c.z), (b.z)/(c.z)) with rows of g as affine forms on (z1, z2, 1)."""
    m = _as_numpy(g)
    z1, z2 = z
    den = m[2, 0] * z1 + m[2, 1] * z2 + m[2, 2]
    if den == 0:
        raise ZeroDivisionError("linear fractional action: vanishing denominator")
    return (
        (m[0, 0] * z1 + m[0, 1] * z2 + m[0, 2]) / den,
        (m[1, 0] * z1 + m[1, 1] * z2 + m[1, 2]) / den,
    )


def act_jets(g, z, order: int = 3) -> tuple[Jet, Jet]:
    """Jets of the action of g at the point z."""
    m = _as_numpy(g)
    z1 = Jet.variable(2, order, 0, base=z[0])
    z2 = Jet.variable(2, order, 1, base=z[1])
    den = m[2, 0] * z1 + m[2, 1] * z2 + m[2, 2]
    return (
        (m[0, 0] * z1 + m[0, 1] * z2 + m[0, 2]) / den,
        (m[1, 0] * z1 + m[1, 1] * z2 + m[1, 2]) / den,
    )


def jacobian_factor(g, z) -> complex:
    """det of the 2x2 Jacobian of the action at z: Delta * (c.z)^{-3}."""
    if isinstance(g, EisMatrix):
        delta = g.det().to_complex()
        m = g.to_numpy()
    else:
        m = _as_numpy(g)
        delta = complex(np.linalg.det(m))
    z1, z2 = z
    den = m[2, 0] * z1 + m[2, 1] * z2 + m[2, 2]
    if den == 0:
        raise ZeroDivisionError("vanishing denominator")
    return delta / den**3


def rho(z) -> float:
    """z1 + conj(z1) - z2*conj(z2); positive on the domain S_2."""
    z1, z2 = complex(z[0]), complex(z[1])
    return (z1 + z1.conjugate() - z2 * z2.conjugate()).real


class HeisenbergElem:
    """[alpha, beta] with beta = (p + q*sqrt(-3))/2 exactly, p = norm(alpha)."""

    __slots__ = ("alpha", "p", "q")

    def __init__(self, alpha: Eis, p: int, q: int):
        alpha = _lift(alpha)
        if not alpha.is_integral():
            raise ValueError("alpha must be an Eisenstein integer")
        if Fraction(p) != alpha.norm():
            raise ValueError("beta + conj(beta) must equal alpha*conj(alpha)")
        self.alpha = alpha
        self.p = int(p)
        self.q = int(q)

    @classmethod
    def from_alpha_q(cls, alpha: Eis, q: int) -> "HeisenbergElem":
        alpha = _lift(alpha)
        return cls(alpha, int(alpha.norm()), q)

    def beta(self) -> Eis:
        # sqrt(-3) = 1 + 2*omega, so (p + q*sqrt(-3))/2 = (p + q)/2 + q*omega
        return Eis(Fraction(self.p + self.q, 2), self.q)

    def to_matrix(self) -> EisMatrix:
        return EisMatrix(
            [[1, self.alpha, self.beta()], [0, 1, self.alpha.conj()], [0, 0, 1]]
        )

    def __eq__(self, other):
        if not isinstance(other, HeisenbergElem):
            return NotImplemented
        return self.alpha == other.alpha and self.p == other.p and self.q == other.q

    def __repr__(self):
        return f"HeisenbergElem(alpha={self.alpha!r}, beta=({self.p}+{self.q}*sqrt(-3))/2)"


def heisenberg_mul(n1: HeisenbergElem, n2: HeisenbergElem) -> HeisenbergElem:
    """[a1, b1][a2, b2] = [a1+a2, b1+b2+a1*conj(a2)]."""
    alpha = n1.alpha + n2.alpha
    cross = n1.alpha * n2.alpha.conj()
    # a + b*omega = (2a - b)/2 + (b/2) sqrt(-3)
    p = n1.p + n2.p + int(2 * cross.a - cross.b)
    q = n1.q + n2.q + int(cross.b)
    return HeisenbergElem(alpha, p, q)


def heisenberg_inv(n: HeisenbergElem) -> HeisenbergElem:
    """[alpha, beta]^{-1} = [-alpha, conj(beta)]."""
    return HeisenbergElem(-n.alpha, n.p, -n.q)


T1_HEIS = HeisenbergElem.from_alpha_q(Eis(1, 0), -1)  # beta = -omega
T2_HEIS = HeisenbergElem.from_alpha_q(OMEGA, -1)  # beta = -omega


def decompose_heisenberg(elem: HeisenbergElem) -> tuple[int, int, int]:
    """(m, n, l) with T1^m T2^n [T1,T2]^{-l-m-n-mn} equal to elem, exactly."""
    if elem.alpha.a.denominator != 1 or elem.alpha.b.denominator != 1:
        raise ValueError("alpha not integral")
    m = int(elem.alpha.a)
    n = int(elem.alpha.b)
    num = elem.q - m - n - m * n
    if num % 2 != 0:
        raise ValueError("element not in the T1, T2 lattice (parity obstruction)")
    l = num // 2
    word = [("T1", m), ("T2", n), ("commutator", -l - m - n - m * n)]
    if not verify_word(elem.to_matrix(), word):
        raise AssertionError("decomposition failed to reproduce the element")
    return m, n, l


FIXED_POINTS = {
    # fixed point of S*T1 (solves z1 + z2 - omega = 1/z1 with z2 = regular value)
    "omega_pair": (OMEGA_C, OMEGA_C.conjugate()),
    "plus": (OMEGA_C * 1j, -OMEGA_C * 1j / (OMEGA_C * 1j + 1)),
    "minus": (-OMEGA_C * 1j, OMEGA_C * 1j / (1 - OMEGA_C * 1j)),
}
