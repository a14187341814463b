"""Pure and compiled multiplication kernels must agree to rounding error.

The C complex multiply may round differently from numpy by an ulp, so the
contract is tight allclose, not bit equality.
"""

import numpy as np
import pytest

from gl3schwarz import _jetpure
from gl3schwarz import jets

try:
    from gl3schwarz import _jetcore
except ImportError:
    _jetcore = None

needs_compiled = pytest.mark.skipif(
    _jetcore is None, reason="compiled kernel not built"
)


def random_pair(rng, n):
    def arr():
        return rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return arr(), arr()


def test_backend_reports_a_known_kernel():
    assert jets.BACKEND in ("pure", "cython")


@needs_compiled
@pytest.mark.parametrize("dim", [1, 2, 3, 4])
@pytest.mark.parametrize("order", [0, 1, 2, 3])
def test_kernels_agree(dim, order):
    ti, tj, tk = jets._mul_table(dim, order)
    n = len(jets.monomials(dim, order))
    rng = np.random.default_rng(1000 * dim + order)
    for _ in range(5):
        a, b = random_pair(rng, n)
        out_p = np.zeros(n, dtype=complex)
        out_c = np.zeros(n, dtype=complex)
        _jetpure.mul_into(out_p, a, b, ti, tj, tk)
        _jetcore.mul_into(out_c, a, b, ti, tj, tk)
        assert np.allclose(out_p, out_c, rtol=1e-13, atol=1e-14)


@needs_compiled
def test_jet_products_agree_across_kernels():
    rng = np.random.default_rng(9)
    n = len(jets.monomials(3, 3))
    coeffs_a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    coeffs_b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ti, tj, tk = jets._mul_table(3, 3)

    out_p = np.zeros(n, dtype=complex)
    out_c = np.zeros(n, dtype=complex)
    _jetpure.mul_into(out_p, coeffs_a, coeffs_b, ti, tj, tk)
    _jetcore.mul_into(out_c, coeffs_a, coeffs_b, ti, tj, tk)
    assert np.allclose(out_p, out_c, rtol=1e-13, atol=1e-14)

    # and the accumulation contract: += into a non-zero buffer
    seed = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    acc_p = seed.copy()
    acc_c = seed.copy()
    _jetpure.mul_into(acc_p, coeffs_a, coeffs_b, ti, tj, tk)
    _jetcore.mul_into(acc_c, coeffs_a, coeffs_b, ti, tj, tk)
    assert np.allclose(acc_p, acc_c, rtol=1e-13, atol=1e-14)
    assert not np.allclose(acc_p, out_p, rtol=1e-13, atol=1e-2)
