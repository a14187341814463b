"""Pure-Python jet kernel, drop-in twin of the compiled _jetcore module."""

import numpy as np

BACKEND = "pure"


def mul_into(out, a, b, ti, tj, tk):
    """out[tk] += a[ti] * b[tj] over precomputed index triples."""
    np.add.at(out, tk, a[ti] * b[tj])
