# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled jet kernel; gl3schwarz._jetpure is the pure-Python twin."""

BACKEND = "cython"


def mul_into(double complex[::1] out, double complex[::1] a,
             double complex[::1] b, int[::1] ti, int[::1] tj, int[::1] tk):
    """out[tk] += a[ti] * b[tj] over precomputed index triples."""
    cdef Py_ssize_t m, n = ti.shape[0]
    for m in range(n):
        out[tk[m]] = out[tk[m]] + a[ti[m]] * b[tj[m]]
