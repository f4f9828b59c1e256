# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernel for factored meromorphic products.

The inner loop of contour residues and path quadrature is the pointwise
evaluation of coeff * prod(factor**exp) over arrays of complex nodes;
this module provides that loop in C.  `spheremin._kernels_py` is the
drop-in fallback.
"""

BACKEND = "cython"


cdef inline double complex ipow(double complex base, long e) noexcept:
    cdef double complex r = 1.0
    cdef double complex b = base
    cdef long n = e if e >= 0 else -e
    while n:
        if n & 1:
            r = r * b
        b = b * b
        n >>= 1
    if e < 0:
        r = 1.0 / r
    return r


def eval_product(double complex coeff,
                 long[::1] kinds, long[::1] ks,
                 double complex[::1] cs, long[::1] exps,
                 double complex[::1] z, double complex[::1] out):
    """Evaluate coeff * prod(factor**exp) at every point of `z` into `out`."""
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = kinds.shape[0]
    cdef double complex acc, base
    for i in range(n):
        acc = coeff
        for j in range(m):
            if kinds[j] == 0:
                base = z[i]
            else:
                base = ipow(z[i], ks[j]) - cs[j]
            acc = acc * ipow(base, exps[j])
        out[i] = acc
    return out
