# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementations of the hot numerical kernels.

Same contracts as ``pykernels``; selected automatically at import when the
extension is available.
"""

from libc.math cimport sqrt, fabs

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def water_level(double[::1] alpha, int d):
    """Water level of a non-increasing vector in dimension ``d``.

    Returns ``(c, s)``: the flood level and the 0-based index of the first
    flooded entry.  Exact segment scan, no iteration.
    """
    cdef int n = alpha.shape[0]
    cdef double tail = 0.0, comp = 0.0, y, t
    cdef int i, s
    for i in range(d, n):
        y = alpha[i] - comp
        t = tail + y
        comp = (t - tail) - y
        tail = t

    cdef double acc = tail
    cdef double c = alpha[d - 1] + tail
    cdef int seg = d - 1
    for s in range(d - 1, -1, -1):
        acc += alpha[s]
        c = acc / (d - s)
        seg = s
        if s == 0 or c <= alpha[s - 1]:
            break
    return c, seg


def jacobi_eig(a_in, double tol=1e-13, int max_sweeps=50):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(w, v)`` with eigenvalues sorted non-increasing and matching
    eigenvectors as columns of ``v``.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.array(a_in, dtype=np.float64)
    cdef int n = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v = np.eye(n)
    if n == 1:
        return a[0, :1].copy(), v

    cdef double norm = 0.0, off, apq, diff, theta, tt, c, s, tmp1, tmp2
    cdef double thresh, small
    cdef int p, q, k, sweep
    for p in range(n):
        for q in range(n):
            norm += a[p, q] * a[p, q]
    norm = sqrt(norm)
    thresh = tol * (1.0 if norm < 1.0 else norm)
    small = thresh / (n * n)

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = sqrt(off)
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) <= small:
                    continue
                diff = a[q, q] - a[p, p]
                if fabs(apq) < 1e-300 * fabs(diff):
                    tt = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    tt = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        tt = -tt
                c = 1.0 / sqrt(tt * tt + 1.0)
                s = tt * c

                for k in range(n):
                    tmp1 = a[p, k]
                    tmp2 = a[q, k]
                    a[p, k] = c * tmp1 - s * tmp2
                    a[q, k] = s * tmp1 + c * tmp2
                for k in range(n):
                    tmp1 = a[k, p]
                    tmp2 = a[k, q]
                    a[k, p] = c * tmp1 - s * tmp2
                    a[k, q] = s * tmp1 + c * tmp2
                for k in range(n):
                    tmp1 = v[k, p]
                    tmp2 = v[k, q]
                    v[k, p] = c * tmp1 - s * tmp2
                    v[k, q] = s * tmp1 + c * tmp2

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]
