"""Pure Python/numpy implementations of the hot numerical kernels.

These mirror the Cython versions in ``_ckernels.pyx`` exactly; the test
suite checks both backends entry for entry.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def water_level(alpha: np.ndarray, d: int) -> tuple[float, int]:
    """Water level of a non-increasing vector in dimension ``d``.

    Returns ``(c, s)`` where ``c`` solves the flood equation
    ``sum_{i<d} max(c - alpha_i, 0) = sum_{i>=d} alpha_i`` and ``s`` is the
    0-based index of the first flooded entry.  Exact segment scan over the
    piecewise linear flood equation, no iteration.
    """
    n = alpha.shape[0]
    tail = 0.0
    comp = 0.0
    for i in range(d, n):  # Kahan sum of the displaced mass
        y = alpha[i] - comp
        t = tail + y
        comp = (t - tail) - y
        tail = t

    acc = tail
    c = alpha[d - 1] + tail
    seg = d - 1
    for s in range(d - 1, -1, -1):
        acc += alpha[s]
        c = acc / (d - s)
        seg = s
        if s == 0 or c <= alpha[s - 1]:
            break
    return c, seg


def jacobi_eig(a: np.ndarray, tol: float = 1e-13, max_sweeps: int = 50):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(w, v)`` with eigenvalues ``w`` sorted non-increasing and the
    matching eigenvectors as columns of ``v``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a[0, :1].copy(), v

    norm = math.sqrt((a * a).sum())
    thresh = tol * max(1.0, norm)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * (np.triu(a, 1) ** 2).sum())
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh / (n * n):
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-300 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]
