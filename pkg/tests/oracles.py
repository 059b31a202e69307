"""Independent reference computations used only by the test suite.

Deliberately different algorithms from the library: a cyclic Jacobi
eigensolver (vs LAPACK), itertools sign enumeration (vs vectorized blocks),
and a dense simplex grid (vs mirror descent).
"""

import itertools
import math

import numpy as np


def jacobi_eigenvalues(a, tol=1e-13, max_sweeps=60):
    """Full spectrum of a symmetric matrix by cyclic Jacobi rotations.

    Returns eigenvalues in ascending order.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.ravel().copy()
    scale = max(1.0, math.sqrt(float(np.sum(a * a))))
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, float(np.sum(a * a) - np.sum(np.diag(a) ** 2))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot_p = c * a[:, p] - s * a[:, q]
                rot_q = s * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = rot_p, rot_q
                rot_p = c * a[p, :] - s * a[q, :]
                rot_q = s * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rot_p, rot_q
    return np.sort(np.diag(a))


def jacobi_max_eigenvalue(a, **kwargs):
    return float(jacobi_eigenvalues(a, **kwargs)[-1])


def naive_norm_inf2(b):
    """``max ||B x||_2`` by direct itertools enumeration of the sign cube."""
    b = np.asarray(b, dtype=float)
    best = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=b.shape[1]):
        v = b @ np.array(signs)
        best = max(best, math.sqrt(float(v @ v)))
    return best


def naive_norm_inf1(g):
    """``max ||G x||_1`` by direct itertools enumeration of the sign cube."""
    g = np.asarray(g, dtype=float)
    best = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=g.shape[1]):
        best = max(best, float(np.abs(g @ np.array(signs)).sum()))
    return best


def simplex_grid(dim, steps):
    """All points of the simplex with coordinates at multiples of 1/steps."""
    points = []
    for combo in itertools.combinations(range(steps + dim - 1), dim - 1):
        prev = -1
        parts = []
        for c in combo:
            parts.append(c - prev - 1)
            prev = c
        parts.append(steps + dim - 2 - prev)
        points.append(parts)
    return np.array(points, dtype=float) / steps
