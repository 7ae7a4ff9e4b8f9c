"""Pure-Python (numpy) fallback for the compiled Jacobi kernel.

Same contract and rotation sequence as ``_jacobi.pyx``; used when the
extension is not built or ``CPCHECK_PURE_PYTHON`` is set.
"""
import math

import numpy as np


def _off_norm(a):
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotate(a, v, p, q):
    apq = a[p, q]
    b = abs(apq)
    if b == 0.0:
        return
    ph = apq / b
    phc = ph.conjugate()
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * b)
    # root of t^2 + 2 theta t - 1 = 0 that leaves the larger diagonal at p
    if theta >= 0.0:
        t = -(theta + math.hypot(theta, 1.0))
    else:
        t = -1.0 / (-theta + math.hypot(theta, 1.0))
    c = 1.0 / math.hypot(t, 1.0)
    s = t * c
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - (s * phc) * col_q
    a[:, q] = (s * ph) * col_p + c * col_q
    a[p, :] = a[:, p].conj()
    a[q, :] = a[:, q].conj()
    a[p, p] = app - t * b
    a[q, q] = aqq + t * b
    a[p, q] = 0.0
    a[q, p] = 0.0
    col_p = v[:, p].copy()
    col_q = v[:, q].copy()
    v[:, p] = c * col_p - (s * phc) * col_q
    v[:, q] = (s * ph) * col_p + c * col_q


def jacobi_sweeps(a, v, threshold, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        if _off_norm(a) <= threshold:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    return -1
