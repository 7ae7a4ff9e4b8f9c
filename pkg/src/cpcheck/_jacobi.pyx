# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic-by-row complex Jacobi sweeps for Hermitian matrices."""

from libc.math cimport sqrt, hypot


cdef double off_norm(double complex[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    cdef double complex z
    for i in range(n):
        for j in range(n):
            if i != j:
                z = a[i, j]
                acc += z.real * z.real + z.imag * z.imag
    return sqrt(acc)


cdef void rotate(double complex[:, ::1] a, double complex[:, ::1] vt,
                 Py_ssize_t p, Py_ssize_t q) noexcept nogil:
    # vt holds the accumulated rotations transposed so both updates walk rows
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k
    cdef double complex apq = a[p, q]
    cdef double b = hypot(apq.real, apq.imag)
    cdef double complex ph, phc, apk, aqk, vp, vq
    cdef double app, aqq, theta, t, c, s
    if b == 0.0:
        return
    ph = apq / b
    phc = ph.conjugate()
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * b)
    # root of t^2 + 2 theta t - 1 = 0 that leaves the larger diagonal at p
    if theta >= 0.0:
        t = -(theta + hypot(theta, 1.0))
    else:
        t = -1.0 / (-theta + hypot(theta, 1.0))
    c = 1.0 / hypot(t, 1.0)
    s = t * c
    for k in range(n):
        if k == p or k == q:
            continue
        apk = a[p, k]
        aqk = a[q, k]
        a[p, k] = c * apk - (s * ph) * aqk
        a[q, k] = (s * phc) * apk + c * aqk
        a[k, p] = a[p, k].conjugate()
        a[k, q] = a[q, k].conjugate()
    a[p, p] = app - t * b
    a[q, q] = aqq + t * b
    a[p, q] = 0.0
    a[q, p] = 0.0
    for k in range(n):
        vp = vt[p, k]
        vq = vt[q, k]
        vt[p, k] = c * vp - (s * phc) * vq
        vt[q, k] = (s * ph) * vp + c * vq


def jacobi_sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                  double threshold, int max_sweeps):
    """Diagonalize Hermitian ``a`` in place, accumulating rotations into ``v``.

    Returns the number of sweeps performed, or -1 if the off-diagonal
    Frobenius norm is still above ``threshold`` after ``max_sweeps``.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q
    cdef int sweep
    cdef int result = -1
    cdef double complex[:, ::1] vt = v.T.copy()
    with nogil:
        for sweep in range(max_sweeps + 1):
            if off_norm(a) <= threshold:
                result = sweep
                break
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    rotate(a, vt, p, q)
    v[:, :] = vt.T
    return result
