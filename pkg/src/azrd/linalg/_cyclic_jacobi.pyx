# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi kernel for complex Hermitian matrices.

Twin of ``_cyclic_jacobi_py``: identical floating-point operation order on
plain doubles (built with -ffp-contract=off), so both backends return
bitwise-identical results.
"""

from libc.math cimport fabs, sqrt

DEF EPS = 2.220446049250313e-16
DEF MAX_SWEEPS = 100


def cyclic_jacobi(double[:, ::1] ar, double[:, ::1] ai,
                  double[:, ::1] vr, double[:, ::1] vi):
    """Diagonalize in place; accumulate the unitary into (vr, vi).

    ``vr``/``vi`` must come in as the identity. Returns the number of sweeps
    used, or -1 if the sweep limit was hit.
    """
    cdef Py_ssize_t n = ar.shape[0]
    cdef Py_ssize_t sweep, p, q, i
    cdef double scale, d, m, m2, tol, tol2
    cdef double xre, xim, phre, phim, tau, t, c, s
    cdef double pre, pim, qre, qim, wre, wim
    cdef bint rotated
    cdef int sweeps = -1

    scale = 0.0
    for i in range(n):
        d = fabs(ar[i, i])
        if d > scale:
            scale = d
        for q in range(i + 1, n):
            m = sqrt(ar[i, q] * ar[i, q] + ai[i, q] * ai[i, q])
            if m > scale:
                scale = m
    if scale == 0.0:
        return 0
    tol = EPS * scale
    tol2 = tol * tol

    for sweep in range(MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                xre = ar[p, q]
                xim = ai[p, q]
                m2 = xre * xre + xim * xim
                if m2 <= tol2:
                    continue
                rotated = True
                m = sqrt(m2)
                phre = xre / m
                phim = xim / m
                tau = (ar[q, q] - ar[p, p]) / (2.0 * m)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    pre = ar[i, p]
                    pim = ai[i, p]
                    qre = ar[i, q]
                    qim = ai[i, q]
                    wre = phre * qre + phim * qim
                    wim = phre * qim - phim * qre
                    ar[i, p] = c * pre - s * wre
                    ai[i, p] = c * pim - s * wim
                    ar[i, q] = s * pre + c * wre
                    ai[i, q] = s * pim + c * wim
                for i in range(n):
                    pre = ar[p, i]
                    pim = ai[p, i]
                    qre = ar[q, i]
                    qim = ai[q, i]
                    wre = phre * qre - phim * qim
                    wim = phre * qim + phim * qre
                    ar[p, i] = c * pre - s * wre
                    ai[p, i] = c * pim - s * wim
                    ar[q, i] = s * pre + c * wre
                    ai[q, i] = s * pim + c * wim
                ar[p, q] = 0.0
                ai[p, q] = 0.0
                ar[q, p] = 0.0
                ai[q, p] = 0.0
                ai[p, p] = 0.0
                ai[q, q] = 0.0
                for i in range(n):
                    pre = vr[i, p]
                    pim = vi[i, p]
                    qre = vr[i, q]
                    qim = vi[i, q]
                    wre = phre * qre + phim * qim
                    wim = phre * qim - phim * qre
                    vr[i, p] = c * pre - s * wre
                    vi[i, p] = c * pim - s * wim
                    vr[i, q] = s * pre + c * wre
                    vi[i, q] = s * pim + c * wim
        if not rotated:
            sweeps = sweep
            break
    return sweeps
