"""Pure-Python cyclic Jacobi kernel for complex Hermitian matrices.

Fallback twin of the compiled kernel in ``_cyclic_jacobi.pyx``. Both follow
the exact same floating-point operation order (plain double arithmetic plus
sqrt/fabs), so their outputs agree bitwise; the compiled module is built with
FP contraction disabled to preserve that.

The matrix is stored as separate real/imaginary parts. The caller must pass a
Hermitian matrix: ``ar`` symmetric, ``ai`` antisymmetric with zero diagonal.
"""

from math import sqrt

_EPS = 2.220446049250313e-16
_MAX_SWEEPS = 100


def cyclic_jacobi(a_re, a_im, v_re, v_im):
    """Diagonalize in place; accumulate the unitary into (v_re, v_im).

    ``v_re``/``v_im`` must come in as the identity. Returns the number of
    sweeps used, or -1 if the sweep limit was hit.
    """
    n = a_re.shape[0]
    ar = a_re.tolist()
    ai = a_im.tolist()
    vr = v_re.tolist()
    vi = v_im.tolist()

    scale = 0.0
    for i in range(n):
        d = abs(ar[i][i])
        if d > scale:
            scale = d
        for j in range(i + 1, n):
            m = sqrt(ar[i][j] * ar[i][j] + ai[i][j] * ai[i][j])
            if m > scale:
                scale = m
    if scale == 0.0:
        return 0
    tol = _EPS * scale
    tol2 = tol * tol

    sweeps = -1
    for sweep in range(_MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            arp = ar[p]
            aip = ai[p]
            for q in range(p + 1, n):
                xre = arp[q]
                xim = aip[q]
                m2 = xre * xre + xim * xim
                if m2 <= tol2:
                    continue
                rotated = True
                m = sqrt(m2)
                # a_pq = m * u with u = phre + i*phim on the unit circle
                phre = xre / m
                phim = xim / m
                tau = (ar[q][q] - arp[p]) / (2.0 * m)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # A <- A J with J = [[c, s], [-s*conj(u), c*conj(u)]]
                for i in range(n):
                    ari = ar[i]
                    aii = ai[i]
                    pre = ari[p]
                    pim = aii[p]
                    qre = ari[q]
                    qim = aii[q]
                    wre = phre * qre + phim * qim
                    wim = phre * qim - phim * qre
                    ari[p] = c * pre - s * wre
                    aii[p] = c * pim - s * wim
                    ari[q] = s * pre + c * wre
                    aii[q] = s * pim + c * wim
                # A <- J^* A with J^* = [[c, -s*u], [s, c*u]]
                arq = ar[q]
                aiq = ai[q]
                for i in range(n):
                    pre = arp[i]
                    pim = aip[i]
                    qre = arq[i]
                    qim = aiq[i]
                    wre = phre * qre - phim * qim
                    wim = phre * qim + phim * qre
                    arp[i] = c * pre - s * wre
                    aip[i] = c * pim - s * wim
                    arq[i] = s * pre + c * wre
                    aiq[i] = s * pim + c * wim
                # pin what the rotation made exact by construction
                arp[q] = 0.0
                aip[q] = 0.0
                arq[p] = 0.0
                aiq[p] = 0.0
                aip[p] = 0.0
                aiq[q] = 0.0
                # V <- V J
                for i in range(n):
                    vri = vr[i]
                    vii = vi[i]
                    pre = vri[p]
                    pim = vii[p]
                    qre = vri[q]
                    qim = vii[q]
                    wre = phre * qre + phim * qim
                    wim = phre * qim - phim * qre
                    vri[p] = c * pre - s * wre
                    vii[p] = c * pim - s * wim
                    vri[q] = s * pre + c * wre
                    vii[q] = s * pim + c * wim
        if not rotated:
            sweeps = sweep
            break

    for i in range(n):
        a_re[i, :] = ar[i]
        a_im[i, :] = ai[i]
        v_re[i, :] = vr[i]
        v_im[i, :] = vi[i]
    return sweeps
