"""Deterministic complex Hermitian eigensolver (cyclic Jacobi, fixed sweeps).

The hot kernel lives in the compiled module ``_cyclic_jacobi`` when available;
otherwise the pure-Python twin ``_cyclic_jacobi_py`` is used. Set
``AZRD_PURE_PYTHON=1`` to force the fallback (used by the benchmark and the
backend-agreement tests). Both kernels produce bitwise-identical output.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _cyclic_jacobi_py

if os.environ.get("AZRD_PURE_PYTHON"):
    _kernel = _cyclic_jacobi_py
    COMPILED = False
else:
    try:
        from . import _cyclic_jacobi as _kernel  # type: ignore[attr-defined]
        COMPILED = True
    except ImportError:
        _kernel = _cyclic_jacobi_py
        COMPILED = False


def backend_name() -> str:
    return "compiled" if COMPILED else "pure-python"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues ascending, eigenvectors as the columns of a unitary."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def _check_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("matrix has NaN or infinite entries")
    return a


def eigh(h: np.ndarray, *, kernel=None) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input is hermitized as (H + H*)/2 first. Deterministic for a fixed
    input: fixed cyclic sweep order, stable ascending sort of eigenvalues.
    """
    h = _check_square(h)
    n = h.shape[0]
    if n == 1:
        w = np.array([h[0, 0].real])
        return SpectralDecomposition(w, np.eye(1, dtype=np.complex128))
    herm = (h + h.conj().T) / 2.0
    ar = np.ascontiguousarray(herm.real, dtype=np.float64)
    ai = np.ascontiguousarray(herm.imag, dtype=np.float64)
    vr = np.eye(n)
    vi = np.zeros((n, n))
    k = _kernel if kernel is None else kernel
    sweeps = k.cyclic_jacobi(ar, ai, vr, vi)
    if sweeps < 0:
        raise ArithmeticError("Jacobi sweeps did not converge")
    w = np.diagonal(ar).copy()
    order = np.argsort(w, kind="stable")
    u = (vr + 1j * vi)[:, order]
    return SpectralDecomposition(w[order], u)
