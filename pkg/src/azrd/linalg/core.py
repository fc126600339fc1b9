"""Hermitian functional calculus, Schatten (quasi)norms and support machinery.

All matrix powers follow one support-cutoff convention: eigenvalues at or
below ``dim * machine-eps * lambda_max`` belong to the kernel and are mapped
to 0 for every exponent (Moore-Penrose convention for negative exponents,
support projection for exponent 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .jacobi import SpectralDecomposition, eigh

_EPS = float(np.finfo(np.float64).eps)


def hermitize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A*)/2."""
    a = np.asarray(a, dtype=np.complex128)
    return (a + a.conj().T) / 2.0


def as_matrix(a) -> np.ndarray:
    """Coerce a PsdElement or array-like to a complex square ndarray."""
    if isinstance(a, PsdElement):
        return a.matrix
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class PsdElement:
    """A positive semidefinite matrix, validated at construction.

    The Hermitian part of the input is stored. Validation requires
    ``max|A - A*| <= psd_tolerance`` and
    ``min eig >= -psd_tolerance * (1 + max eig)``.
    """

    matrix: np.ndarray
    psd_tolerance: float = 1e-8
    spectrum: SpectralDecomposition = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m.view(np.float64))):
            raise ValueError("matrix has NaN or infinite entries")
        if self.psd_tolerance < 0:
            raise ValueError("psd_tolerance must be nonnegative")
        skew = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if skew > self.psd_tolerance:
            raise ValueError(f"matrix is not Hermitian within tolerance: max|A - A*| = {skew:.3e}")
        herm = hermitize(m)
        herm.setflags(write=False)
        object.__setattr__(self, "matrix", herm)
        spec = eigh(herm)
        w = spec.eigenvalues
        floor = -self.psd_tolerance * (1.0 + max(w[-1], 0.0))
        if w[0] < floor:
            raise ValueError(f"matrix is not psd within tolerance: min eig = {w[0]:.3e}")
        object.__setattr__(self, "spectrum", spec)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def weight(self) -> float:
        """The trace functional tr(h), real by hermiticity."""
        return float(np.trace(self.matrix).real)

    def power(self, t: float, cutoff: float | None = None) -> np.ndarray:
        return mat_pow(self, t, cutoff=cutoff)

    def support(self, cutoff: float | None = None) -> np.ndarray:
        return support_projection(self, cutoff=cutoff)


def _spectrum_of(a) -> SpectralDecomposition:
    if isinstance(a, PsdElement):
        return a.spectrum
    if isinstance(a, SpectralDecomposition):
        return a
    return eigh(as_matrix(a))


def support_cutoff(eigenvalues: np.ndarray, cutoff: float | None = None) -> float:
    """Kernel threshold: dim * eps * lambda_max unless overridden."""
    if cutoff is not None:
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        return cutoff
    lam_max = max(float(eigenvalues[-1]), 0.0)
    return eigenvalues.shape[0] * _EPS * lam_max


def mat_pow(a, t: float, cutoff: float | None = None) -> np.ndarray:
    """Spectral power A^t with kernel eigenvalues pinned to 0.

    A^0 is the support projection; negative exponents act on the support only
    (pseudoinverse convention). Satisfies A^s A^t = A^(s+t) on the support.
    """
    spec = _spectrum_of(a)
    w = spec.eigenvalues
    cut = support_cutoff(w, cutoff)
    keep = w > cut
    f = np.zeros_like(w)
    if t == 0.0:
        f[keep] = 1.0
    else:
        f[keep] = w[keep] ** float(t)
    u = spec.eigenvectors
    return hermitize((u * f) @ u.conj().T)


def support_projection(a, cutoff: float | None = None) -> np.ndarray:
    """Range projection s(A): rank = #{eigenvalues above the cutoff}."""
    return mat_pow(a, 0.0, cutoff=cutoff)


def support_rank(a, cutoff: float | None = None) -> int:
    spec = _spectrum_of(a)
    cut = support_cutoff(spec.eigenvalues, cutoff)
    return int(np.sum(spec.eigenvalues > cut))


def singular_values(a) -> np.ndarray:
    """Singular values, descending.

    Hermitian inputs use |eigenvalues| directly; general inputs go through the
    doubled Hermitian embedding [[0, A], [A*, 0]] whose spectrum is {+-sigma},
    which avoids the precision loss of forming A*A.
    """
    m = as_matrix(a)
    n = m.shape[0]
    if n == 0:
        return np.zeros(0)
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        return np.zeros(n)
    if np.max(np.abs(m - m.conj().T)) <= 1e-13 * scale:
        w = eigh(m).eigenvalues
        return np.sort(np.abs(w))[::-1].copy()
    emb = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    emb[:n, n:] = m
    emb[n:, :n] = m.conj().T
    w = eigh(emb).eigenvalues
    return np.sort(np.maximum(w[n:], 0.0))[::-1].copy()


def schatten_norm(a, p: float) -> float:
    """||A||_p = (sum sigma_i^p)^(1/p); the largest singular value for p=inf.

    A quasi-norm for 0 < p < 1 (no triangle inequality assumed anywhere).
    """
    if not p > 0:
        raise ValueError(f"Schatten order must be positive, got {p}")
    sig = singular_values(a)
    if sig.shape[0] == 0:
        return 0.0
    if math.isinf(p):
        return float(sig[0])
    top = float(sig[0])
    if top == 0.0:
        return 0.0
    # factor out the largest singular value so sigma^p cannot over/underflow
    return top * float(np.sum((sig / top) ** p)) ** (1.0 / p)


def operator_norm(a) -> float:
    return schatten_norm(a, math.inf)


def trace_power(a, t: float, cutoff: float | None = None) -> float:
    """tr(A^t) under the support-cutoff convention, for psd A."""
    spec = _spectrum_of(a)
    w = spec.eigenvalues
    cut = support_cutoff(w, cutoff)
    keep = w > cut
    if t == 0.0:
        return float(np.sum(keep))
    return float(np.sum(w[keep] ** float(t)))


def polar_decompose(a) -> tuple[np.ndarray, np.ndarray]:
    """A = U |A| with |A| = (A*A)^(1/2) and U a partial isometry.

    U is built as A |A|^+ on the support, so U*U = s(|A|).
    """
    m = as_matrix(a)
    gram = hermitize(m.conj().T @ m)
    spec = eigh(gram)
    absval = mat_pow(spec, 0.5)
    u = m @ mat_pow(spec, -0.5)
    return u, absval


class OrderViolationError(ValueError):
    """Raised when a required ordering A <= B fails; carries the eigenvalue."""

    def __init__(self, min_eig: float):
        super().__init__(f"precondition A <= B violated: min eig(B - A) = {min_eig:.3e}")
        self.min_eig = min_eig


def contraction_factor(a, b, tolerance: float = 1e-9) -> np.ndarray:
    """For 0 <= A <= B, a contraction c with A^(1/2) = c B^(1/2) on s(B).

    Built as c = A^(1/2) B^(-1/2); ||c||_inf <= 1 + tolerance.
    """
    am = as_matrix(a)
    bm = as_matrix(b)
    gap = eigh(hermitize(bm - am)).eigenvalues[0]
    scale = max(operator_norm(bm), 1.0)
    if gap < -tolerance * scale:
        raise OrderViolationError(float(gap))
    return mat_pow(am, 0.5) @ mat_pow(bm, -0.5)


def kosaki_embed(a, h, p: float) -> np.ndarray:
    """Symmetric embedding a -> h^(1/2q) a h^(1/2q) with 1/p + 1/q = 1.

    For p = 1 the exponent is 0 and the embedding is the support sandwich
    s(h) a s(h).
    """
    if math.isinf(p) or p < 1:
        raise ValueError(f"Kosaki embedding needs finite p >= 1, got {p}")
    m = as_matrix(a)
    exponent = (p - 1.0) / (2.0 * p)  # 1/2q for q = p/(p-1)
    side = mat_pow(h, exponent) if exponent > 0 else support_projection(h)
    return side @ m @ side


@dataclass(frozen=True)
class HolderEqualityResult:
    """Outcome of the Schatten-Hoelder equality detector."""

    kind: str  # "zero" | "proportional" | "strict"
    gap: float
    scale: float
    lam: float | None = None
    residual: float | None = None


def holder_equality_check(x, y, p: float, q: float, r: float,
                          eq_tolerance: float = 1e-9) -> HolderEqualityResult:
    """Classify equality in ||x y||_r <= ||x||_p ||y||_q for psd x, y.

    Detects the proportional case x^p = lam y^q (lam fitted by least squares
    as tr(y^q x^p)/tr(y^(2q)), with the residual checked in both orientations
    so lam = 0 on either side is covered). The classification is backed by
    proved theory for r >= 1; for r < 1 the detector still reports, but the
    equality condition is unverified theory there.
    """
    if p <= 1 or q <= 1:
        raise ValueError("exponents p, q must exceed 1")
    if abs(1.0 / r - 1.0 / p - 1.0 / q) > 1e-12:
        raise ValueError(f"exponent mismatch: 1/{r} != 1/{p} + 1/{q}")
    xm = as_matrix(x)
    ym = as_matrix(y)
    nx = schatten_norm(xm, p)
    ny = schatten_norm(ym, q)
    scale = nx * ny
    if nx == 0.0 or ny == 0.0:
        return HolderEqualityResult("zero", 0.0, scale)
    gap = scale - schatten_norm(xm @ ym, r)
    xp = mat_pow(xm, p)
    yq = mat_pow(ym, q)
    denom = float(np.trace(yq @ yq).real)
    lam = max(float(np.trace(yq @ xp).real) / denom, 0.0)
    res_fwd = schatten_norm(xp - lam * yq, 2.0) / max(schatten_norm(xp, 2.0), 1e-300)
    denom_rev = float(np.trace(xp @ xp).real)
    lam_rev = max(float(np.trace(xp @ yq).real) / denom_rev, 0.0)
    res_rev = schatten_norm(yq - lam_rev * xp, 2.0) / max(schatten_norm(yq, 2.0), 1e-300)
    residual = min(res_fwd, res_rev)
    if gap <= eq_tolerance * scale:
        return HolderEqualityResult("proportional", float(gap), scale, lam, residual)
    return HolderEqualityResult("strict", float(gap), scale, lam, residual)
