"""The two-parameter Renyi divergence family Q/D on pairs of densities.

For 0 < alpha < 1 the quantity is the trace formula

    Q(psi||phi) = tr((h_phi^((1-a)/2z) h_psi^(a/z) h_phi^((1-a)/2z))^z),

and for alpha > 1 it is ||x||_z^z for the unique factorization witness x of

    h_psi^(a/z) = h_phi^((a-1)/2z) x h_phi^((a-1)/2z),

which exists exactly when s(psi) <= s(phi); otherwise Q = +inf. In finite
dimension the restriction of h_phi^((a-1)/2z) to its support is invertible,
so existence reduces to the support comparison plus a residual verification.

z = 1 specializes to the standard (Petz-type) Renyi divergence and z = alpha
to the sandwiched one; both specializations are implemented on their own
routes and must agree with the general formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    ExtendedNonneg,
    PsdElement,
    eigh,
    hermitize,
    mat_pow,
    singular_values,
    support_projection,
    trace_power,
)

SUPPORT_COMPARE_TOL = 1e-8
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class DivergenceParams:
    """Exponent pair (alpha, z) with alpha > 0, alpha != 1, z > 0."""

    alpha: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if abs(self.alpha - 1.0) < 1e-9:
            raise ValueError("alpha = 1 is excluded (|alpha - 1| >= 1e-9 required)")
        if not (math.isfinite(self.z) and self.z > 0):
            raise ValueError(f"z must be positive and finite, got {self.z}")


def _as_psd(h) -> PsdElement:
    return h if isinstance(h, PsdElement) else PsdElement(h)


@dataclass(frozen=True)
class StatePair:
    """Densities (h_psi, h_phi) of two positive functionals on one algebra."""

    h_psi: PsdElement
    h_phi: PsdElement

    def __post_init__(self):
        psi = _as_psd(self.h_psi)
        phi = _as_psd(self.h_phi)
        if psi.dim != phi.dim:
            raise ValueError(f"dimension mismatch: {psi.dim} vs {phi.dim}")
        object.__setattr__(self, "h_psi", psi)
        object.__setattr__(self, "h_phi", phi)

    @property
    def dim(self) -> int:
        return self.h_psi.dim

    @property
    def psi_weight(self) -> float:
        return self.h_psi.weight

    @property
    def phi_weight(self) -> float:
        return self.h_phi.weight


@dataclass(frozen=True)
class IdentityWitness:
    """A verified factorization witness (orientation 'x' or 'y')."""

    which: str
    matrix: np.ndarray
    residual: float
    norm_value: float  # ||x||_z^z for 'x', ||y||_2z^2z for 'y'


def _is_zero(h: PsdElement) -> bool:
    return h.spectrum.eigenvalues[-1] <= 0.0


def _sigma_max(m: np.ndarray) -> float:
    """Largest singular value via the Gram matrix (cheap, top-end accurate)."""
    w = eigh(m.conj().T @ m).eigenvalues
    return math.sqrt(max(float(w[-1]), 0.0))


def supports_nested(pair: StatePair, tol: float = SUPPORT_COMPARE_TOL) -> bool:
    """s(psi) <= s(phi), decided as ||(1 - s(phi)) s(psi)||_inf <= tol."""
    s_psi = support_projection(pair.h_psi)
    s_phi = support_projection(pair.h_phi)
    outside = (np.eye(pair.dim) - s_phi) @ s_psi
    return _sigma_max(outside) <= tol


def solve_identity_y(pair: StatePair, params: DivergenceParams,
                     support_tol: float = SUPPORT_COMPARE_TOL,
                     residual_tol: float = RESIDUAL_TOL) -> IdentityWitness | None:
    """Witness y with h_psi^(a/2z) = y h_phi^((a-1)/2z) and y s(phi) = y.

    Returns None when s(psi) <= s(phi) fails (the factorization does not
    exist). The returned witness is verified: the residual is checked against
    a backward-error scale before returning.
    """
    alpha, z = params.alpha, params.z
    if alpha <= 1:
        raise ValueError("identity witnesses are defined for alpha > 1")
    if _is_zero(pair.h_psi):
        zero = np.zeros((pair.dim, pair.dim), dtype=np.complex128)
        return IdentityWitness("y", zero, 0.0, 0.0)
    if not supports_nested(pair, support_tol):
        return None
    e = (alpha - 1.0) / (2.0 * z)
    g = mat_pow(pair.h_phi, e)
    g_inv = mat_pow(pair.h_phi, -e)
    target = mat_pow(pair.h_psi, alpha / (2.0 * z))
    y = target @ g_inv
    residual = _sigma_max(target - y @ g)
    scale = max(_sigma_max(target), _sigma_max(y) * _sigma_max(g))
    if residual > residual_tol * scale:
        raise ArithmeticError(
            f"identity residual {residual:.3e} exceeds {residual_tol:.1e} * {scale:.3e}")
    sig = singular_values(y)
    norm_value = float(np.sum(sig ** (2.0 * z)))
    return IdentityWitness("y", y, float(residual), norm_value)


def solve_identity_x(pair: StatePair, params: DivergenceParams,
                     support_tol: float = SUPPORT_COMPARE_TOL,
                     residual_tol: float = RESIDUAL_TOL) -> IdentityWitness | None:
    """Witness x = y*y with h_psi^(a/z) = G x G, G = h_phi^((a-1)/2z).

    Built from the y-orientation, which makes x psd with x = s(phi) x s(phi)
    by construction and pins ||x||_z^z = ||y||_2z^2z.
    """
    wit_y = solve_identity_y(pair, params, support_tol, residual_tol)
    if wit_y is None:
        return None
    y = wit_y.matrix
    x = hermitize(y.conj().T @ y)
    alpha, z = params.alpha, params.z
    g = mat_pow(pair.h_phi, (alpha - 1.0) / (2.0 * z))
    target = mat_pow(pair.h_psi, alpha / z)
    residual = _sigma_max(target - g @ x @ g)
    scale = max(_sigma_max(target), _sigma_max(x) * _sigma_max(g) ** 2, 1e-300)
    if residual > residual_tol * scale:
        raise ArithmeticError(
            f"identity residual {residual:.3e} exceeds {residual_tol:.1e} * {scale:.3e}")
    norm_value = trace_power(x, z)
    return IdentityWitness("x", x, float(residual), norm_value)


def q_alpha_z(pair: StatePair, params: DivergenceParams) -> ExtendedNonneg:
    """Q(psi||phi) for the exponent pair (alpha, z); +inf for alpha > 1
    when the support condition s(psi) <= s(phi) fails. Q(0||phi) = 0."""
    alpha, z = params.alpha, params.z
    if alpha < 1:
        side = mat_pow(pair.h_phi, (1.0 - alpha) / (2.0 * z))
        core = side @ mat_pow(pair.h_psi, alpha / z) @ side
        return ExtendedNonneg(trace_power(hermitize(core), z))
    witness = solve_identity_x(pair, params)
    if witness is None:
        return ExtendedNonneg.infinity()
    return ExtendedNonneg(witness.norm_value)


def d_alpha_z(pair: StatePair, params: DivergenceParams) -> float:
    """D = (1/(alpha-1)) log(Q/psi(1)), an extended real; psi must be nonzero.

    Conventions: log 0 = -inf, log inf = inf. Consequently D = +inf when
    Q = 0 (alpha < 1, note 1/(alpha-1) < 0) and when Q = inf (alpha > 1).
    """
    if _is_zero(pair.h_psi):
        raise ValueError("D(psi||phi) requires psi != 0")
    q = q_alpha_z(pair, params)
    normalized = ExtendedNonneg(q.value / pair.psi_weight) if q.is_finite else q
    return normalized.log() / (params.alpha - 1.0)


def petz_q(pair: StatePair, alpha: float) -> ExtendedNonneg:
    """The z = 1 specialization, on its own route.

    For 0 < alpha < 1: tr(h_psi^a h_phi^(1-a)). For alpha > 1: ||eta||_2^2
    for the witness of h_psi^(a/2) = eta h_phi^((a-1)/2), +inf when absent.
    """
    DivergenceParams(alpha, 1.0)
    if alpha < 1:
        prod = mat_pow(pair.h_psi, alpha) @ mat_pow(pair.h_phi, 1.0 - alpha)
        return ExtendedNonneg(max(float(np.trace(prod).real), 0.0))
    if _is_zero(pair.h_psi):
        return ExtendedNonneg(0.0)
    if not supports_nested(pair):
        return ExtendedNonneg.infinity()
    half = mat_pow(pair.h_psi, alpha / 2.0)
    eta = half @ mat_pow(pair.h_phi, -(alpha - 1.0) / 2.0)
    residual = _sigma_max(half - eta @ mat_pow(pair.h_phi, (alpha - 1.0) / 2.0))
    scale = max(_sigma_max(half),
                _sigma_max(eta) * _sigma_max(mat_pow(pair.h_phi, (alpha - 1.0) / 2.0)))
    if residual > RESIDUAL_TOL * scale:
        raise ArithmeticError(f"specialization residual {residual:.3e} too large")
    return ExtendedNonneg(float(np.sum(np.abs(eta) ** 2)))


def sandwiched_q(pair: StatePair, alpha: float) -> ExtendedNonneg:
    """The z = alpha specialization, on its own route.

    For 0 < alpha < 1: tr((h_phi^((1-a)/2a) h_psi h_phi^((1-a)/2a))^a).
    For alpha > 1: the symmetric-embedding norm ||h_psi||^a relative to phi,
    obtained by inverting the embedding on s(phi); +inf off the support.
    """
    DivergenceParams(alpha, alpha)  # range check on alpha
    e = (1.0 - alpha) / (2.0 * alpha)
    if alpha < 1:
        side = mat_pow(pair.h_phi, e)
        core = side @ pair.h_psi.matrix @ side
        return ExtendedNonneg(trace_power(hermitize(core), alpha))
    if _is_zero(pair.h_psi):
        return ExtendedNonneg(0.0)
    if not supports_nested(pair):
        return ExtendedNonneg.infinity()
    side = mat_pow(pair.h_phi, e)  # negative exponent: pseudoinverse power
    core = side @ pair.h_psi.matrix @ side
    return ExtendedNonneg(trace_power(hermitize(core), alpha))


def direct_sum(pair1: StatePair, pair2: StatePair) -> StatePair:
    """Block-diagonal pair; weights add."""
    def block(a: PsdElement, b: PsdElement) -> PsdElement:
        n, m = a.dim, b.dim
        out = np.zeros((n + m, n + m), dtype=np.complex128)
        out[:n, :n] = a.matrix
        out[n:, n:] = b.matrix
        return PsdElement(out, max(a.psd_tolerance, b.psd_tolerance))
    return StatePair(block(pair1.h_psi, pair2.h_psi),
                     block(pair1.h_phi, pair2.h_phi))


def tensor_product(pair1: StatePair, pair2: StatePair) -> StatePair:
    """Kronecker-product pair; weights multiply."""
    tol = max(pair1.h_psi.psd_tolerance, pair2.h_psi.psd_tolerance)
    return StatePair(
        PsdElement(np.kron(pair1.h_psi.matrix, pair2.h_psi.matrix), tol),
        PsdElement(np.kron(pair1.h_phi.matrix, pair2.h_phi.matrix), tol),
    )
