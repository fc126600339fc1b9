"""Unital positive maps between matrix algebras, their preduals on densities,
and recovery maps.

A channel gamma: N -> M acts on observables (the dual side); its predual
gamma_* acts on densities and is trace preserving because gamma is unital.
Kraus-represented channels (gamma(b) = sum K_i b K_i*) are completely
positive; merely positive maps (e.g. transpose composites) are carried as an
explicit linear map on column-stacked vectorizations, with positivity only
spot-checked: deciding positivity exactly is itself hard, and the inequalities
here consume positivity as a hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .divergences import StatePair
from .linalg import PsdElement, eigh, hermitize, mat_pow, schatten_norm, support_projection, trace_power

_SPOT_CHECKS = 16


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(m, dtype=np.complex128).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(v, dtype=np.complex128).reshape((dim, dim), order="F")


def _spot_check_positivity(apply, in_dim: int, tol: float) -> None:
    rng = np.random.default_rng(0x9E3779B9)
    for _ in range(_SPOT_CHECKS):
        g = rng.standard_normal((in_dim, in_dim)) + 1j * rng.standard_normal((in_dim, in_dim))
        b = g @ g.conj().T
        image = hermitize(apply(b))
        w = eigh(image).eigenvalues
        if w[0] < -tol * max(float(w[-1]), 1.0):
            raise ValueError(f"map failed a positivity spot check (min eig {w[0]:.3e})")


@dataclass(frozen=True)
class Channel:
    """Unital normal positive map gamma: N -> M (dims in_dim -> out_dim).

    Exactly one of ``kraus`` (tuple of out_dim x in_dim blocks) or
    ``linear_map`` (out_dim^2 x in_dim^2 on column-stacked inputs) is set;
    the CP flag is set iff the representation is Kraus.
    """

    in_dim: int
    out_dim: int
    kraus: tuple[np.ndarray, ...] | None = None
    linear_map: np.ndarray | None = None
    unitality_tolerance: float = 1e-9

    def __post_init__(self):
        if (self.kraus is None) == (self.linear_map is None):
            raise ValueError("exactly one of kraus/linear_map must be given")
        if self.kraus is not None:
            ks = tuple(np.asarray(k, dtype=np.complex128) for k in self.kraus)
            for k in ks:
                if k.shape != (self.out_dim, self.in_dim):
                    raise ValueError(f"Kraus block shape {k.shape} != "
                                     f"({self.out_dim}, {self.in_dim})")
            object.__setattr__(self, "kraus", ks)
        else:
            lm = np.asarray(self.linear_map, dtype=np.complex128)
            if lm.shape != (self.out_dim ** 2, self.in_dim ** 2):
                raise ValueError(f"linear map shape {lm.shape} != "
                                 f"({self.out_dim ** 2}, {self.in_dim ** 2})")
            object.__setattr__(self, "linear_map", lm)
        unit = self.apply_dual(np.eye(self.in_dim, dtype=np.complex128))
        gap = float(np.max(np.abs(unit - np.eye(self.out_dim))))
        if gap > self.unitality_tolerance:
            raise ValueError(f"map is not unital within tolerance: "
                             f"max|gamma(1) - 1| = {gap:.3e}")
        _spot_check_positivity(self.apply_dual, self.in_dim,
                               max(self.unitality_tolerance, 1e-9))

    @property
    def is_cp(self) -> bool:
        return self.kraus is not None

    def apply_dual(self, b) -> np.ndarray:
        """gamma(b) for an observable b on N."""
        m = b.matrix if isinstance(b, PsdElement) else np.asarray(b, dtype=np.complex128)
        if m.shape != (self.in_dim, self.in_dim):
            raise ValueError(f"observable shape {m.shape} != ({self.in_dim}, {self.in_dim})")
        if self.kraus is not None:
            out = np.zeros((self.out_dim, self.out_dim), dtype=np.complex128)
            for k in self.kraus:
                out += k @ m @ k.conj().T
            return out
        return unvec(self.linear_map @ vec(m), self.out_dim)

    def apply_predual(self, h) -> np.ndarray:
        """gamma_*(h) for a density h on M; trace preserving, psd-preserving."""
        m = h.matrix if isinstance(h, PsdElement) else np.asarray(h, dtype=np.complex128)
        if m.shape != (self.out_dim, self.out_dim):
            raise ValueError(f"density shape {m.shape} != ({self.out_dim}, {self.out_dim})")
        if self.kraus is not None:
            out = np.zeros((self.in_dim, self.in_dim), dtype=np.complex128)
            for k in self.kraus:
                out += k.conj().T @ m @ k
            return out
        # duality tr(gamma_*(h) b) = tr(h gamma(b)) pins the predual as
        # gamma_*(h) = unvec(L^T vec(h^T))^T
        return unvec(self.linear_map.T @ vec(m.T), self.in_dim).T

    def dual_matrix(self) -> np.ndarray:
        """The map as a matrix on column-stacked vectorizations."""
        if self.linear_map is not None:
            return self.linear_map.copy()
        lm = np.zeros((self.out_dim ** 2, self.in_dim ** 2), dtype=np.complex128)
        for k in self.kraus:
            lm += np.kron(k.conj(), k)
        return lm


def push_pair(ch: Channel, pair: StatePair, psd_tolerance: float = 1e-8) -> StatePair:
    """The processed pair (psi . gamma, phi . gamma) via the predual."""
    return StatePair(PsdElement(hermitize(ch.apply_predual(pair.h_psi)), psd_tolerance),
                     PsdElement(hermitize(ch.apply_predual(pair.h_phi)), psd_tolerance))


@dataclass(frozen=True)
class RecoveryMap:
    """Recovery map of gamma with respect to phi: the map gamma*_phi with

        h_(phi.gamma)^(1/2) gamma*_phi(a) h_(phi.gamma)^(1/2)
            = gamma_*(h_phi^(1/2) a h_phi^(1/2))

    on a in s(phi) M s(phi), realized as an explicit linear map from
    s(phi) M s(phi) to s(phi.gamma) N s(phi.gamma) (inputs are compressed by
    s(phi) first). It is unital on the support and reverses gamma on phi.
    """

    base: Channel
    phi: PsdElement
    map_matrix: np.ndarray = field(repr=False)
    s_phi: np.ndarray = field(repr=False)
    s_phi_gamma: np.ndarray = field(repr=False)

    @property
    def in_dim(self) -> int:
        return self.base.out_dim

    @property
    def out_dim(self) -> int:
        return self.base.in_dim

    def apply_dual(self, a) -> np.ndarray:
        m = a.matrix if isinstance(a, PsdElement) else np.asarray(a, dtype=np.complex128)
        if m.shape != (self.in_dim, self.in_dim):
            raise ValueError(f"observable shape {m.shape} != ({self.in_dim}, {self.in_dim})")
        compressed = self.s_phi @ m @ self.s_phi
        return unvec(self.map_matrix @ vec(compressed), self.out_dim)

    def apply_predual(self, h) -> np.ndarray:
        m = h.matrix if isinstance(h, PsdElement) else np.asarray(h, dtype=np.complex128)
        if m.shape != (self.out_dim, self.out_dim):
            raise ValueError(f"density shape {m.shape} != ({self.out_dim}, {self.out_dim})")
        full = np.zeros((self.in_dim ** 2, self.in_dim ** 2), dtype=np.complex128)
        # compose compression and the stored map into one dual matrix
        comp = np.kron(self.s_phi.conj(), self.s_phi)
        full = self.map_matrix @ comp
        return unvec(full.T @ vec(m.T), self.in_dim).T


def petz_recovery(ch: Channel | RecoveryMap, phi: PsdElement) -> RecoveryMap:
    """Materialize the recovery map of ``ch`` with respect to ``phi``.

    phi lives on the output side of ``ch``; phi = 0 is rejected.
    """
    if phi.dim != ch.out_dim:
        raise ValueError(f"reference state dim {phi.dim} != channel out_dim {ch.out_dim}")
    if phi.spectrum.eigenvalues[-1] <= 0.0:
        raise ValueError("recovery map needs phi != 0")
    m_dim = ch.out_dim
    h_pg = hermitize(ch.apply_predual(phi))
    root_phi = mat_pow(phi, 0.5)
    g_inv = mat_pow(h_pg, -0.5)
    s_phi = support_projection(phi)
    s_pg = support_projection(h_pg)
    cols = []
    for col in range(m_dim):
        for row in range(m_dim):
            basis = np.zeros((m_dim, m_dim), dtype=np.complex128)
            basis[row, col] = 1.0
            pushed = ch.apply_predual(root_phi @ s_phi @ basis @ s_phi @ root_phi)
            cols.append(vec(g_inv @ pushed @ g_inv))
    map_matrix = np.column_stack(cols)
    del n_dim
    return RecoveryMap(ch, phi, map_matrix, s_phi, s_pg)


def recovery_identity_residual(rec: RecoveryMap, a) -> float:
    """Residual of the defining identity at the observable a."""
    h_pg = hermitize(rec.base.apply_predual(rec.phi))
    g = mat_pow(h_pg, 0.5)
    root_phi = mat_pow(rec.phi, 0.5)
    lhs = g @ rec.apply_dual(a) @ g
    m = a.matrix if isinstance(a, PsdElement) else np.asarray(a, dtype=np.complex128)
    compressed = rec.s_phi @ m @ rec.s_phi
    rhs = rec.base.apply_predual(root_phi @ compressed @ root_phi)
    scale = max(float(np.max(np.abs(rhs))), 1e-300)
    return float(np.max(np.abs(lhs - rhs))) / scale


def check_sandwich_contraction(ch: Channel, phi: PsdElement, b, p: float
                               ) -> tuple[float, float, bool]:
    """(lhs, rhs, ok) for the norm contraction

        ||h_phi^(1/2p) gamma(b) h_phi^(1/2p)||_p
            <= ||h_(phi.gamma)^(1/2p) b h_(phi.gamma)^(1/2p)||_p

    with b compressed into s(phi.gamma) N s(phi.gamma) first; p >= 1.
    """
    if p < 1:
        raise ValueError(f"the contraction inequality needs p >= 1, got {p}")
    h_pg = hermitize(ch.apply_predual(phi))
    s_pg = support_projection(h_pg)
    m = b.matrix if isinstance(b, PsdElement) else np.asarray(b, dtype=np.complex128)
    bp = s_pg @ m @ s_pg
    e = 1.0 / (2.0 * p)
    left_side = mat_pow(phi, e)
    right_side = mat_pow(h_pg, e)
    lhs = schatten_norm(left_side @ ch.apply_dual(bp) @ left_side, p)
    rhs = schatten_norm(right_side @ bp @ right_side, p)
    return lhs, rhs, bool(lhs <= rhs + 1e-9 * rhs)


def check_carlen_zhang(ch: Channel, a_out, b, p: float) -> tuple[float, float, bool]:
    """(lhs, rhs, ok) for the Schwarz-map trace inequality

        tr((Phi(B)* A^(1/p) Phi(B))^p) <= tr((B* Phi*(A)^(1/p) B)^p)

    with Phi the (CP, hence Schwarz) dual of ``ch``, A positive definite on
    the output side, and B compressed so that BB* lives in the support of
    Phi*(A); p >= 1.
    """
    if p < 1:
        raise ValueError(f"the trace inequality needs p >= 1, got {p}")
    if not ch.is_cp:
        raise ValueError("the Schwarz hypothesis is certified via a Kraus (CP) form")
    a_m = a_out.matrix if isinstance(a_out, PsdElement) else hermitize(np.asarray(a_out))
    w = eigh(a_m).eigenvalues
    if w[0] <= 0:
        raise ValueError("A must be positive definite")
    b_m = b.matrix if isinstance(b, PsdElement) else np.asarray(b, dtype=np.complex128)
    a_pre = hermitize(ch.apply_predual(a_m))
    e_proj = support_projection(a_pre)
    b_m = e_proj @ b_m
    phi_b = ch.apply_dual(b_m)
    lhs = trace_power(hermitize(phi_b.conj().T @ mat_pow(a_m, 1.0 / p) @ phi_b), p)
    rhs = trace_power(hermitize(b_m.conj().T @ mat_pow(a_pre, 1.0 / p) @ b_m), p)
    return lhs, rhs, bool(lhs <= rhs + 1e-9 * max(rhs, 1.0))


# ---------------------------------------------------------------------------
# constructors


def random_channel(in_dim: int, out_dim: int, kraus_count: int, seed: int) -> Channel:
    """Seeded Gaussian Kraus family, normalized to sum K_i K_i* = 1.

    Deterministic per seed. Raises when the family cannot be unital
    (kraus_count * in_dim < out_dim makes sum K_i K_i* singular).
    """
    if kraus_count * in_dim < out_dim:
        raise ValueError(f"{kraus_count} Kraus blocks of shape "
                         f"({out_dim}, {in_dim}) cannot be unital")
    rng = np.random.default_rng(seed)
    blocks = [(rng.standard_normal((out_dim, in_dim))
               + 1j * rng.standard_normal((out_dim, in_dim))) / np.sqrt(2.0)
              for _ in range(kraus_count)]
    total = np.zeros((out_dim, out_dim), dtype=np.complex128)
    for k in blocks:
        total += k @ k.conj().T
    w = eigh(total).eigenvalues
    if w[0] <= 1e-12 * w[-1]:
        raise ValueError("degenerate Kraus draw cannot be normalized to unitality")
    inv_root = mat_pow(total, -0.5)
    return Channel(in_dim, out_dim, kraus=tuple(inv_root @ k for k in blocks))


def identity_channel(dim: int) -> Channel:
    return Channel(dim, dim, kraus=(np.eye(dim, dtype=np.complex128),))


def pinching_channel(dim: int, blocks: list[list[int]] | None = None) -> Channel:
    """Dephasing onto diagonal blocks (default: the full basis pinching)."""
    if blocks is None:
        blocks = [[i] for i in range(dim)]
    kraus = []
    for idx in blocks:
        p = np.zeros((dim, dim), dtype=np.complex128)
        for i in idx:
            p[i, i] = 1.0
        kraus.append(p)
    return Channel(dim, dim, kraus=tuple(kraus))


def depolarizing_channel(dim: int, mixing: float = 1.0) -> Channel:
    """gamma(b) = (1 - mixing) b + mixing tr(b)/dim; CP for mixing in [0, 1]."""
    if not 0.0 <= mixing <= 1.0:
        raise ValueError("mixing must lie in [0, 1]")
    kraus = []
    if mixing < 1.0:
        kraus.append(np.sqrt(1.0 - mixing) * np.eye(dim, dtype=np.complex128))
    if mixing > 0.0:
        for i in range(dim):
            for j in range(dim):
                e = np.zeros((dim, dim), dtype=np.complex128)
                e[i, j] = np.sqrt(mixing / dim)
                kraus.append(e)
    return Channel(dim, dim, kraus=tuple(kraus))


def tensor_embedding_channel(dim: int, factor: int) -> Channel:
    """Dual b -> b (x) 1_factor; the predual is the partial trace."""
    kraus = []
    for j in range(factor):
        e = np.zeros((factor, 1), dtype=np.complex128)
        e[j, 0] = 1.0
        kraus.append(np.kron(np.eye(dim, dtype=np.complex128), e))
    return Channel(dim, dim * factor, kraus=tuple(kraus))


def direct_sum_embedding_channel(dim: int) -> Channel:
    """Dual a -> a (+) a; the predual adds the two diagonal blocks."""
    top = np.vstack([np.eye(dim), np.zeros((dim, dim))]).astype(np.complex128)
    bottom = np.vstack([np.zeros((dim, dim)), np.eye(dim)]).astype(np.complex128)
    return Channel(dim, 2 * dim, kraus=(top, bottom))


def transpose_channel(dim: int, unitary: np.ndarray | None = None) -> Channel:
    """b -> U b^T U*: unital and positive but not completely positive."""
    u = np.eye(dim, dtype=np.complex128) if unitary is None else np.asarray(unitary)
    lm = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for col in range(dim):
        for row in range(dim):
            basis = np.zeros((dim, dim), dtype=np.complex128)
            basis[row, col] = 1.0
            lm[:, col * dim + row] = vec(u @ basis.T @ u.conj().T)
    return Channel(dim, dim, linear_map=lm)


def compose_dual(first: Channel, then: Channel) -> Channel:
    """The map b -> then(first(b)) as a linear-map channel."""
    if first.out_dim != then.in_dim:
        raise ValueError("dual composition dimension mismatch")
    return Channel(first.in_dim, then.out_dim,
                   linear_map=then.dual_matrix() @ first.dual_matrix())
