"""Variational objectives bracketing Q, their closed-form optimizer guess,
and a deterministic numerical search over positive-definite probes.

For 0 < alpha < 1 every positive invertible a gives an upper bound

    a tr((a^(1/2) h_psi^(a/z) a^(1/2))^(z/a))
      + (1-a) tr((a^(-1/2) h_phi^((1-a)/z) a^(-1/2))^(z/(1-a)))  >=  Q,

so Q is the infimum; for alpha > 1 the analogous expression with the second
term subtracted lower-bounds Q and the supremum is explored. The closed-form
probe below attains equality on faithful pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divergences import DivergenceParams, StatePair, q_alpha_z
from .linalg import PsdElement, eigh, hermitize, mat_pow, support_projection, trace_power

PD_FLOOR = 1e-12
AUTO_REGULARIZATION = -1.0  # sentinel: eps = 1e-8 * (tr h_psi + tr h_phi)


@dataclass(frozen=True)
class VariationalProbe:
    """A strictly positive probe with its objective value and search state."""

    a: np.ndarray
    objective_value: float
    gradient_norm: float | None = None
    iterations: int = 0
    converged: bool = True


def _require_pd(a) -> np.ndarray:
    m = a.matrix if isinstance(a, PsdElement) else np.asarray(a, dtype=np.complex128)
    w = eigh(m).eigenvalues
    if w[0] <= PD_FLOOR * max(float(w[-1]), 0.0) or w[-1] <= 0.0:
        raise ValueError(f"probe must be positive definite (min eig = {w[0]:.3e})")
    return hermitize(m)


def objective_lower(a, pair: StatePair, params: DivergenceParams) -> float:
    """The 0 < alpha < 1 objective at a strictly positive probe; >= Q."""
    alpha, z = params.alpha, params.z
    if not alpha < 1:
        raise ValueError("objective_lower is defined for 0 < alpha < 1")
    m = _require_pd(a)
    spec = eigh(m)
    u = spec.eigenvectors
    half = hermitize((u * np.sqrt(spec.eigenvalues)) @ u.conj().T)
    neg_half = hermitize((u * (1.0 / np.sqrt(spec.eigenvalues))) @ u.conj().T)
    term1 = trace_power(hermitize(half @ mat_pow(pair.h_psi, alpha / z) @ half), z / alpha)
    term2 = trace_power(
        hermitize(neg_half @ mat_pow(pair.h_phi, (1.0 - alpha) / z) @ neg_half),
        z / (1.0 - alpha))
    return alpha * term1 + (1.0 - alpha) * term2


def objective_upper(a, pair: StatePair, params: DivergenceParams) -> float:
    """The alpha > 1 objective at a psd probe; <= Q whenever Q is finite."""
    alpha, z = params.alpha, params.z
    if not alpha > 1:
        raise ValueError("objective_upper is defined for alpha > 1")
    m = a.matrix if isinstance(a, PsdElement) else hermitize(np.asarray(a, dtype=np.complex128))
    half = mat_pow(m, 0.5)
    term1 = trace_power(hermitize(half @ mat_pow(pair.h_psi, alpha / z) @ half), z / alpha)
    term2 = trace_power(
        hermitize(half @ mat_pow(pair.h_phi, (alpha - 1.0) / z) @ half),
        z / (alpha - 1.0))
    return alpha * term1 - (alpha - 1.0) * term2


def _is_faithful(h: PsdElement) -> bool:
    w = h.spectrum.eigenvalues
    return w[0] > h.dim * np.finfo(np.float64).eps * max(float(w[-1]), 0.0) and w[-1] > 0


def closed_form_witness(pair: StatePair, params: DivergenceParams,
                        regularization: float = AUTO_REGULARIZATION) -> np.ndarray:
    """The probe a0 = h_psi^(-a/2z) (h_psi^(a/2z) h_phi^((1-a)/z) h_psi^(a/2z))^a h_psi^(-a/2z).

    Attains the objective bound with equality on faithful pairs. Non-faithful
    input is regularized to (psi + eps*phi, phi + eps*psi) with
    eps = 1e-8 * (tr h_psi + tr h_phi) by default (caller-overridable);
    pass regularization=0 to forbid regularization and error instead.
    """
    alpha, z = params.alpha, params.z
    faithful = _is_faithful(pair.h_psi) and _is_faithful(pair.h_phi)
    if not faithful:
        if regularization == 0.0:
            raise ValueError("closed_form_witness needs faithful states "
                             "(or a regularization epsilon)")
        eps = regularization
        if eps == AUTO_REGULARIZATION:
            eps = 1e-8 * (pair.psi_weight + pair.phi_weight)
        pair = StatePair(
            PsdElement(pair.h_psi.matrix + eps * pair.h_phi.matrix),
            PsdElement(pair.h_phi.matrix + eps * pair.h_psi.matrix))
    e = alpha / (2.0 * z)
    inner = mat_pow(pair.h_psi, e) @ mat_pow(pair.h_phi, (1.0 - alpha) / z) @ mat_pow(pair.h_psi, e)
    outer = mat_pow(pair.h_psi, -e)
    a0 = hermitize(outer @ mat_pow(hermitize(inner), alpha) @ outer)
    # identity on the joint kernel keeps the probe invertible; those
    # directions contribute nothing to either objective term
    joint = support_projection(pair.h_psi.matrix + pair.h_phi.matrix)
    return a0 + (np.eye(pair.dim) - joint)


def _herm_basis_step(n: int, k: int, step: float) -> np.ndarray:
    """k-th Hermitian coordinate direction scaled by step (diag first)."""
    delta = np.zeros((n, n), dtype=np.complex128)
    if k < n:
        delta[k, k] = step
        return delta
    k -= n
    off = n * (n - 1) // 2
    imag = k >= off
    if imag:
        k -= off
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if count == k:
                if imag:
                    delta[i, j] = 1j * step
                    delta[j, i] = -1j * step
                else:
                    delta[i, j] = step
                    delta[j, i] = step
                return delta
            count += 1
    raise IndexError(k)


def _search(pair: StatePair, params: DivergenceParams, budget: int,
            start, objective, sign: float) -> VariationalProbe:
    """Gradient descent/ascent on H with a = exp(H); sign=+1 minimizes."""
    n = pair.dim
    if isinstance(start, str):
        if start == "witness":
            a_start = closed_form_witness(pair, params)
        elif start == "identity":
            a_start = np.eye(n, dtype=np.complex128)
        else:
            raise ValueError(f"unknown start {start!r}")
    else:
        a_start = _require_pd(start)
    spec = eigh(a_start)
    w = np.maximum(spec.eigenvalues, PD_FLOOR * float(spec.eigenvalues[-1]))
    u = spec.eigenvectors
    h = hermitize((u * np.log(w)) @ u.conj().T)

    def f_of(hmat: np.ndarray) -> float:
        s = eigh(hmat)
        a = hermitize((s.eigenvectors * np.exp(s.eigenvalues)) @ s.eigenvectors.conj().T)
        return objective(a, pair, params)

    nparams = n * n
    fval = f_of(h)
    grad_norm = None
    iterations = 0
    converged = False
    for _ in range(max(budget, 0)):
        scale = max(1.0, float(np.max(np.abs(h))))
        step = 1e-5 * scale
        grad = np.zeros(nparams)
        for k in range(nparams):
            delta = _herm_basis_step(n, k, step)
            grad[k] = (f_of(h + delta) - f_of(h - delta)) / (2.0 * step)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm <= 1e-9 * (1.0 + abs(fval)):
            converged = True
            break
        direction = np.zeros((n, n), dtype=np.complex128)
        for k in range(nparams):
            direction += _herm_basis_step(n, k, -sign * grad[k])
        eta = 1.0 / (1.0 + grad_norm)
        improved = False
        for _ in range(30):
            cand = h + eta * direction
            fcand = f_of(cand)
            if sign * (fval - fcand) >= 1e-4 * eta * grad_norm ** 2:
                h, fval = cand, fcand
                improved = True
                break
            eta /= 2.0
        iterations += 1
        if not improved:
            converged = True
            break
    else:
        converged = budget == 0 or grad_norm is None
    s = eigh(h)
    a_final = hermitize((s.eigenvectors * np.exp(s.eigenvalues)) @ s.eigenvectors.conj().T)
    return VariationalProbe(a_final, fval, grad_norm, iterations, converged)


def minimize_lower(pair: StatePair, params: DivergenceParams, budget: int = 100,
                   start="witness") -> VariationalProbe:
    """Descend the 0 < alpha < 1 objective toward its infimum Q.

    Deterministic given the start ('witness', 'identity', or an explicit
    positive matrix). Exhausting the budget returns the best probe with
    converged=False rather than failing. The result can never undershoot Q
    beyond evaluation round-off.
    """
    if not params.alpha < 1:
        raise ValueError("minimize_lower needs 0 < alpha < 1")
    return _search(pair, params, budget, start, objective_lower, +1.0)


def maximize_upper(pair: StatePair, params: DivergenceParams, budget: int = 100,
                   start="witness") -> VariationalProbe:
    """Ascend the alpha > 1 objective toward Q (its supremum is explored,
    not asserted, away from z = alpha)."""
    if not params.alpha > 1:
        raise ValueError("maximize_upper needs alpha > 1")
    return _search(pair, params, budget, start, objective_upper, -1.0)


def witness_gap(pair: StatePair, params: DivergenceParams) -> tuple[float, float, float]:
    """(objective at a0, Q, relative gap) for reporting."""
    a0 = closed_form_witness(pair, params)
    obj = objective_lower(a0, pair, params) if params.alpha < 1 else objective_upper(a0, pair, params)
    q = q_alpha_z(pair, params)
    if not q.is_finite:
        return obj, math.inf, math.inf
    rel = abs(obj - q.value) / max(abs(q.value), 1e-300)
    return obj, q.value, rel
