"""
Exponential arcs between density matrices.

For a faithful reference ``rho_x`` and a target ``rho_y`` the arc is

    rho_t = exp(-2 zeta(t)) rho_x^{1/2} R^t rho_x^{1/2},
    R = rho_x^{-1/2} rho_y rho_x^{-1/2},

which is what the vector-state arc on the standard form reduces to. Only
``n x n`` matrices are touched here; :mod:`exparc.standard_form` carries the
``n^2``-dimensional construction and serves as a cross-check.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import arc as _arc
from .arc import ArcSpectralWeights
from .errors import (
    ArcDiscontinuityWarning,
    DivergentDerivativeError,
    DomainError,
    StateSchemaError,
)
from .spectral import (
    DEFAULT_POLICY,
    SupportPolicy,
    as_hermitian,
    clipped_eigenvalues,
    eigh,
    matrix_log,
    matrix_power,
    relative_operator,
)

__all__ = [
    "DensityMatrix",
    "PurificationVector",
    "DensityArc",
    "purify",
    "quantum_arc_weights",
    "arc_density",
    "log_geodesic",
    "state_tangent",
    "expectation",
    "trace_distance",
    "commutator_norm",
]

PSD_TOL = 1e-10
TRACE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive semidefinite Hermitian matrix of unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        try:
            m = as_hermitian(self.matrix)
        except DomainError as exc:
            raise StateSchemaError(str(exc)) from exc
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateSchemaError(f"density matrix has trace {tr!r}, expected 1")
        lam_min = float(np.linalg.eigvalsh(m)[0])
        if lam_min < -PSD_TOL:
            raise StateSchemaError(f"density matrix is not positive semidefinite (eigenvalue {lam_min:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def normalized(cls, matrix):
        m = as_hermitian(matrix)
        return cls(m / np.trace(m).real)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def spectral(self):
        return eigh(self.matrix)

    def is_faithful(self, policy: SupportPolicy = DEFAULT_POLICY) -> bool:
        lam = clipped_eigenvalues(self.spectral, SupportPolicy(policy.rel_tol, "clip"))
        return bool(np.all(lam > 0))

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


def _as_dm(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


@dataclass(frozen=True, eq=False)
class PurificationVector:
    """Unit vector ``sum_i sqrt(p_i) e_i (x) e_i`` in ``C^n (x) C^n``.

    ``basis`` holds the eigenvectors ``e_i`` (columns) that were used and
    ``probabilities`` the eigenvalues ``p_i``. Components are ordered
    row-major, so ``vector.reshape(n, n)`` is ``V diag(sqrt p) V^T``.
    """

    vector: np.ndarray
    basis: np.ndarray
    probabilities: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        n = self.dim
        return self.vector.reshape(n, n)

    @property
    def is_separating(self) -> bool:
        return bool(np.all(self.probabilities > 0))


def purify(rho, policy: SupportPolicy = DEFAULT_POLICY) -> PurificationVector:
    """Vector representative of ``rho`` built from its eigenbasis.

    The vector is cyclic and separating exactly when ``rho`` is faithful;
    check :attr:`PurificationVector.is_separating`.
    """
    rho = _as_dm(rho)
    s = rho.spectral
    p = clipped_eigenvalues(s, SupportPolicy(policy.rel_tol, "clip"))
    v = s.eigenvectors
    m = (v * np.sqrt(p)) @ v.T
    return PurificationVector(m.reshape(-1), v, p)


def expectation(rho, a) -> float:
    """``Tr(rho A)`` for Hermitian ``A``."""
    rho = _as_dm(rho)
    return float(np.real(np.trace(rho.matrix @ np.asarray(a, dtype=complex))))


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b``."""
    d = as_hermitian(np.asarray(a) - np.asarray(b))
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(d))))


def commutator_norm(a, b) -> float:
    """Spectral norm of ``ab - ba``."""
    a, b = np.asarray(a), np.asarray(b)
    return float(np.linalg.norm(a @ b - b @ a, 2))


class DensityArc:
    """Exponential arc from ``rho_x`` to ``rho_y`` with cached spectral data.

    Parameters
    ----------
    rho_x : DensityMatrix or array_like
        Faithful reference state (the arc starts here at ``t = 0``).
    rho_y : DensityMatrix or array_like
        Target state (reached at ``t = 1``); may be rank deficient.
    policy : SupportPolicy
        Treatment of numerically zero eigenvalues.
    """

    def __init__(self, rho_x, rho_y, policy: SupportPolicy = DEFAULT_POLICY):
        self.rho_x = _as_dm(rho_x)
        self.rho_y = _as_dm(rho_y)
        if self.rho_x.dim != self.rho_y.dim:
            raise StateSchemaError(f"dimension mismatch: {self.rho_x.dim} vs {self.rho_y.dim}")
        self.policy = policy
        self.relative = relative_operator(self.rho_x.spectral, self.rho_y.matrix, policy)
        self.relative_spectral = eigh(self.relative)
        self._sqrt_x = matrix_power(self.rho_x.spectral, 0.5, policy)
        lam = clipped_eigenvalues(self.relative_spectral, policy)
        v = self.relative_spectral.eigenvectors
        w = np.einsum("ik,ij,jk->k", v.conj(), self.rho_x.matrix, v).real
        self.weights = ArcSpectralWeights(lam, np.clip(w, 0.0, None))

    @property
    def dim(self) -> int:
        return self.rho_x.dim

    def zeta(self, t):
        return _arc.zeta(self.weights, t)

    def _check_t(self, t):
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise DomainError(f"t must lie in [0, 1], got {t!r}")
        return t

    def density(self, t: float) -> DensityMatrix:
        t = self._check_t(t)
        if t == 0.0 and self.weights.has_kernel:
            warnings.warn("arc to a rank-deficient target is discontinuous at t=0",
                          ArcDiscontinuityWarning, stacklevel=2)
        rt = matrix_power(self.relative_spectral, t, self.policy)
        m = np.exp(-2.0 * self.zeta(t)) * (self._sqrt_x @ rt @ self._sqrt_x)
        return DensityMatrix(0.5 * (m + m.conj().T))

    def derivative(self, t: float) -> np.ndarray:
        """Time derivative of the arc density at ``t``.

        ``exp(-2 zeta) rho_x^{1/2} R^t (log R - 2 zeta'(t)) rho_x^{1/2}``, with
        the logarithm taken on the support of ``R``.
        """
        t = self._check_t(t)
        if t == 0.0 and self.weights.has_kernel:
            raise DivergentDerivativeError(
                "derivative undefined at t=0: R has a kernel carrying reference mass"
            )
        s = self.relative_spectral
        rt = matrix_power(s, t, self.policy)
        log_r = matrix_log(s, self.policy, on_support=True)
        gen = rt @ (log_r - 2.0 * _arc.zeta_prime(self.weights, t) * np.eye(self.dim))
        d = np.exp(-2.0 * self.zeta(t)) * (self._sqrt_x @ gen @ self._sqrt_x)
        return 0.5 * (d + d.conj().T)

    def tangent(self, t: float, a) -> float:
        """``d/dt Tr(rho_t A)``."""
        return float(np.real(np.trace(self.derivative(t) @ np.asarray(a, dtype=complex))))


def quantum_arc_weights(rho_x, rho_y, policy: SupportPolicy = DEFAULT_POLICY) -> ArcSpectralWeights:
    """Eigenvalues of ``R`` paired with the ``rho_x``-mass of each eigenvector."""
    return DensityArc(rho_x, rho_y, policy).weights


def arc_density(rho_x, rho_y, t: float, policy: SupportPolicy = DEFAULT_POLICY) -> DensityMatrix:
    return DensityArc(rho_x, rho_y, policy).density(t)


def state_tangent(rho_x, rho_y, t: float, a, policy: SupportPolicy = DEFAULT_POLICY) -> float:
    return DensityArc(rho_x, rho_y, policy).tangent(t, a)


def log_geodesic(rho_x, rho_y, t: float, policy: SupportPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """Normalized ``exp((1 - t) log rho_x + t log rho_y)``; both states must be faithful."""
    rho_x, rho_y = _as_dm(rho_x), _as_dm(rho_y)
    t = float(t)
    h = (1.0 - t) * matrix_log(rho_x.spectral, policy) + t * matrix_log(rho_y.spectral, policy)
    s = eigh(h)
    e = s.apply(np.exp(s.eigenvalues - s.eigenvalues.max()))
    return DensityMatrix(e / np.trace(e).real)

