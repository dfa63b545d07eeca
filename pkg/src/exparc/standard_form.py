"""
Finite-dimensional standard form of the full matrix algebra.

The algebra of ``n x n`` matrices acts on ``C^n (x) C^n`` as ``A (x) I``;
its commutant is ``I (x) B``. Vectors are stored row-major, so a vector
``v`` corresponds to the matrix ``N = v.reshape(n, n)`` with
``(A (x) I) v = vec(A N)`` and ``(I (x) B) v = vec(N B^T)``.

Antilinear operators (``S``, ``J``) are encoded by a complex matrix ``K``
acting after complex conjugation: ``S v = K @ conj(v)``.

This module is an oracle: it builds ``n^2``-dimensional objects directly
from their defining properties and is meant for ``n <= 8``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import arc as _arc
from .arc import ArcSpectralWeights
from .errors import ConeMembershipError, DomainError, FaithfulnessError
from .quantum import DensityMatrix, PurificationVector, purify
from .spectral import DEFAULT_POLICY, as_hermitian, eigh, matrix_log, matrix_power, unitary_power

__all__ = [
    "StandardRep",
    "ConeCertificate",
    "CommutantRadonNikodym",
    "build_standard_rep",
    "modular_flow",
    "cone_membership",
    "sample_cone_oracle",
    "commutant_radon_nikodym",
    "target_vector",
    "vector_state",
    "is_cyclic_separating",
    "hilbert_arc",
    "hilbert_tangent",
    "abstract_state_tangent",
]

CONES = ("C_x", "C_x_dual", "natural")
MAX_DIM = 8
CONE_TOL = 1e-10


def _vec(m):
    return np.asarray(m).reshape(-1)


def _unvec(v, n):
    return np.asarray(v).reshape(n, n)


@dataclass(frozen=True, eq=False)
class StandardRep:
    """Standard-form data for a cyclic and separating unit vector ``x``.

    Attributes
    ----------
    n : int
        Matrix size; the Hilbert space is ``C^(n*n)``.
    x : ndarray
        The reference vector.
    s_matrix, j_matrix : ndarray
        Encodings of the Tomita operator ``S`` and the modular conjugation ``J``.
    delta : ndarray
        The modular operator ``S* S``.
    purification : PurificationVector or None
        Present when the representation was built from a density matrix.
    """

    n: int
    x: np.ndarray
    s_matrix: np.ndarray
    j_matrix: np.ndarray
    delta: np.ndarray
    purification: PurificationVector | None = None

    @classmethod
    def from_vector(cls, x, purification=None):
        x = np.asarray(x, dtype=complex).reshape(-1)
        n = int(round(np.sqrt(x.size)))
        if n * n != x.size:
            raise DomainError(f"vector length {x.size} is not a square")
        if n > MAX_DIM:
            raise DomainError(f"standard form is limited to n <= {MAX_DIM}, got {n}")
        if abs(np.linalg.norm(x) - 1.0) > 1e-12:
            raise DomainError("reference vector must be normalized")
        m = _unvec(x, n)
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[-1] <= 1e-12 * sv[0]:
            raise FaithfulnessError("reference vector is not cyclic and separating")
        # S maps (E_ab (x) I) x to (E_ba (x) I) x; solve for its matrix on that basis
        src = np.empty((n * n, n * n), dtype=complex)
        dst = np.empty_like(src)
        for a in range(n):
            for b in range(n):
                k = a * n + b
                src[:, k] = _vec(np.outer(np.eye(n)[a], np.eye(n)[b]) @ m).conj()
                dst[:, k] = _vec(np.outer(np.eye(n)[b], np.eye(n)[a]) @ m)
        s_mat = np.linalg.solve(src.T, dst.T).T
        delta = as_hermitian((s_mat.conj().T @ s_mat).conj())
        inv_sqrt = matrix_power(eigh(delta), -0.5)
        j_mat = s_mat @ inv_sqrt.conj()
        return cls(n, x, s_mat, j_mat, delta, purification)

    @property
    def matrix(self) -> np.ndarray:
        """The reference vector reshaped to ``n x n``."""
        return _unvec(self.x, self.n)

    @property
    def rho(self) -> np.ndarray:
        """Density matrix of the vector state ``omega_x`` on the algebra."""
        m = self.matrix
        return m @ m.conj().T

    def apply_s(self, v):
        return self.s_matrix @ np.conj(v)

    def apply_s_adjoint(self, v):
        return self.s_matrix.T @ np.conj(v)

    def apply_j(self, v):
        return self.j_matrix @ np.conj(v)

    def left(self, a):
        """``A (x) I`` as an ``n^2 x n^2`` matrix."""
        return np.kron(np.asarray(a), np.eye(self.n))

    def right(self, b):
        """``I (x) B`` as an ``n^2 x n^2`` matrix."""
        return np.kron(np.eye(self.n), np.asarray(b))

    def omega(self, v, a) -> complex:
        """``((A (x) I) v, v)``."""
        return np.vdot(v, self.left(a) @ v)


def build_standard_rep(rho) -> StandardRep:
    """Standard form built on the purification of a faithful density matrix."""
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    pv = purify(rho)
    if not pv.is_separating:
        raise FaithfulnessError("density matrix is singular; purification is not separating")
    return StandardRep.from_vector(pv.vector, purification=pv)


def modular_flow(rep: StandardRep, t: float, a, return_residual: bool = False):
    """Modular automorphism ``Delta^{it} (A (x) I) Delta^{-it}`` as an ``n x n`` matrix.

    The result lies in the algebra; its factor is extracted by a normalized
    partial trace. With ``return_residual=True`` the distance of the full
    operator from ``B (x) I`` is returned as well.
    """
    n = rep.n
    s = eigh(rep.delta)
    u = unitary_power(s, t)
    full = u @ rep.left(a) @ u.conj().T
    b = np.einsum("acbc->ab", full.reshape(n, n, n, n)) / n
    if return_residual:
        return b, float(np.linalg.norm(full - rep.left(b)))
    return b


class ConeCertificate(NamedTuple):
    """Outcome of an exact cone test.

    ``factor`` is the operator exhibiting membership: ``B`` with
    ``v = (I (x) B) x`` for ``C_x``, ``A`` with ``v = (A (x) I) x`` for the dual
    cone, and the positive matrix representing ``v`` for the natural cone.
    """

    member: bool
    cone: str
    factor: np.ndarray
    min_eigenvalue: float
    hermiticity_residual: float

    def __bool__(self):
        return self.member


def _cone_factor(rep, v, cone):
    n = rep.n
    nm = _unvec(np.asarray(v, dtype=complex), n)
    m = rep.matrix
    if cone == "C_x":
        return np.linalg.solve(m, nm).T
    if cone == "C_x_dual":
        return np.linalg.solve(m.T, nm.T).T
    if cone == "natural":
        inv_sqrt = matrix_power(eigh(rep.rho), -0.5)
        return nm @ m.conj().T @ inv_sqrt
    raise ValueError(f"unknown cone {cone!r}; expected one of {CONES}")


def cone_membership(rep: StandardRep, v, cone: str = "C_x", tol: float = CONE_TOL) -> ConeCertificate:
    """Exact membership test by solving for the positive operator behind ``v``."""
    f = _cone_factor(rep, v, cone)
    scale = max(1.0, float(np.linalg.norm(f, 2)))
    herm = float(np.max(np.abs(f - f.conj().T)))
    lam_min = float(np.linalg.eigvalsh(0.5 * (f + f.conj().T))[0])
    member = herm <= tol * scale and lam_min >= -tol * scale
    return ConeCertificate(member, cone, f, lam_min, herm)


def _random_positive(n, rng):
    if rng.random() < 0.5:
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return np.outer(g, g.conj())
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g @ g.conj().T


def sample_cone_oracle(rep: StandardRep, v, cone: str, rng, samples: int = 200, tol: float = CONE_TOL):
    """Membership by testing the defining inequalities on random positive elements.

    Returns ``(member, witness, worst)`` where ``witness`` is the first
    sampled operator violating ``(v, w) >= 0`` (``None`` if none did) and
    ``worst`` the smallest real part observed.
    """
    n = rep.n
    v = np.asarray(v, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(v)))
    worst = np.inf
    for _ in range(samples):
        if cone == "C_x":
            a = _random_positive(n, rng)
            w = rep.left(a) @ rep.x
        elif cone == "C_x_dual":
            a = _random_positive(n, rng)
            w = rep.right(a) @ rep.x
        elif cone == "natural":
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            w = rep.left(a) @ rep.apply_j(rep.left(a) @ rep.x)
        else:
            raise ValueError(f"unknown cone {cone!r}; expected one of {CONES}")
        w = w / np.linalg.norm(w)
        val = np.vdot(w, v)
        worst = min(worst, float(val.real))
        if val.real < -tol * scale or abs(val.imag) > tol * scale * max(1.0, abs(val)):
            return False, a, worst
    return True, None, worst


@dataclass(frozen=True, eq=False)
class CommutantRadonNikodym:
    """Positive commutant operator ``X`` with ``X^{1/2} x = y``."""

    operator: np.ndarray
    factor: np.ndarray
    rep: StandardRep
    y: np.ndarray

    def spectral_weights(self) -> ArcSpectralWeights:
        """Eigenvalues of ``X`` paired with the mass of ``x`` in each eigenvector."""
        s = eigh(self.operator)
        lam = np.clip(s.eigenvalues, 0.0, None)
        lam[lam <= 1e-12 * lam.max()] = 0.0
        w = np.abs(s.eigenvectors.conj().T @ self.rep.x) ** 2
        return ArcSpectralWeights(lam, w / w.sum())


def commutant_radon_nikodym(rep: StandardRep, y, tol: float = CONE_TOL) -> CommutantRadonNikodym:
    """The operator ``X_{y,x}`` for ``y`` in the cone ``C_x``.

    Raises
    ------
    ConeMembershipError
        ``y`` is not in ``C_x``.
    """
    cert = cone_membership(rep, y, "C_x", tol)
    if not cert.member:
        raise ConeMembershipError(
            f"vector is not in C_x (min eigenvalue {cert.min_eigenvalue:.3e}, "
            f"hermiticity residual {cert.hermiticity_residual:.3e})"
        )
    b = as_hermitian(cert.factor)
    b2 = b @ b
    return CommutantRadonNikodym(rep.right(b2), b, rep, np.asarray(y, dtype=complex))


def target_vector(rep: StandardRep, rho_y) -> np.ndarray:
    """The vector ``y`` in ``C_x`` whose vector state is ``rho_y``."""
    rho_y = rho_y if isinstance(rho_y, DensityMatrix) else DensityMatrix(rho_y)
    m = rep.matrix
    minv = np.linalg.inv(m)
    c = as_hermitian(minv @ rho_y.matrix @ minv.conj().T)
    return _vec(m @ matrix_power(eigh(c), 0.5))


def vector_state(rep: StandardRep, v) -> np.ndarray:
    """Density matrix ``N N*`` of the vector state of ``v`` on the algebra."""
    nm = _unvec(np.asarray(v, dtype=complex), rep.n)
    return nm @ nm.conj().T


class CyclicSeparating(NamedTuple):
    cyclic: bool
    separating: bool


def is_cyclic_separating(rep: StandardRep, v, tol: float = 1e-10) -> CyclicSeparating:
    """Cyclicity from the span of ``(A (x) I) v`` over matrix units; separation from the rank of ``v`` as a matrix."""
    n = rep.n
    nm = _unvec(np.asarray(v, dtype=complex), n)
    cols = []
    for a in range(n):
        for b in range(n):
            e = np.zeros((n, n))
            e[a, b] = 1.0
            cols.append(_vec(e @ nm))
    span = np.array(cols).T
    sv = np.linalg.svd(span, compute_uv=False)
    cyclic = bool(sv[-1] > tol * max(sv[0], 1e-300))
    svn = np.linalg.svd(nm, compute_uv=False)
    separating = bool(svn[-1] > tol * max(svn[0], 1e-300))
    return CyclicSeparating(cyclic, separating)


def _arc_data(rn: CommutantRadonNikodym):
    weights = rn.spectral_weights()
    return eigh(rn.operator), weights


def hilbert_arc(rn: CommutantRadonNikodym, t: float) -> np.ndarray:
    """``exp(-zeta(t)) X^{t/2} x``."""
    s, weights = _arc_data(rn)
    return np.exp(-_arc.zeta(weights, t)) * (matrix_power(s, 0.5 * t, DEFAULT_POLICY) @ rn.rep.x)


def hilbert_tangent(rn: CommutantRadonNikodym, t: float) -> np.ndarray:
    """``(1/2 log X - zeta'(t)) gamma(t)`` with the logarithm taken on the support of ``X``."""
    s, weights = _arc_data(rn)
    gamma = hilbert_arc(rn, t)
    log_x = matrix_log(s, DEFAULT_POLICY, on_support=True)
    return 0.5 * (log_x @ gamma) - _arc.zeta_prime(weights, t) * gamma


def abstract_state_tangent(rn: CommutantRadonNikodym, t: float, a) -> float:
    """``(A y_t, log X y_t) - (A y_t, y_t)(y_t, log X y_t)`` on the ``n^2`` space."""
    s, _ = _arc_data(rn)
    y_t = hilbert_arc(rn, t)
    log_x = matrix_log(s, DEFAULT_POLICY, on_support=True)
    ay = rn.rep.left(a) @ y_t
    ly = log_x @ y_t
    return float((np.vdot(ly, ay) - np.vdot(y_t, ay) * np.vdot(ly, y_t)).real)
