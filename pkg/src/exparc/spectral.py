"""
Hermitian eigendecomposition and spectral matrix functions.

All functions take plain ``numpy`` arrays (or a precomputed
:class:`SpectralDecomposition`) and return new arrays; nothing is mutated.
Eigenvalues that are numerically zero are handled according to a
:class:`SupportPolicy` so that kernel and support stay sharply separated.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    EigenConvergenceError,
    FaithfulnessError,
    NegativeSpectrumError,
    NotHermitianError,
    SingularSupportError,
)

__all__ = [
    "SupportPolicy",
    "SpectralDecomposition",
    "DEFAULT_POLICY",
    "as_hermitian",
    "eigh",
    "clipped_eigenvalues",
    "matrix_power",
    "matrix_log",
    "matrix_exp",
    "unitary_power",
    "relative_operator",
]

# Asymmetry tolerated before symmetrization is refused.
_HERMITIAN_ATOL = 1e-8
# Relative gap under which eigenvalues share a cluster for basis canonicalization.
_CLUSTER_RTOL = 1e-12


@dataclass(frozen=True)
class SupportPolicy:
    """How numerically-zero eigenvalues are treated.

    Parameters
    ----------
    rel_tol : float
        Eigenvalues with ``|lambda| <= rel_tol * lambda_max`` are considered zero.
    mode : {"clip", "reject"}
        ``"clip"`` sets such eigenvalues to exactly zero. ``"reject"`` refuses
        any matrix with an eigenvalue in that band (numerically singular input).
    """

    rel_tol: float = 1e-12
    mode: str = "clip"

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.mode not in ("clip", "reject"):
            raise ValueError(f"mode must be 'clip' or 'reject', got {self.mode!r}")


DEFAULT_POLICY = SupportPolicy()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def apply(self, values) -> np.ndarray:
        """Return ``V diag(values) V*``."""
        v = self.eigenvectors
        return (v * np.asarray(values)) @ v.conj().T

    def reconstruct(self) -> np.ndarray:
        return self.apply(self.eigenvalues)


def as_hermitian(a, atol: float = _HERMITIAN_ATOL) -> np.ndarray:
    """Validate a square matrix as Hermitian and return its symmetrized copy."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitianError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    dev = float(np.max(np.abs(a - a.conj().T), initial=0.0))
    if dev > atol * scale:
        raise NotHermitianError(f"matrix is not Hermitian (max |A - A*| = {dev:.3e})")
    return 0.5 * (a + a.conj().T)


def _canonical_cluster_basis(vecs: np.ndarray) -> np.ndarray:
    # Basis of span(vecs) that depends only on the subspace: pivoted QR of its projector.
    m = vecs.shape[1]
    proj = vecs @ vecs.conj().T
    q, _, _ = scipy.linalg.qr(proj, pivoting=True)
    return q[:, :m]


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        mag = np.abs(col)
        idx = int(np.argmax(mag > 1e-8 * mag.max()))
        phase = col[idx] / mag[idx]
        out[:, k] = col / phase
    return out


def eigh(h) -> SpectralDecomposition:
    """Deterministic eigendecomposition of a Hermitian matrix.

    Eigenvalues are ascending. Inside clusters of (numerically) equal
    eigenvalues the eigenvectors are replaced by a canonical basis of the
    eigenspace, and every eigenvector is phase-fixed so that its first
    non-negligible component is real and positive. Repeated calls on equal
    input therefore return identical output.
    """
    h = as_hermitian(h)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        norm = float(np.linalg.norm(h))
        raise EigenConvergenceError(
            f"eigendecomposition did not converge (Frobenius norm {norm:.3e}, dim {h.shape[0]})"
        ) from exc
    scale = max(1.0, float(np.max(np.abs(w), initial=0.0)))
    n = w.shape[0]
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and w[stop] - w[stop - 1] <= _CLUSTER_RTOL * scale:
            stop += 1
        if stop - start > 1:
            v[:, start:stop] = _canonical_cluster_basis(v[:, start:stop])
        start = stop
    v = _fix_phases(v)
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(w, v)


def _decompose(s) -> SpectralDecomposition:
    return s if isinstance(s, SpectralDecomposition) else eigh(s)


def clipped_eigenvalues(s, policy: SupportPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Eigenvalues of a PSD matrix with the zero band set exactly to zero.

    Raises
    ------
    NegativeSpectrumError
        An eigenvalue is negative beyond the tolerance band.
    SingularSupportError
        ``policy.mode == "reject"`` and some eigenvalue lies in the zero band.
    """
    s = _decompose(s)
    lam = np.array(s.eigenvalues, dtype=float)
    lam_max = float(np.max(np.abs(lam), initial=0.0))
    band = policy.rel_tol * lam_max
    if np.any(lam < -band):
        k = int(np.argmin(lam))
        raise NegativeSpectrumError(
            f"eigenvalue {lam[k]:.3e} at index {k} is negative beyond tolerance {band:.3e}"
        )
    small = np.abs(lam) <= band
    if policy.mode == "reject" and np.any(small):
        k = int(np.argmax(small))
        raise SingularSupportError(
            f"eigenvalue {lam[k]:.3e} at index {k} is numerically zero (support policy: reject)",
            index=k,
        )
    lam[small] = 0.0
    return lam


def matrix_power(s, t: float, policy: SupportPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Fractional power of a positive semidefinite matrix.

    ``0**t`` is taken as 1 for ``t == 0`` and as 0 otherwise, so negative
    powers act as the pseudo-inverse power on the support.
    """
    s = _decompose(s)
    lam = clipped_eigenvalues(s, policy)
    t = float(t)
    pos = lam > 0
    f = np.zeros_like(lam)
    f[pos] = lam[pos] ** t
    if t == 0.0:
        f[~pos] = 1.0
    return s.apply(f)


def matrix_log(s, policy: SupportPolicy = DEFAULT_POLICY, on_support: bool = False) -> np.ndarray:
    """Matrix logarithm of a positive matrix.

    With ``on_support=True`` the logarithm is taken on the range only and the
    kernel is mapped to zero; otherwise a zero eigenvalue is an error.
    """
    s = _decompose(s)
    lam = clipped_eigenvalues(s, policy)
    pos = lam > 0
    if not on_support and not np.all(pos):
        k = int(np.argmin(pos))
        raise SingularSupportError(f"logarithm of zero eigenvalue at index {k}", index=k)
    f = np.zeros_like(lam)
    f[pos] = np.log(lam[pos])
    return s.apply(f)


def matrix_exp(h) -> np.ndarray:
    s = _decompose(h)
    return s.apply(np.exp(s.eigenvalues))


def unitary_power(s, t: float, policy: SupportPolicy = DEFAULT_POLICY) -> np.ndarray:
    """``D**(i t)`` for a strictly positive matrix ``D``."""
    s = _decompose(s)
    lam = clipped_eigenvalues(s, policy)
    if np.any(lam <= 0):
        k = int(np.argmin(lam))
        raise SingularSupportError(f"imaginary power of zero eigenvalue at index {k}", index=k)
    return s.apply(np.exp(1j * float(t) * np.log(lam)))


def relative_operator(rho_x, rho_y, policy: SupportPolicy = DEFAULT_POLICY) -> np.ndarray:
    """``rho_x^{-1/2} rho_y rho_x^{-1/2}`` for a faithful reference ``rho_x``.

    Raises
    ------
    FaithfulnessError
        ``rho_x`` has a (numerically) zero eigenvalue.
    """
    sx = _decompose(rho_x)
    lam = clipped_eigenvalues(sx, policy)
    if np.any(lam <= 0):
        raise FaithfulnessError(
            f"reference matrix is singular (smallest eigenvalue {sx.eigenvalues[0]:.3e})"
        )
    rho_y = as_hermitian(rho_y)
    clipped_eigenvalues(eigh(rho_y), policy)
    inv_sqrt = sx.apply(lam ** -0.5)
    r = inv_sqrt @ rho_y @ inv_sqrt
    return 0.5 * (r + r.conj().T)
