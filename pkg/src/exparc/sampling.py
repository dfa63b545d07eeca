"""Seeded random states and operators for tests and the verification suite."""
from __future__ import annotations

import numpy as np

from .arc import ArcSpectralWeights
from .classical import ProbabilityVector, radon_nikodym
from .quantum import DensityMatrix


def random_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (z + z.conj().T)


def random_psd(n, rng, rank=None):
    rank = n if rank is None else rank
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return g @ g.conj().T


def random_probability(n, rng, zeros=0, floor=0.0):
    """Dirichlet(1) sample, optionally with ``zeros`` entries forced to zero."""
    w = rng.dirichlet(np.ones(n)) + floor
    if zeros:
        idx = rng.choice(n, size=min(zeros, n - 1), replace=False)
        w[idx] = 0.0
    return ProbabilityVector.normalized(w)


def random_density_matrix(n, rng, rank=None, mix=0.05):
    """Random state; full-rank states are mixed with ``mix * I/n`` to bound conditioning."""
    m = random_psd(n, rng, rank)
    m = m / np.trace(m).real
    if rank is None or rank == n:
        m = (1.0 - mix) * m + mix * np.eye(n) / n
    return DensityMatrix.normalized(m)


def random_commuting_pair(n, rng, zeros=0):
    u = random_unitary(n, rng)
    p = random_probability(n, rng, floor=0.02)
    q = random_probability(n, rng, zeros=zeros, floor=0.0 if zeros else 0.02)
    rx = DensityMatrix.normalized((u * p.weights) @ u.conj().T)
    ry = DensityMatrix.normalized((u * q.weights) @ u.conj().T)
    return rx, ry, p, q, u


def random_arc(n, rng, zeros=0) -> ArcSpectralWeights:
    p = random_probability(n, rng, floor=1e-3)
    q = random_probability(n, rng, zeros=zeros)
    return radon_nikodym(p, q)
