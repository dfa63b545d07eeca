"""
Exponential arcs between discrete probability vectors.

A :class:`ProbabilityVector` carries point masses ``p_i`` together with
optional quadrature weights ``h_i``; the measure is ``p_i h_i``. With unit
quadrature this is the diagonal-matrix algebra, with a quadrature grid it is
a discretized density on ``R^n``. The arc between ``p`` and ``q`` is

    r_t(i) = exp(-2 zeta(t)) * p_i**(1 - t) * q_i**t.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .arc import ArcSpectralWeights
from .errors import (
    ArcDiscontinuityWarning,
    DomainError,
    FaithfulnessError,
    GeneratorUndefinedError,
    InfiniteDivergenceError,
    StateSchemaError,
)

__all__ = [
    "ProbabilityVector",
    "radon_nikodym",
    "arc_point",
    "tangent_generator",
    "state_tangent",
    "expectation",
    "kl_divergence",
]

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Non-negative weights whose quadrature-weighted sum is one."""

    weights: np.ndarray
    quadrature: np.ndarray = field(default=None)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        if self.quadrature is None:
            h = np.ones_like(w)
        else:
            h = np.array(self.quadrature, dtype=float).reshape(-1)
        if w.size == 0:
            raise StateSchemaError("probability vector is empty")
        if h.shape != w.shape:
            raise StateSchemaError(f"quadrature length {h.size} does not match weights length {w.size}")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(h))):
            raise StateSchemaError("probability vector has non-finite entries")
        if np.any(w < 0):
            raise StateSchemaError("probability weights must be non-negative")
        if np.any(h <= 0):
            raise StateSchemaError("quadrature weights must be positive")
        total = float(np.dot(w, h))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise StateSchemaError(f"probability vector sums to {total!r}, expected 1")
        w.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "quadrature", h)

    @classmethod
    def normalized(cls, weights, quadrature=None):
        """Rescale non-negative weights so the quadrature-weighted sum is one."""
        w = np.asarray(weights, dtype=float)
        h = np.ones_like(w) if quadrature is None else np.asarray(quadrature, dtype=float)
        return cls(w / np.dot(w, h), h)

    @property
    def dim(self) -> int:
        return self.weights.size

    @property
    def mass(self) -> np.ndarray:
        """Point masses ``p_i h_i``."""
        return self.weights * self.quadrature

    @property
    def is_faithful(self) -> bool:
        return bool(np.all(self.weights > 0))

    def __repr__(self):
        return f"ProbabilityVector(weights={self.weights.tolist()!r})"


def _as_pv(p) -> ProbabilityVector:
    return p if isinstance(p, ProbabilityVector) else ProbabilityVector(p)


def _check_pair(p, q):
    p, q = _as_pv(p), _as_pv(q)
    if p.dim != q.dim:
        raise StateSchemaError(f"dimension mismatch: {p.dim} vs {q.dim}")
    if not np.array_equal(p.quadrature, q.quadrature):
        raise StateSchemaError("states use different quadrature weights")
    return p, q


def _check_faithful(p):
    if not p.is_faithful:
        k = int(np.argmin(p.weights > 0))
        raise FaithfulnessError(f"reference probability vanishes at index {k}")


def radon_nikodym(p, q) -> ArcSpectralWeights:
    """Spectral data of the arc from ``p`` to ``q``: points ``(q_i/p_i, p_i h_i)``."""
    p, q = _check_pair(p, q)
    _check_faithful(p)
    return ArcSpectralWeights(q.weights / p.weights, p.mass)


def expectation(r, values) -> float:
    """Expectation ``sum_i r_i h_i A_i`` of a diagonal observable."""
    r = _as_pv(r)
    a = np.asarray(values, dtype=float)
    if a.shape != r.weights.shape:
        raise StateSchemaError(f"observable length {a.size} does not match state length {r.dim}")
    return float(np.dot(r.mass, a))


def arc_point(p, q, t: float) -> ProbabilityVector:
    """State at parameter ``t`` on the exponential arc from ``p`` to ``q``.

    At ``t = 0`` the reference ``p`` is returned exactly; if ``q`` vanishes
    somewhere on the support of ``p`` the arc is discontinuous there and an
    :class:`ArcDiscontinuityWarning` is issued.
    """
    p, q = _check_pair(p, q)
    _check_faithful(p)
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t!r}")
    if t == 0.0:
        if not q.is_faithful:
            warnings.warn("arc from a non-faithful target is discontinuous at t=0",
                          ArcDiscontinuityWarning, stacklevel=2)
        return p
    if t == 1.0:
        return q
    pos = q.weights > 0
    logr = np.full(p.dim, -np.inf)
    logr[pos] = (1.0 - t) * np.log(p.weights[pos]) + t * np.log(q.weights[pos])
    r = np.exp(logr - logr[pos].max())
    return ProbabilityVector(r / np.dot(r, p.quadrature), p.quadrature)


def tangent_generator(p, q) -> np.ndarray:
    """Generator ``H_i = log(q_i / p_i)`` driving the arc from ``p`` to ``q``."""
    p, q = _check_pair(p, q)
    _check_faithful(p)
    if not q.is_faithful:
        k = int(np.argmin(q.weights > 0))
        raise GeneratorUndefinedError(f"target probability vanishes at index {k}; log(q/p) is -inf")
    return np.log(q.weights / p.weights)


def state_tangent(p, q, t: float, values) -> float:
    """Derivative of ``t -> omega_t(A)`` along the arc.

    Uses ``omega_t(A H) - omega_t(A) omega_t(H)`` with the generator
    restricted to the support of ``q``; for ``t = 0`` the generator must be
    defined everywhere.
    """
    p, q = _check_pair(p, q)
    _check_faithful(p)
    t = float(t)
    if t == 0.0:
        h = tangent_generator(p, q)
    else:
        pos = q.weights > 0
        h = np.zeros(p.dim)
        h[pos] = np.log(q.weights[pos] / p.weights[pos])
    r = arc_point(p, q, t)
    a = np.asarray(values, dtype=float)
    return expectation(r, a * h) - expectation(r, a) * expectation(r, h)


def kl_divergence(p, q) -> float:
    """Relative entropy ``sum_i p_i h_i log(p_i / q_i)``."""
    p, q = _check_pair(p, q)
    sp = p.weights > 0
    if np.any(sp & (q.weights == 0)):
        raise InfiniteDivergenceError("support of p is not contained in support of q")
    m = p.mass[sp]
    return float(np.dot(m, np.log(p.weights[sp] / q.weights[sp])))

