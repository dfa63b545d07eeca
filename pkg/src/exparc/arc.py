"""
Calculus of an exponential arc from its spectral data.

An arc from a reference vector ``x`` to an endpoint ``y`` is determined, as
far as its normalization is concerned, by the eigenvalues ``lambda_k`` of the
positive operator ``X`` with ``y = X^{1/2} x`` and the mass ``w_k`` that ``x``
puts in each eigenspace. The normalization function is

    zeta(t) = 1/2 * log(sum_k w_k * lambda_k**t),

with the convention ``0**0 == 1``. Everything in this module works on those
``(lambda_k, w_k)`` pairs, independently of whether they came from
probability vectors, density matrices or an explicit standard form.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import (
    DegenerateArcError,
    DivergentDerivativeError,
    DomainError,
    NotExtendableError,
    NotInvertibleError,
)

__all__ = [
    "ArcSpectralWeights",
    "LegendrePair",
    "ExtendedArc",
    "zeta",
    "zeta_prime",
    "zeta_second",
    "dual_coordinate",
    "subarc",
    "invert",
    "reparametrize",
    "extension_check",
    "extend_domain",
    "legendre",
]

WEIGHT_DROP = 1e-15
WEIGHT_SUM_TOL = 1e-12
ENDPOINT_NORM_TOL = 1e-10
LEGENDRE_MAX_ITER = 200
LEGENDRE_XTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ArcSpectralWeights:
    """Spectral data ``(lambda_k, w_k)`` of an exponential arc.

    Entries with weight below ``1e-15`` are dropped at construction. The
    weights must sum to one (normalized reference) and ``sum w_k lambda_k``
    must be one (normalized endpoint).
    """

    lambdas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lambdas, dtype=float).reshape(-1)
        w = np.array(self.weights, dtype=float).reshape(-1)
        if lam.shape != w.shape:
            raise ValueError(f"lambdas and weights differ in length: {lam.shape} vs {w.shape}")
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(w))):
            raise ValueError("arc data must be finite")
        if np.any(lam < 0) or np.any(w < 0):
            raise ValueError("arc eigenvalues and weights must be non-negative")
        keep = w >= WEIGHT_DROP
        lam, w = lam[keep], w[keep]
        if lam.size == 0:
            raise DegenerateArcError("arc has no weight")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, expected 1")
        if abs(np.dot(w, lam) - 1.0) > ENDPOINT_NORM_TOL:
            raise ValueError(f"endpoint norm sum(w*lambda) = {np.dot(w, lam)!r}, expected 1")
        lam.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_points(cls, points):
        pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
        return cls(pts[:, 0], pts[:, 1])

    @classmethod
    def normalized(cls, lambdas, weights):
        """Build an arc after rescaling weights and eigenvalues to the normalized form."""
        lam = np.asarray(lambdas, dtype=float)
        w = np.asarray(weights, dtype=float)
        w = w / w.sum()
        lam = lam / np.dot(w, lam)
        return cls(lam, w)

    @property
    def points(self):
        return list(zip(self.lambdas.tolist(), self.weights.tolist()))

    def __len__(self):
        return self.lambdas.size

    def __repr__(self):
        return f"ArcSpectralWeights(points={self.points!r})"

    @property
    def has_kernel(self) -> bool:
        """True if ``X`` has a zero eigenvalue carrying reference mass."""
        return bool(np.any(self.lambdas == 0))

    @property
    def is_flat(self) -> bool:
        """True if all eigenvalues coincide, i.e. ``zeta`` is identically zero."""
        lam = self.lambdas
        return bool(lam.max() - lam.min() <= 1e-12 * max(1.0, lam.max()))

    @property
    def is_affine(self) -> bool:
        """True if ``zeta`` is affine on ``(0, 1]`` (``zeta'' = 0`` there).

        Happens for flat arcs and for arcs whose non-zero eigenvalues all coincide.
        """
        lam = self.lambdas[self.lambdas > 0]
        return bool(lam.max() - lam.min() <= 1e-12 * lam.max())


@dataclass(frozen=True)
class LegendrePair:
    """Result of :func:`legendre`: maximizer, conjugate value and queried slope."""

    t_star: float
    zeta_star: float
    slope: float
    degenerate: bool = False


def _check_range(t, lo=0.0, hi=1.0):
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t < lo) or np.any(t > hi):
        raise DomainError(f"t must lie in [{lo}, {hi}]")
    return t


def _log_terms(arc: ArcSpectralWeights, t: np.ndarray) -> np.ndarray:
    # log(w_k lambda_k^t) with shape t.shape + (K,); 0**0 == 1.
    lam, w = arc.lambdas, arc.weights
    pos = lam > 0
    if np.any(~pos) and np.any(t < 0):
        raise NotExtendableError("negative t requires all eigenvalues to be positive")
    logw = np.log(w)
    loglam = np.where(pos, np.log(np.where(pos, lam, 1.0)), 0.0)
    terms = logw + t[..., None] * loglam
    zero_t = (t == 0)[..., None]
    return np.where(pos | zero_t, terms, -np.inf)


def _log_moment(arc, t):
    terms = _log_terms(arc, t)
    out = logsumexp(terms, axis=-1)
    if np.any(~np.isfinite(out)):
        raise DegenerateArcError("sum of w_k lambda_k^t vanishes (all eigenvalues are zero)")
    return out, terms


def _tilted(arc, t):
    # Probabilities w_k lambda_k^t / sum_j w_j lambda_j^t.
    lm, terms = _log_moment(arc, t)
    return np.exp(terms - lm[..., None])


def _scalar(x, like):
    return float(x) if np.ndim(like) == 0 else x


def _zeta(arc, t):
    return 0.5 * _log_moment(arc, t)[0]


def _zeta_prime(arc, t):
    if arc.has_kernel and np.any(t <= 0):
        raise DivergentDerivativeError(
            "derivative diverges at t=0: X has a zero eigenvalue with positive weight"
        )
    pi = _tilted(arc, t)
    loglam = np.log(np.where(arc.lambdas > 0, arc.lambdas, 1.0))
    return 0.5 * (pi @ loglam)


def _zeta_second(arc, t):
    if arc.has_kernel and np.any(t <= 0):
        raise DivergentDerivativeError(
            "derivative diverges at t=0: X has a zero eigenvalue with positive weight"
        )
    pi = _tilted(arc, t)
    loglam = np.log(np.where(arc.lambdas > 0, arc.lambdas, 1.0))
    mean = pi @ loglam
    centered = loglam - mean[..., None]
    return 0.5 * np.sum(pi * centered**2, axis=-1)


def zeta(arc: ArcSpectralWeights, t):
    """Normalization function ``1/2 log sum_k w_k lambda_k**t`` on ``[0, 1]``.

    Accepts a scalar or an array of ``t`` values.
    """
    tt = _check_range(t)
    return _scalar(_zeta(arc, tt), t)


def zeta_prime(arc: ArcSpectralWeights, t):
    """First derivative of :func:`zeta`.

    At ``t = 0`` this is the right derivative ``1/2 sum_k w_k log lambda_k``;
    it diverges (and raises :class:`DivergentDerivativeError`) when ``X`` has
    a kernel carrying reference mass. At ``t = 1`` it is the left derivative.
    """
    tt = _check_range(t)
    return _scalar(_zeta_prime(arc, tt), t)


def zeta_second(arc: ArcSpectralWeights, t):
    """Second derivative of :func:`zeta`; half the variance of ``log lambda`` under the tilted weights."""
    tt = _check_range(t)
    return _scalar(_zeta_second(arc, tt), t)


def dual_coordinate(arc: ArcSpectralWeights, t):
    """Dual chart of the one-parameter model, ``zeta'(t)``."""
    return zeta_prime(arc, t)


def subarc(arc: ArcSpectralWeights, t: float) -> ArcSpectralWeights:
    """Spectral data of the arc from ``x`` to the arc point at ``t``.

    The new arc satisfies ``zeta_new(s) = zeta(s t) - s zeta(t)``.
    """
    t = float(t)
    if not 0.0 < t <= 1.0:
        raise DomainError(f"subarc parameter must lie in (0, 1], got {t!r}")
    if t == 1.0:
        return arc
    lam = arc.lambdas
    pos = lam > 0
    z2 = 2.0 * _zeta(arc, np.asarray(t))
    new = np.zeros_like(lam)
    new[pos] = np.exp(t * np.log(lam[pos]) - z2)
    return ArcSpectralWeights(new, arc.weights)


def invert(arc: ArcSpectralWeights) -> ArcSpectralWeights:
    """The reversed arc, from ``y`` back to ``x``: points ``(1/lambda_k, w_k lambda_k)``.

    Satisfies ``zeta_inv(t) = zeta(1 - t)``.

    Raises
    ------
    NotInvertibleError
        ``X`` has a zero eigenvalue carrying reference mass (``y`` not cyclic).
    """
    if arc.has_kernel:
        raise NotInvertibleError("arc endpoint is not cyclic: X has a zero eigenvalue with positive weight")
    w = arc.weights * arc.lambdas
    return ArcSpectralWeights(1.0 / arc.lambdas, w / w.sum())


def _trivial_at(arc, s):
    if s == 0.0:
        base = arc.weights
    else:
        base = _tilted(arc, np.asarray(s))
    return ArcSpectralWeights(np.ones_like(base), base / base.sum())


def reparametrize(arc: ArcSpectralWeights, s: float, t: float) -> ArcSpectralWeights:
    """Spectral data of the arc connecting the point at ``t`` to the point at ``s``.

    The returned arc is based at the arc point ``s``; its own point ``r``
    is the original arc point ``(1 - r) s + r t``. Built by chaining
    :func:`subarc` and :func:`invert`.
    """
    s, t = float(s), float(t)
    _check_range([s, t])
    if s == t:
        return _trivial_at(arc, s)
    if s > t:
        return invert(reparametrize(arc, t, s))
    if s == 0.0:
        return subarc(arc, t)
    # arc from z=gamma(s) to y, then cut at the image of t
    z_from_y = subarc(invert(arc), 1.0 - s)
    y_from_z = invert(z_from_y)
    return subarc(y_from_z, (t - s) / (1.0 - s))


def extension_check(arc: ArcSpectralWeights):
    """Return ``(extendable, reason)`` for evaluation on ``[-1, 1]``.

    Extension needs ``X`` bounded with bounded inverse on the reference
    support, i.e. every eigenvalue carrying mass must be strictly positive.
    """
    if arc.has_kernel:
        return False, "X has a zero eigenvalue with positive weight (unbounded inverse)"
    if not np.all(np.isfinite(1.0 / arc.lambdas)):
        return False, "X has an unbounded inverse"
    return True, None


@dataclass(frozen=True)
class ExtendedArc:
    """An arc whose normalization is evaluable on ``[-1, 1]``."""

    arc: ArcSpectralWeights

    def zeta(self, t):
        return _scalar(_zeta(self.arc, _check_range(t, -1.0, 1.0)), t)

    def zeta_prime(self, t):
        return _scalar(_zeta_prime(self.arc, _check_range(t, -1.0, 1.0)), t)

    def zeta_second(self, t):
        return _scalar(_zeta_second(self.arc, _check_range(t, -1.0, 1.0)), t)


def extend_domain(arc: ArcSpectralWeights) -> ExtendedArc:
    ok, reason = extension_check(arc)
    if not ok:
        raise NotExtendableError(reason)
    return ExtendedArc(arc)


def legendre(arc: ArcSpectralWeights, s: float) -> LegendrePair:
    """Legendre transform ``sup_{0<=t<=1} (s t - zeta(t))`` and its maximizer.

    The maximizer solves ``zeta'(t) = s``; it is found by bisection on the
    monotone derivative and polished with Newton steps, and clamped to 0 or
    1 when ``s`` lies outside the range of ``zeta'``.

    When ``zeta`` is affine on ``(0, 1]`` the maximizer is not unique (or,
    with a kernel, the supremum is only approached as ``t -> 0+``); the
    boundary choice is returned with ``degenerate=True``.
    """
    s = float(s)
    if not np.isfinite(s):
        raise DomainError("slope must be finite")
    if arc.is_flat:
        t_star = 1.0 if s > 0 else 0.0
        return LegendrePair(t_star, s * t_star - zeta(arc, t_star), s, degenerate=True)
    if arc.is_affine:
        slope = zeta_prime(arc, 1.0)
        if s > slope + LEGENDRE_XTOL * max(1.0, abs(slope)):
            return LegendrePair(1.0, s - zeta(arc, 1.0), s)
        if s >= slope - LEGENDRE_XTOL * max(1.0, abs(slope)):
            return LegendrePair(1.0, s - zeta(arc, 1.0), s, degenerate=True)
        # supremum approached at 0+, where zeta jumps to half the log of the support mass
        z0 = 0.5 * np.log(arc.weights[arc.lambdas > 0].sum())
        return LegendrePair(0.0, float(-z0), s, degenerate=True)
    if s >= zeta_prime(arc, 1.0):
        t_star = 1.0
    elif not arc.has_kernel and s <= zeta_prime(arc, 0.0):
        t_star = 0.0
    else:
        lo, hi = 0.0, 1.0
        for _ in range(LEGENDRE_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if zeta_prime(arc, mid) < s:
                lo = mid
            else:
                hi = mid
            if hi - lo <= LEGENDRE_XTOL:
                break
        t_star = 0.5 * (lo + hi)
        for _ in range(3):
            curv = zeta_second(arc, t_star)
            if curv <= 0:
                break
            step = (zeta_prime(arc, t_star) - s) / curv
            cand = t_star - step
            if not lo <= cand <= hi:
                break
            t_star = cand
    return LegendrePair(t_star, s * t_star - zeta(arc, t_star), s)
