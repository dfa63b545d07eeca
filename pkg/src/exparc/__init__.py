"""Exponential arcs between classical and quantum states."""
from .arc import (
    ArcSpectralWeights,
    ExtendedArc,
    LegendrePair,
    dual_coordinate,
    extend_domain,
    extension_check,
    invert,
    legendre,
    reparametrize,
    subarc,
    zeta,
    zeta_prime,
    zeta_second,
)
from .classical import (
    ProbabilityVector,
    arc_point,
    kl_divergence,
    radon_nikodym,
    tangent_generator,
)
from .errors import *  # noqa: F401,F403
from .quantum import (
    DensityArc,
    DensityMatrix,
    PurificationVector,
    arc_density,
    log_geodesic,
    purify,
    quantum_arc_weights,
)
from .spectral import DEFAULT_POLICY, SpectralDecomposition, SupportPolicy, eigh
from .standard_form import StandardRep, build_standard_rep, commutant_radon_nikodym, modular_flow

__version__ = "0.1.0"
