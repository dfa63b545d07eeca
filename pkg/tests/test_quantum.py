import math
import warnings

import numpy as np
import pytest

from exparc import classical
from exparc.arc import zeta
from exparc.errors import ArcDiscontinuityWarning, DivergentDerivativeError, FaithfulnessError, StateSchemaError
from exparc.quantum import (
    DensityArc,
    DensityMatrix,
    arc_density,
    commutator_norm,
    expectation,
    log_geodesic,
    purify,
    quantum_arc_weights,
    state_tangent,
    trace_distance,
)
from exparc.sampling import random_commuting_pair, random_density_matrix, random_hermitian
from exparc.spectral import eigh, matrix_power

RX = DensityMatrix(np.diag([0.5, 0.5]).astype(complex))
RY = DensityMatrix(np.diag([0.9, 0.1]).astype(complex))
GRID = np.linspace(0, 1, 101)


def test_schema():
    with pytest.raises(StateSchemaError):
        DensityMatrix(np.diag([0.6, 0.6]))
    with pytest.raises(StateSchemaError):
        DensityMatrix(np.diag([1.2, -0.2]))
    with pytest.raises(StateSchemaError):
        DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))


def test_purify_maximally_mixed():
    x = purify(np.eye(3) / 3)
    np.testing.assert_allclose(x.matrix, np.eye(3) / np.sqrt(3), atol=1e-15)
    assert x.is_separating


def test_purify_pure_state():
    x = purify(np.diag([1.0, 0.0]))
    np.testing.assert_allclose(np.abs(x.vector), [1, 0, 0, 0], atol=1e-15)
    assert not x.is_separating


def test_purification_reproduces_expectations(rng):
    rho = random_density_matrix(3, rng)
    x = purify(rho)
    a = random_hermitian(3, rng)
    ax = (np.kron(a, np.eye(3)) @ x.vector)
    np.testing.assert_allclose(np.vdot(x.vector, ax).real, expectation(rho, a), atol=1e-12)


def test_weights():
    np.testing.assert_allclose(quantum_arc_weights(RX, RX).lambdas, 1.0, atol=1e-14)
    w = quantum_arc_weights(RX, RY)
    np.testing.assert_allclose(sorted(w.points), [(0.2, 0.5), (1.8, 0.5)], atol=1e-14)


def test_zeta_matches_trace(rng):
    rx, ry = random_density_matrix(3, rng), random_density_matrix(3, rng)
    arc = DensityArc(rx, ry)
    s = eigh(arc.relative)
    for t in GRID[::10]:
        direct = 0.5 * math.log(np.trace(rx.matrix @ matrix_power(s, t)).real)
        assert arc.zeta(t) == pytest.approx(direct, abs=1e-10)


def test_arc_density_examples(rng):
    np.testing.assert_allclose(arc_density(RX, RX, 0.4).matrix, RX.matrix, atol=1e-15)
    np.testing.assert_allclose(arc_density(RX, RY, 0.5).matrix, np.diag([0.75, 0.25]), atol=1e-14)
    rx, ry = random_density_matrix(4, rng), random_density_matrix(4, rng)
    arc = DensityArc(rx, ry)
    np.testing.assert_allclose(arc.density(0.0).matrix, rx.matrix, atol=1e-9)
    np.testing.assert_allclose(arc.density(1.0).matrix, ry.matrix, atol=1e-9)


def test_rank_deficient_target(rng):
    rx, ry = random_density_matrix(3, rng), random_density_matrix(3, rng, rank=1)
    arc = DensityArc(rx, ry)
    assert arc.weights.has_kernel
    with pytest.warns(ArcDiscontinuityWarning):
        arc.density(0.0)
    with pytest.raises(DivergentDerivativeError):
        arc.derivative(0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        np.testing.assert_allclose(arc.density(1.0).matrix, ry.matrix, atol=1e-9)
        assert abs(np.trace(arc.derivative(0.5))) < 1e-10


def test_singular_reference_rejected():
    with pytest.raises(FaithfulnessError):
        DensityArc(np.diag([1.0, 0.0]), RX)


@pytest.mark.parametrize("n", [2, 3, 4, 8])
def test_positivity_and_trace(rng, n):
    arc = DensityArc(random_density_matrix(n, rng), random_density_matrix(n, rng))
    for t in GRID:
        m = arc.density(t).matrix
        assert np.linalg.eigvalsh(m)[0] >= -1e-10
        assert abs(np.trace(m).real - 1) <= 1e-10


def test_log_geodesic():
    np.testing.assert_allclose(log_geodesic(RX, RY, 0.5).matrix, np.diag([0.75, 0.25]), atol=1e-14)
    np.testing.assert_allclose(log_geodesic(RX, RX, 0.3).matrix, RX.matrix, atol=1e-14)


def test_geodesic_differs_for_non_commuting(rng):
    rx, ry = random_density_matrix(3, rng), random_density_matrix(3, rng)
    assert commutator_norm(rx.matrix, ry.matrix) > 1e-3
    assert trace_distance(arc_density(rx, ry, 0.5).matrix, log_geodesic(rx, ry, 0.5).matrix) > 1e-6


def test_geodesic_coincides_for_commuting(rng):
    rx, ry, *_ = random_commuting_pair(4, rng)
    for t in (0.2, 0.5, 0.8):
        assert trace_distance(arc_density(rx, ry, t).matrix, log_geodesic(rx, ry, t).matrix) < 1e-9


def test_diagonal_embedding(rng):
    rx, ry, p, q, _ = random_commuting_pair(5, rng, zeros=1)
    for t in GRID[1::10]:
        np.testing.assert_allclose(np.linalg.eigvalsh(arc_density(rx, ry, t).matrix),
                                   np.sort(classical.arc_point(p, q, t).weights), atol=1e-10)


def test_tangent_examples(rng):
    a = random_hermitian(2, rng)
    assert abs(state_tangent(RX, RX, 0.5, a)) < 1e-14
    cls = classical.state_tangent([0.5, 0.5], [0.9, 0.1], 0.5, [1.0, 0.0])
    assert state_tangent(RX, RY, 0.5, np.diag([1.0, 0.0])) == pytest.approx(cls, abs=1e-10)


@pytest.mark.parametrize("h", [1e-4, 1e-5])
def test_tangent_finite_difference(rng, h):
    rx, ry = random_density_matrix(3, rng), random_density_matrix(3, rng)
    arc = DensityArc(rx, ry)
    a = random_hermitian(3, rng)
    t = 0.4
    fd = (expectation(arc.density(t + h), a) - expectation(arc.density(t - h), a)) / (2 * h)
    assert arc.tangent(t, a) == pytest.approx(fd, abs=1e-6)


def test_carrier_identities(rng):
    rx, ry = random_density_matrix(3, rng), random_density_matrix(3, rng)
    s, t = 0.4, 0.7
    np.testing.assert_allclose(arc_density(rx, arc_density(rx, ry, t), s).matrix,
                               arc_density(rx, ry, s * t).matrix, atol=1e-9)
    np.testing.assert_allclose(arc_density(ry, rx, t).matrix, arc_density(rx, ry, 1 - t).matrix, atol=1e-9)


def test_majorization(rng):
    rx, ry = random_density_matrix(4, rng), random_density_matrix(4, rng)
    bound = DensityArc(rx, ry).relative_spectral.eigenvalues[-1]
    for _ in range(20):
        v = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        q, _ = np.linalg.qr(v)
        proj = q @ q.conj().T
        assert expectation(ry, proj) <= bound * expectation(rx, proj) + 1e-12


def test_zeta_equals_classical_for_commuting(rng):
    rx, ry, p, q, _ = random_commuting_pair(4, rng)
    np.testing.assert_allclose(zeta(quantum_arc_weights(rx, ry), GRID),
                               zeta(classical.radon_nikodym(p, q), GRID), atol=1e-12)
