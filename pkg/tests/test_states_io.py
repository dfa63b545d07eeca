import json

import numpy as np
import pytest

from exparc.classical import ProbabilityVector
from exparc.errors import StateSchemaError
from exparc.sampling import random_density_matrix, random_probability
from exparc.states_io import dumps_state, load_state, loads_state, state_from_json, state_to_json


def test_classical_round_trip(rng):
    p = random_probability(7, rng)
    back = loads_state(dumps_state(p))
    np.testing.assert_array_equal(back.weights, p.weights)


def test_quadrature_round_trip():
    p = ProbabilityVector([0.5, 1.5], quadrature=[1.5, 1 / 6])
    back = loads_state(dumps_state(p))
    np.testing.assert_array_equal(back.quadrature, p.quadrature)


def test_quantum_round_trip(rng):
    rho = random_density_matrix(3, rng)
    back = loads_state(dumps_state(rho))
    np.testing.assert_array_equal(back.matrix, rho.matrix)


def test_quantum_layout():
    obj = {"type": "quantum", "dim": 2, "matrix": [[0.5, 0], [0, 0.1], [0, -0.1], [0.5, 0]]}
    rho = state_from_json(obj)
    np.testing.assert_allclose(rho.matrix, [[0.5, 0.1j], [-0.1j, 0.5]])
    assert state_to_json(rho) == obj


@pytest.mark.parametrize(
    "obj",
    [
        {"type": "classical"},
        {"type": "classical", "weights": []},
        {"type": "classical", "weights": [0.5, "a"]},
        {"type": "classical", "weights": [0.5, 0.6]},
        {"type": "classical", "weights": [1.0], "extra": 1},
        {"type": "quantum", "dim": 2, "matrix": [[1, 0]]},
        {"type": "quantum", "dim": 2, "matrix": [[1, 0], [1, 0], [0, 0], [0, 0]]},
        {"type": "bogus"},
        [1, 2, 3],
    ],
)
def test_schema_errors(obj):
    with pytest.raises(StateSchemaError):
        state_from_json(obj)


def test_invalid_json():
    with pytest.raises(StateSchemaError):
        loads_state("{not json")


def test_load_from_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"type": "classical", "weights": [0.25, 0.75]}))
    np.testing.assert_array_equal(load_state(path).weights, [0.25, 0.75])
