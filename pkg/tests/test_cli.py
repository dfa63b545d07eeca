import csv
import io
import json

import numpy as np
import pytest

from exparc.cli import main, parse_grid
from exparc.errors import StateSchemaError
from exparc.states_io import dumps_state, loads_state


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def pair(tmp_path):
    p = write(tmp_path / "p.json", {"type": "classical", "weights": [0.5, 0.5]})
    q = write(tmp_path / "q.json", {"type": "classical", "weights": [0.9, 0.1]})
    return p, q


@pytest.fixture
def qpair(tmp_path):
    def dm(diag):
        m = np.diag(diag).astype(complex).reshape(-1)
        return {"type": "quantum", "dim": len(diag), "matrix": [[z.real, z.imag] for z in m]}
    return write(tmp_path / "rx.json", dm([0.5, 0.5])), write(tmp_path / "ry.json", dm([0.9, 0.1]))


def run(argv):
    out = io.StringIO()
    code = main(argv, stream=out)
    return code, out.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_grid():
    np.testing.assert_allclose(parse_grid("0:1:3"), [0, 0.5, 1])
    for bad in ("0:1", "1:0:5", "0:1:1", "a:b:c"):
        with pytest.raises(StateSchemaError):
            parse_grid(bad)


def test_arc_trivial(pair):
    code, out = run(["arc", "--input", pair[0], "--target", pair[0]])
    assert code == 0
    table = rows(out)
    assert len(table) == 101
    assert all(float(r["zeta"]) == 0.0 for r in table)


def test_arc_example_row(pair):
    code, out = run(["arc", "--input", pair[0], "--target", pair[1], "--grid=0:1:3"])
    assert code == 0
    mid = rows(out)[1]
    assert float(mid["t"]) == 0.5
    assert float(mid["zeta"]) == pytest.approx(-0.0557859, abs=1e-6)
    np.testing.assert_allclose(loads_state(mid["state"]).weights, [0.75, 0.25], atol=1e-10)


def test_arc_quantum_matches_classical(pair, qpair):
    _, c = run(["arc", "--input", pair[0], "--target", pair[1], "--grid=0:1:11"])
    _, q = run(["arc", "--input", qpair[0], "--target", qpair[1], "--grid=0:1:11"])
    zc = [float(r["zeta"]) for r in rows(c)]
    zq = [float(r["zeta"]) for r in rows(q)]
    np.testing.assert_allclose(zq, zc, atol=1e-12)


def test_arc_csv_state_round_trip(qpair):
    _, out = run(["arc", "--input", qpair[0], "--target", qpair[1], "--grid=0.1:0.9:5"])
    for r in rows(out):
        state = loads_state(r["state"])
        assert dumps_state(state) == r["state"]


def test_arc_json_output(pair):
    code, out = run(["arc", "--input", pair[0], "--target", pair[1], "--grid=0:1:5", "--output", "json"])
    assert code == 0
    data = json.loads(out)
    assert [d["t"] for d in data] == [0.0, 0.25, 0.5, 0.75, 1.0]


def test_arc_observable(pair, tmp_path):
    obs = write(tmp_path / "a.json", [1.0, 0.0])
    _, out = run(["arc", "--input", pair[0], "--target", pair[1], "--grid=0.5:1:2", "--observable", obs])
    assert "tangent" in rows(out)[0]


def test_schema_error_exit_code(pair, tmp_path, capsys):
    bad = write(tmp_path / "bad.json", {"type": "classical", "weights": [0.5, "x"]})
    code, _ = run(["arc", "--input", pair[0], "--target", bad])
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "input"


def test_mixed_types_rejected(pair, qpair):
    assert run(["arc", "--input", pair[0], "--target", qpair[1]])[0] == 2


def test_missing_file(pair):
    assert run(["arc", "--input", pair[0], "--target", "/nonexistent.json"])[0] == 2


def test_domain_error_names_t(pair, tmp_path, capsys):
    z = write(tmp_path / "z.json", {"type": "classical", "weights": [1.0, 0.0]})
    code, _ = run(["arc", "--input", pair[0], "--target", z])
    assert code == 3
    err = json.loads(capsys.readouterr().err)
    assert err["t"] == 0.0


def test_compare_geodesic(pair, qpair, tmp_path):
    code, out = run(["compare-geodesic", "--input", qpair[0], "--target", qpair[1], "--grid=0:1:5"])
    assert code == 0
    assert all(float(r["trace_distance"]) <= 1e-9 for r in rows(out))
    z = write(tmp_path / "z.json", {"type": "classical", "weights": [1.0, 0.0]})
    assert run(["compare-geodesic", "--input", pair[0], "--target", z])[0] == 3


def test_compare_geodesic_non_commuting(tmp_path):
    rng = np.random.default_rng(3)
    from exparc.sampling import random_density_matrix
    a = write(tmp_path / "a.json", json.loads(dumps_state(random_density_matrix(3, rng))))
    b = write(tmp_path / "b.json", json.loads(dumps_state(random_density_matrix(3, rng))))
    _, out = run(["compare-geodesic", "--input", a, "--target", b, "--grid=0:1:5"])
    assert max(float(r["trace_distance"]) for r in rows(out)) > 1e-8


def test_legendre(pair):
    code, out = run(["legendre", "--input", pair[0], "--target", pair[1], "--grid=-2:2:9"])
    assert code == 0
    table = rows(out)
    assert all(float(r["residual"]) <= 1e-9 for r in table)
    assert float(table[0]["t_star"]) == 0.0
    assert float(table[-1]["t_star"]) == 1.0


def test_verify_with_pair(pair):
    code, out = run(["verify", "--input", pair[0], "--target", pair[1]])
    report = json.loads(out)
    assert code == 0 and report["all_passed"]
    assert any(c["name"].startswith("pair.") for c in report["checks"])


def test_verify_corrupted_input(pair, tmp_path):
    bad = write(tmp_path / "bad.json", {"type": "quantum", "dim": 2, "matrix": [[1, 0]]})
    assert run(["verify", "--input", pair[0], "--target", bad])[0] == 2


def test_verify_tight_tolerance_fails():
    code, out = run(["verify", "--tol", "1e-16"])
    report = json.loads(out)
    assert code == 1
    assert not report["all_passed"] and report["failed"]
