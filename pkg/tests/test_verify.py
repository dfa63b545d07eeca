import numpy as np

from exparc.verify import RunConfig, check_names, convexity_violation, fd_order, format_report, run_suite


def test_fd_order_quadratic_error():
    order, errs = fd_order(np.sin, np.cos(0.3), 0.3)
    assert 1.95 < order < 2.05
    assert errs[1] < errs[0]


def test_fd_order_unresolvable():
    order, _ = fd_order(lambda t: 2 * t, 2.0, 0.3)
    assert order is None


def test_convexity_violation():
    t = np.linspace(0, 1, 11)
    assert convexity_violation(t ** 2, t) <= 1e-15
    assert convexity_violation(-(t ** 2), t) > 0.1


def test_check_names_unique():
    names = check_names()
    assert len(names) == len(set(names))


def test_report_is_deterministic_and_small_run_passes():
    cfg = RunConfig(seed=7, classical_pairs=20, quantum_pairs=5)
    a, b = format_report(run_suite(cfg)), format_report(run_suite(cfg))
    assert a == b
    report = run_suite(cfg)
    assert report["all_passed"], report["failed"]
    assert {c["name"] for c in report["checks"]} == set(check_names())
