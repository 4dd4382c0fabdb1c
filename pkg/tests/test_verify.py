"""The self-check suite: clean passes, fault injection, determinism."""

from tnnmorse.export import dumps
from tnnmorse.verify import CheckResult, run_suite, standard_orders


def test_check_result_json():
    lean = CheckResult("x", True)
    assert lean.to_json() == {"name": "x", "passed": True}
    full = CheckResult("y", False, "broke", witness=[1, 2])
    assert full.to_json() == {
        "name": "y", "passed": False, "detail": "broke", "witness": [1, 2],
    }


def test_standard_orders_census(a1, a3, b2):
    assert len(standard_orders(a1)) == 1
    assert len(standard_orders(b2)) == 2  # the supply in rank 2
    orders = standard_orders(a3)
    assert len(orders) == 3
    keys = {tuple(t.element.index for t in o.sequence) for o in orders}
    assert len(keys) == 3


def test_suite_passes_on_empty_parabolic(a2):
    report = run_suite(a2, [()])
    assert report.passed
    names = [c.name for c in report.checks]
    assert any(n.startswith("el:") for n in names)
    for stem in ("poset", "thinness", "euler", "closure_matchings",
                 "boundary_matchings", "betti", "order_independence"):
        assert f"J=empty:{stem}" in names
    data = report.to_json()
    assert data["passed"] is True
    assert data["counts"]["failed"] == 0


def test_suite_all_parabolics(a2):
    report = run_suite(a2)
    assert report.passed
    assert [tuple(J) for J in report.parabolics] == [
        (), (1,), (2,), (1, 2),
    ]


def test_suite_is_deterministic(a2):
    a = dumps(run_suite(a2, [()]).to_json())
    b = dumps(run_suite(a2, [()]).to_json())
    assert a == b


def test_jobs_do_not_change_results(a2):
    serial = dumps(run_suite(a2, [()], jobs=1).to_json())
    threaded = dumps(run_suite(a2, [()], jobs=4).to_json())
    assert serial == threaded


def test_cycle_fault_is_caught(a2):
    report = run_suite(a2, [()], fault="cycle")
    assert not report.passed
    failed = [c for c in report.checks if not c.passed]
    assert failed
    assert any(c.witness for c in failed)


def test_goodness_fault_is_caught(a2):
    report = run_suite(a2, [()], fault="goodness")
    assert not report.passed
