import pytest

from guoindex.worked_examples import EXAMPLES, all_ok, run_example


@pytest.mark.parametrize("i", sorted(EXAMPLES))
def test_example_reproduces(i):
    checks = run_example(EXAMPLES[i])
    failed = [c for c in checks if not c.ok]
    assert all_ok(checks), failed


def test_errata_are_flagged():
    kinds = {c.name: c.kind for c in run_example(EXAMPLES[3])}
    assert kinds["L_0"] == "erratum" and kinds["L_2"] == "erratum"
    assert kinds["L_1"] == "match" and kinds["L_3"] == "match"


def test_example2_infeasible_at_printed_value():
    checks = {c.name: c for c in run_example(EXAMPLES[2])}
    assert checks["infeasible at printed Perron entry 5"].ok
    assert checks["construction at Perron entry 14"].ok
