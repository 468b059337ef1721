import pytest

from uhjp.groups import all_subnormal_cyclic_series, series_from_chain, standard_group
from uhjp.hjdegree import all_hj_degrees, hj_degree, product_formula, step_degrees

from catalog import catalog

GROUPS = catalog()


def test_s3():
    d = hj_degree((3, 2))
    assert d.value == 3**4 * 2 == 162 and d.per_step == (1, 9, 162)


def test_s4():
    assert hj_degree((2, 2, 3, 2)).value == 2**19 * 3**4 == 42467328


def test_c6_three_series():
    C6 = standard_group("cyclic", 6)
    got = {s.factor_orders: hj_degree(s).value for s in all_subnormal_cyclic_series(C6)}
    assert got == {(2, 3): 72, (3, 2): 162, (6,): 7776}
    s = series_from_chain(C6, [[0], [0, 3], list(range(6))])
    assert hj_degree(s).value == 72


def test_trivial_and_negative():
    assert hj_degree(()).value == 1
    with pytest.raises(ValueError):
        hj_degree((0,))


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_formulas_agree_everywhere(name):
    for s in all_subnormal_cyclic_series(GROUPS[name]):
        assert product_formula(s.factor_orders) == step_degrees(s.factor_orders)[-1]


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_maximum(n):
    Cn = standard_group("cyclic", n)
    vals = [hj_degree(s).value for s in all_subnormal_cyclic_series(Cn)]
    assert max(vals) == n ** (n - 1)


def _refines(fine, coarse):
    return set(coarse.subgroups) < set(fine.subgroups)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_refinement_never_increases(name):
    series = all_subnormal_cyclic_series(GROUPS[name])
    for a in series:
        for b in series:
            if _refines(a, b):
                assert hj_degree(a).value <= hj_degree(b).value


def test_duplicates_reported():
    rows, dups = all_hj_degrees(standard_group("cyclic", 4))
    assert len(rows) == 2 and dups == {}
    rows, dups = all_hj_degrees(GROUPS["C2xC2"])
    # three flags through the three order-2 subgroups, all with orders (2, 2)
    assert len(rows) == 3 and dups == {8: [(2, 2)] * 3}
