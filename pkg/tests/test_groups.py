import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uhjp.errors import (
    InvalidAction,
    InvalidHomomorphism,
    InvalidSeries,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    NotSolvable,
    SizeLimitExceeded,
)
from uhjp.groups import (
    EquivalenceRelation,
    GroupAction,
    GroupHomomorphism,
    all_subnormal_cyclic_series,
    check_subgroup,
    commutator_subgroup,
    from_cayley,
    is_normal,
    is_solvable,
    orbits_of,
    quotient,
    regular_action,
    series_from_chain,
    standard_action,
    standard_group,
    subgroup,
    subnormal_cyclic_series,
    transversal_section,
)
from uhjp import config

from catalog import catalog

GROUPS = catalog()


def test_cyclic_table():
    C3 = standard_group("cyclic", 3)
    assert C3.order == 3 and C3.mul[1][1] == 2 and C3.mul[1][2] == 0


def test_trivial_group():
    assert standard_group("cyclic", 1).order == 1


def test_s3_nonabelian_with_cycle_labels():
    S3 = standard_group("symmetric", 3)
    assert S3.order == 6 and not S3.is_abelian
    assert S3.labels[0] == "e" and "(1 2 3)" in S3.labels


def test_symmetric_guard():
    with pytest.raises(SizeLimitExceeded):
        standard_group("symmetric", 9)
    config.set_budget(dense=10)
    with pytest.raises(SizeLimitExceeded):
        standard_group("cyclic", 4)


@pytest.mark.parametrize("table,reason", [
    ([[0, 1], [1, 1]], "missing-inverse"),
    ([[0, 1], [1, 2]], "not-closed"),
    ([[0, 1], [1]], "not-square"),
    ([[1, 0], [1, 0]], "no-identity"),
])
def test_from_cayley_rejects(table, reason):
    with pytest.raises(NotAGroup) as e:
        from_cayley(table)
    assert e.value.reason == reason


def test_from_cayley_non_associative():
    # a Latin square with identity 0 that is not associative
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as e:
        from_cayley(table)
    assert e.value.reason == "not-associative"


def test_from_cayley_roundtrip_and_relabel():
    assert from_cayley([[0, 1], [1, 0]]) == standard_group("cyclic", 2)
    S3 = standard_group("symmetric", 3)
    assert from_cayley(S3.mul, S3.labels) == S3
    # identity at index 1 is moved to 0
    G = from_cayley([[1, 0], [0, 1]], ["t", "e"])
    assert G.labels == ("e", "t") and G == standard_group("cyclic", 2)


@pytest.mark.parametrize("name,solvable", [("S3", True), ("A4", True), ("C7", True), ("Q8", True)])
def test_solvable(name, solvable):
    ok, derived = is_solvable(GROUPS[name])
    assert ok is solvable and derived[-1] == (0,)


def test_s4_solvable_s5_not():
    assert is_solvable(standard_group("symmetric", 4))[0]
    S5 = standard_group("symmetric", 5)
    ok, derived = is_solvable(S5)
    assert not ok and len(derived[-1]) == 60
    with pytest.raises(NotSolvable):
        subnormal_cyclic_series(S5)


def test_default_series():
    S3 = standard_group("symmetric", 3)
    s = subnormal_cyclic_series(S3)
    assert s.factor_orders == (3, 2) and len(s.subgroups[1]) == 3
    assert sorted(subnormal_cyclic_series(standard_group("symmetric", 4)).factor_orders) == [2, 2, 2, 3]
    C6 = subnormal_cyclic_series(standard_group("cyclic", 6))
    prod = 1
    for p in C6.factor_orders:
        prod *= p
    assert prod == 6


def test_s4_series_all_share_orders():
    S4 = standard_group("symmetric", 4)
    orders = {s.factor_orders for s in all_subnormal_cyclic_series(S4)}
    assert orders == {(2, 2, 3, 2)}


def test_invalid_series():
    S3 = standard_group("symmetric", 3)
    with pytest.raises(InvalidSeries):
        series_from_chain(S3, [[0], [0, 1], list(range(6))])  # {e,(2 3)} not normal... and index 3 step not normal
    with pytest.raises(InvalidSeries):
        series_from_chain(S3, [[0], list(range(6))])  # S_3 is not cyclic


def test_quotients():
    S3 = standard_group("symmetric", 3)
    Q, pi = quotient(S3, [0, 3, 4])
    assert Q.order == 2 and pi.kernel() == (0, 3, 4)
    with pytest.raises(NotNormal):
        quotient(S3, [0, 2])  # {e, (1 2)}
    with pytest.raises(NotASubgroup):
        quotient(S3, [0, 2, 3])
    C4 = standard_group("cyclic", 4)
    Q, pi = quotient(C4, [0, 2])
    assert Q == standard_group("cyclic", 2)


def test_orbits():
    S3 = standard_group("symmetric", 3)
    R = regular_action(S3)
    assert orbits_of(R).class_count == 1
    rel = orbits_of(R, [0, 3, 4])
    assert sorted(len(c) for c in rel.classes()) == [3, 3]
    assert orbits_of(R, [0]).class_count == 6


def test_transversal_trivial_cases():
    C4 = standard_group("cyclic", 4)
    phi, reps = transversal_section(C4, range(4))
    assert phi == (0, 1, 2, 3) and reps == (0,)
    phi, reps = transversal_section(C4, [0, 2])
    assert sorted(phi.count(h) for h in (0, 2)) == [2, 2]


def test_action_validation():
    C2 = standard_group("cyclic", 2)
    with pytest.raises(InvalidAction):
        GroupAction(C2, 2, [[0, 1], [0, 1, 2]])
    with pytest.raises(InvalidAction):
        GroupAction(C2, 3, [[0, 1, 2], [1, 2, 0]])  # order 3 map for an order 2 element
    A = standard_action("symmetric", 3)
    assert A.is_transitive and A.set_size == 3


def test_homomorphism_validation():
    C4, C2 = standard_group("cyclic", 4), standard_group("cyclic", 2)
    pi = GroupHomomorphism(C4, C2, [0, 1, 0, 1])
    assert pi.is_surjective and not pi.is_injective and pi.kernel() == (0, 2)
    with pytest.raises(InvalidHomomorphism):
        GroupHomomorphism(C4, C2, [0, 1, 1, 0])


def test_subgroup_reindexing():
    S3 = standard_group("symmetric", 3)
    H, inc = subgroup(S3, [0, 3, 4])
    assert H == standard_group("cyclic", 3) and inc.map == (0, 3, 4)


def test_equivalence_relation_canonical():
    rel = EquivalenceRelation(4, [5, 5, 2, 7])
    assert rel.class_id == (0, 0, 1, 2) and rel.related(0, 1) and not rel.related(1, 2)
    assert EquivalenceRelation.from_classes(4, [[1, 3]]).classes() == [[0], [1, 3], [2]]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(GROUPS)), st.data())
def test_generated_subgroups_closed_and_transversal_laws(name, data):
    G = GROUPS[name]
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    from uhjp.groups import generate

    H = check_subgroup(G, generate(G, gens))
    phi, reps = transversal_section(G, H)
    assert all(phi[h] == h for h in H)
    assert all(phi[G.mul[g][h]] == G.mul[phi[g]][h] for g in G.elements() for h in H)
    assert len(reps) * len(H) == G.order


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(GROUPS)))
def test_derived_subgroup_normal(name):
    G = GROUPS[name]
    D = commutator_subgroup(G)
    assert is_normal(G, D)
