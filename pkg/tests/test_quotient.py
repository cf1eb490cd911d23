"""Finite quotient enumeration and subgroup machinery."""
from __future__ import annotations

import random

import pytest

from ggs import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DefiningVector,
    enumerate_quotient,
    predicted_order,
)

from reference import brute_coords


def test_default_budget():
    assert DEFAULT_BUDGET == 10_000_000


def test_sizes(gs, gs_g2, gs_g3, e10_g2):
    assert len(enumerate_quotient(gs, 1)) == 3
    assert len(gs_g2) == 27
    assert len(gs_g3) == 2187
    assert len(e10_g2) == 81


def test_predicted_order_values(gs, e10):
    assert [predicted_order(gs, n) for n in (1, 2, 3, 4)] == [3, 27, 2187, 3**19]
    assert [predicted_order(e10, n) for n in (1, 2, 3)] == [3, 81, 59049]
    sym = DefiningVector(3, (1, 1))
    assert predicted_order(sym, 2) == 81
    assert predicted_order(sym, 3) is None  # no formula for symmetric vectors
    assert predicted_order(DefiningVector(5, (1, 4, 1, 4)), 2) == 5**5


def test_symmetric_vector_size_differs_from_formula_shape():
    # For e = (1, 1) the depth-3 quotient has 3^9 elements, not 3^(t*p+1) = 3^10:
    # the reason the prediction declines to answer.
    assert len(enumerate_quotient(DefiningVector(3, (1, 1)), 3)) == 19683


def test_budget_exceeded_by_prediction(gs):
    with pytest.raises(BudgetExceeded) as err:
        enumerate_quotient(gs, 3, budget=100)
    assert err.value.budget == 100
    assert err.value.predicted == 2187
    assert err.value.partial == 0  # rejected before enumerating


def test_budget_exceeded_mid_enumeration():
    # symmetric vector: no predicted order, so the budget trips during the walk
    with pytest.raises(BudgetExceeded) as err:
        enumerate_quotient(DefiningVector(3, (1, 1)), 3, budget=100)
    assert err.value.predicted is None
    assert err.value.partial >= 100


def test_membership_and_element(gs_g2):
    assert gs_g2.a in gs_g2
    assert gs_g2.a.labels in gs_g2
    assert gs_g2.element(gs_g2.b.labels) == gs_g2.b
    assert gs_g2.element("3,2:0,1,2,0") == gs_g2.b
    with pytest.raises(KeyError):
        gs_g2.element("3,2:0,1,0,0")  # a valid portrait outside the group


def test_element_outside_group(gs_g2):
    assert bytes([0, 1, 0, 0]) not in gs_g2


def test_coords(gs_g2):
    assert gs_g2.coords_of(gs_g2.a) == (1, 0)
    assert gs_g2.coords_of(gs_g2.b) == (0, 1)
    assert gs_g2.coords_of(gs_g2.a * gs_g2.b) == (1, 1)
    comm = gs_g2.a.inverse() * gs_g2.b.inverse() * gs_g2.a * gs_g2.b
    assert gs_g2.coords_of(comm) == (0, 0)


def test_coords_match_brute_cosets(e10_g2):
    rng = random.Random(7)
    sample = rng.sample(sorted(e10_g2, key=lambda x: x.labels), 20)
    for x in sample:
        assert e10_g2.coords_of(x) == brute_coords(e10_g2, x)


def test_depth_one_quotient(gs):
    g1 = enumerate_quotient(gs, 1)
    assert len(g1) == 3
    assert g1.coords is None
    assert g1.b.is_identity()
    assert g1.is_generating_pair(g1.a, g1.a ** 2)
    assert not g1.is_generating_pair(g1.identity, g1.identity)


def test_is_generating_pair(gs_g2):
    a, b = gs_g2.a, gs_g2.b
    assert gs_g2.is_generating_pair(a, b)
    assert gs_g2.is_generating_pair(a * b, b)
    assert not gs_g2.is_generating_pair(a, a ** 2)
    assert not gs_g2.is_generating_pair(a * b, b * a)  # same image in G/G'


def test_derived_subgroup(gs_g2, gs_g3, e10_g2):
    for group, size in ((gs_g2, 3), (gs_g3, 243), (e10_g2, 9)):
        der = group.derived_subgroup()
        assert len(der) == size
        assert der.index() == len(group) // size
        assert len(group) == size * group.vector.p ** 2  # index p^2 always


def test_frattini_equals_derived(gs_g2, gs_g3, e10_g2):
    for group in (gs_g2, gs_g3, e10_g2):
        assert group.frattini().keys == group.derived_subgroup().keys


def test_center(gs_g2, gs_g3, e10_g2):
    for group, size in ((gs_g2, 3), (gs_g3, 3), (e10_g2, 3)):
        z = group.center()
        assert len(z) == size
        assert group.identity in z
    assert sorted(x.encode() for x in e10_g2.center()) == [
        "3,2:0,0,0,0",
        "3,2:0,1,1,1",
        "3,2:0,2,2,2",
    ]


def test_maximal_subgroups(gs_g2, e10_g2):
    for group in (gs_g2, e10_g2):
        p = group.vector.p
        maxes = group.maximal_subgroups()
        assert len(maxes) == p + 1
        derived = group.derived_subgroup()
        keysets = [m.keys for m in maxes]
        assert len(set(map(frozenset, keysets))) == p + 1
        for m in maxes:
            assert len(m) == len(group) // p
            assert derived.keys <= m.keys
        # ordering contract: <a>G', <b>G', then <ab^i>G' for i = 1..p-1
        assert group.a in maxes[0]
        assert group.b in maxes[1]
        for i in range(1, p):
            assert group.a * group.b ** i in maxes[1 + i]


def test_maximal_subgroups_partition(gs_g2):
    maxes = gs_g2.maximal_subgroups()
    frat = gs_g2.frattini()
    for x in gs_g2:
        hits = sum(x in m for m in maxes)
        assert hits == (4 if x.labels in frat.keys else 1)


def test_level_stabilizers(gs_g3):
    assert len(gs_g3.level_stabilizer(0)) == 2187
    st1 = gs_g3.level_stabilizer(1)
    assert len(st1) == 729
    assert all(x.stabilizes_level(1) for x in st1)
    assert len(gs_g3.level_stabilizer(2)) == 81
    assert len(gs_g3.level_stabilizer(3)) == 1
    assert gs_g3.normal_closure([gs_g3.b]).keys == st1.keys


def test_subgroup_commutator(gs_g3):
    whole = gs_g3.as_subgroup()
    assert gs_g3.subgroup_commutator(whole, whole).keys == gs_g3.derived_subgroup().keys
    st1 = gs_g3.level_stabilizer(1)
    assert len(gs_g3.subgroup_commutator(st1, st1)) == 27


def test_conjugacy_classes(gs_g2, gs_g3, e10_g2):
    for group, count in ((gs_g2, 11), (gs_g3, 59), (e10_g2, 17)):
        classes = group.conjugacy_classes()
        assert len(classes) == count
        assert sum(len(c) for c in classes) == len(group)
        for c in classes:
            assert len(group) % len(c) == 0
    assert gs_g2.conjugacy_class(gs_g2.identity) == (gs_g2.identity,)


def test_order_histogram_and_exponent(gs_g2, gs_g3, e10_g2):
    assert gs_g2.order_histogram() == {1: 1, 3: 26}
    assert e10_g2.order_histogram() == {1: 1, 3: 44, 9: 36}
    assert gs_g2.exponent() == 3
    assert gs_g3.exponent() == 9
    assert e10_g2.exponent() == 9
    hist = gs_g3.order_histogram()
    assert sum(hist.values()) == 2187 and hist[1] == 1


def test_lower_central_series(gs_g2, e10_g2):
    assert [len(h) for h in gs_g2.lower_central_series()] == [27, 3, 1]
    assert [len(h) for h in e10_g2.lower_central_series()] == [81, 9, 3, 1]
    series = e10_g2.lower_central_series()
    assert series[1].keys == e10_g2.derived_subgroup().keys


def test_sorted_encodings(gs_g2):
    enc = gs_g2.sorted_encodings()
    assert len(enc) == 27
    assert enc == sorted(enc)
    assert enc[0] == "3,2:0,0,0,0"
    assert len(set(enc)) == 27


def test_cayley_dot(gs_g2):
    dot = gs_g2.cayley_dot()
    assert dot.startswith("digraph")
    assert dot.count("->") == 2 * 27


def test_subgroup_generators(gs_g2):
    der = gs_g2.derived_subgroup()
    gens = der.generators
    assert gens
    closure = {gs_g2.identity.labels}
    frontier = [gs_g2.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g
            if y.labels not in closure:
                closure.add(y.labels)
                frontier.append(y)
    assert closure == set(der.keys)
