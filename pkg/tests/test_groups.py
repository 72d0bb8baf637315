"""Group layer: Cayley validation, closures, quotients.

Oracles here are deliberately naive: plain python loops and sets, no shared
code with the implementation under test.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlacalc.corpus import all_groups, get_group, group_names
from mlacalc.errors import InputError, MathViolation
from mlacalc.groups import normal_closure, quotient, subgroup_closure, validate_cayley

EXPECTED_ORDERS = {
    "C1": 1, "C2": 2, "C3": 3, "C4": 4, "C5": 5, "C6": 6, "C7": 7, "C8": 8,
    "C9": 9, "C10": 10, "C11": 11, "C12": 12, "V4": 4, "C4xC2": 8,
    "C2xC2xC2": 8, "C3xC3": 9, "C6xC2": 12, "S3": 6, "D4": 8, "D5": 10,
    "D6": 12, "Q8": 8, "Dic3": 12, "A4": 12,
}


def naive_closure(table, seed):
    """Subgroup generated by seed: repeated products only (finite group)."""
    members = {0} | set(seed)
    while True:
        nxt = {int(table[a, b]) for a in members for b in members}
        if nxt <= members:
            return members
        members |= nxt


def element_order(table, x):
    n, acc = 1, x
    while acc != 0:
        acc = int(table[acc, x])
        n += 1
    return n


def test_corpus_all_validate_with_expected_orders():
    got = all_groups()
    assert set(got) == set(EXPECTED_ORDERS)
    for name, G in got.items():
        assert G.order == EXPECTED_ORDERS[name], name
        assert int(G.identity) == 0
        assert len(set(G.labels)) == G.order


def test_corpus_covers_every_order_up_to_twelve():
    orders = sorted(EXPECTED_ORDERS.values())
    for k in range(1, 13):
        assert k in orders


def test_element_order_multisets():
    # independent loop-based orders against two nonabelian groups
    q8 = get_group("Q8")
    orders = sorted(element_order(q8.table, x) for x in range(8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    s3 = get_group("S3")
    orders = sorted(element_order(s3.table, x) for x in range(6))
    assert orders == [1, 2, 2, 2, 3, 3]


def test_validate_cayley_rejects_shape_and_range():
    with pytest.raises(InputError):
        validate_cayley(["e"], [[0, 0]])
    # entries outside the element range are a closure failure, not a parse one
    with pytest.raises(MathViolation):
        validate_cayley(["e", "a"], [[0, 1], [1, 7]])
    with pytest.raises(InputError):
        validate_cayley(["e", "e"], [[0, 1], [1, 0]])


@settings(max_examples=120, deadline=None)
@given(data=st.data())
def test_single_entry_table_perturbation_never_validates(data):
    # a Cayley table differing from a group table in one cell cannot satisfy
    # all four group axioms (cancellation would fail)
    name = data.draw(st.sampled_from([n for n in group_names() if 2 <= EXPECTED_ORDERS[n] <= 8]))
    G = get_group(name)
    n = G.order
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, n - 1))
    old = int(G.table[i, j])
    new = data.draw(st.integers(0, n - 1).filter(lambda v: v != old))
    table = G.table.copy()
    table[i, j] = new
    with pytest.raises(MathViolation):
        validate_cayley(G.labels, table)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_subgroup_closure_matches_naive_oracle(data):
    name = data.draw(st.sampled_from(["S3", "D4", "Q8", "A4", "C12"]))
    G = get_group(name)
    seed = data.draw(st.sets(st.integers(0, G.order - 1), max_size=3))
    got = subgroup_closure(G, seed)
    assert got.members == frozenset(naive_closure(G.table, seed))


def test_normal_closure_s3():
    s3 = get_group("S3")
    # a 3-cycle generates the alternating part, already normal
    three = [x for x in range(6) if element_order(s3.table, x) == 3]
    assert normal_closure(s3, [three[0]]).members == frozenset({0, *three})
    # any transposition normally generates everything
    two = [x for x in range(6) if element_order(s3.table, x) == 2]
    assert len(normal_closure(s3, [two[0]]).members) == 6


def test_quotient_s3_by_a3():
    s3 = get_group("S3")
    a3 = normal_closure(s3, [next(x for x in range(6) if element_order(s3.table, x) == 3)])
    Q, onto = quotient(s3, a3)
    assert Q.order == 2
    # the projection is a homomorphism
    for a in range(6):
        for b in range(6):
            assert onto.image[s3.table[a, b]] == Q.table[onto.image[a], onto.image[b]]


def test_quotient_rejects_non_normal():
    s3 = get_group("S3")
    refl = next(x for x in range(6) if element_order(s3.table, x) == 2)
    with pytest.raises(MathViolation):
        quotient(s3, subgroup_closure(s3, [refl]))


def test_conj_and_comm_tables_agree_with_loops():
    G = get_group("D4")
    for z in range(8):
        for x in range(8):
            c = G.table[G.table[z, x], G.inverses[z]]
            assert G.conj_table[z, x] == c
            k = G.table[G.table[G.table[z, x], G.inverses[z]], G.inverses[x]]
            assert G.comm_table[z, x] == k
