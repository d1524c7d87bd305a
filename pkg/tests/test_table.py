"""Known invariant rows and automorphism orders beyond the acceptance range."""
from collections import Counter

import pytest

from conftest import catalogue
from simparr.iso import element_orders, isomorphic
from simparr.stretch import pappus_obstruction
from table_data import rows_for

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("n", range(6, 15))
def test_automorphism_orders_small(n):
    got = Counter((r.invariants.to_text(), r.automorphisms) for r in catalogue(n))
    assert got == Counter((row, order) for _, row, order in rows_for(n))


@pytest.mark.parametrize("n", range(15, 19))
def test_listed_rows_among_pappus_passing(n):
    passing = Counter((r.invariants.to_text(), r.automorphisms) for r in catalogue(n)
                      if pappus_obstruction(r.wiring) is None)
    listed = Counter((row, order) for _, row, order in rows_for(n))
    assert not listed - passing
    # one Pappus-passing class per size is not in the list of stretchable ones
    assert sum((passing - listed).values()) == {15: 0, 16: 1, 17: 1, 18: 1}[n]


@pytest.mark.parametrize("n", [17, 18])
def test_equal_invariants_distinct_classes(n):
    by_inv = {}
    for r in catalogue(n):
        by_inv.setdefault(r.invariants.to_text(), []).append(r)
    twins = [rs for rs in by_inv.values() if len(rs) > 1]
    assert twins
    for rs in twins:
        for i in range(len(rs)):
            for j in range(i + 1, len(rs)):
                assert not isomorphic(rs[i].wiring, rs[j].wiring)


def test_twin_rows_of_eighteen():
    row = "46,135,90|18,19,3,6|0,0,0,0,3,9,3,0,3"
    twins = [r for r in catalogue(18) if r.invariants.to_text() == row]
    assert len(twins) == 2
    assert twins[0].certificate != twins[1].certificate
    assert [r.automorphisms for r in twins] == [12, 12]


def test_eleven_line_group_is_klein_four():
    (a, ) = [r for r in catalogue(11)]
    # A1 x A1 x A1 in the central arrangement: every non-trivial element is an involution
    assert element_orders(a.wiring) == {1: 1, 2: 3}
