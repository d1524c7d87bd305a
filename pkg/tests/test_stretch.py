from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings

from conftest import TRIANGLE, UNSTRETCHABLE_15, a61, catalogue
from simparr.cells import cell_complex, invariants, is_simplicial, wiring_from_lines
from simparr.enumerator import near_pencil
from simparr.iso import certificate, isomorphic
from simparr.stretch import (HasseEdge, RealizeOptions, containments, delete_line, delete_lines,
                             hasse_edges, pappus_obstruction, realize_numeric)
from simparr.wiring import AllowableSequence, WiringError, validate_sequence
from strategies import wirings


def test_unstretchable_figure_is_simplicial():
    assert validate_sequence(UNSTRETCHABLE_15) is None
    c = cell_complex(UNSTRETCHABLE_15)
    assert is_simplicial(c)
    assert invariants(c).f == (33, 96, 64)


def test_unstretchable_figure_has_pappus_witness():
    c = cell_complex(UNSTRETCHABLE_15)
    wit = pappus_obstruction(UNSTRETCHABLE_15, c)
    assert wit is not None
    assert wit.check(c) == []


def test_unstretchable_figure_is_never_realized():
    assert realize_numeric(UNSTRETCHABLE_15, RealizeOptions(restarts=10, seed=3)) is None


def test_unstretchable_figure_is_an_enumerated_class():
    certs = {r.certificate for r in catalogue(15)}
    assert certificate(UNSTRETCHABLE_15)[0] in certs


def test_pappus_none_on_small():
    assert pappus_obstruction(TRIANGLE) is None
    assert pappus_obstruction(a61()) is None


def test_witness_check_catches_tampering():
    c = cell_complex(UNSTRETCHABLE_15)
    wit = pappus_obstruction(UNSTRETCHABLE_15, c)
    from dataclasses import replace
    broken = replace(wit, violating_line=wit.lines[0])
    assert broken.check(c) != []


def test_delete_near_pencil_off_line():
    w = near_pencil(6)
    c = cell_complex(w)
    off = [lab for lab, vs in c.line_vertices.items() if len(vs) == 5]
    assert len(off) == 1
    assert delete_line(w, off[0]) == AllowableSequence(5, ((1, 5),))


def test_delete_from_triangle():
    for lab in (1, 2, 3):
        assert delete_line(TRIANGLE, lab) == AllowableSequence(2, ((1, 2),))


def test_delete_errors():
    with pytest.raises(WiringError):
        delete_line(TRIANGLE, 4)
    with pytest.raises(WiringError):
        delete_line(AllowableSequence(2, ((1, 2),)), 1)


@settings(max_examples=150, deadline=None)
@given(wirings(min_n=3, max_n=10))
def test_deletion_conserves_crossings(w):
    lab = 1 + (w.m * 7) % w.n
    sub = delete_line(w, lab)
    assert validate_sequence(sub) is None
    assert sum(comb(k, 2) for k in sub.sizes()) == comb(w.n - 1, 2)


def test_delete_lines_matches_repeated_single():
    w = catalogue(10)[0].wiring
    assert delete_lines(w, [2, 7]) == delete_line(delete_line(w, 7), 2)


def test_deleting_from_straight_lines_matches():
    # wires are numbered by starting position, so compare the multisets of results
    lines = [(0, 1, 0), (1, 0, 0), (1, 0, -1), (0, 1, -1), (1, -1, 0), (1, 1, -1), (1, -1, 1)]
    w = wiring_from_lines(lines)
    by_wire = sorted(invariants(cell_complex(delete_line(w, lab))).to_text()
                     for lab in range(1, len(lines) + 1))
    by_line = sorted(invariants(cell_complex(wiring_from_lines(lines[:k] + lines[k + 1:]))).to_text()
                     for k in range(len(lines)))
    assert by_wire == by_line


def _small_records():
    return [r for n in range(6, 11) for r in catalogue(n, True)]


def test_hasse_is_acyclic_and_antisymmetric():
    edges = hasse_edges(_small_records())
    assert edges
    pairs = {(e.upper, e.lower) for e in edges}
    assert all((b, a) not in pairs for a, b in pairs)
    assert all(e.upper[0] > e.lower[0] for e in edges)


def test_hasse_is_transitive_reduction():
    recs = _small_records()
    pairs = set(containments(recs))
    edges = {(e.upper, e.lower) for e in hasse_edges(recs)}
    assert edges <= pairs
    for a, b in pairs:
        if (a, b) not in edges:
            assert any((a, c) in pairs and (c, b) in pairs for c in {x for _, x in pairs})


def _simplicial_deletions(w):
    out = {}
    for lab in range(1, w.n + 1):
        sub = delete_line(w, lab)
        c = cell_complex(sub)
        if is_simplicial(c):
            out.setdefault(certificate(sub, c)[0], sub)
    return out


def test_deletion_chains_down_to_a61():
    target = certificate(a61())[0]
    minimal = []
    for n in range(7, 11):
        for rec in catalogue(n):
            frontier = {rec.certificate: rec.wiring}
            for _ in range(n - 6):
                nxt = {}
                for w in frontier.values():
                    nxt.update(_simplicial_deletions(w))
                frontier = nxt
            if not _simplicial_deletions(rec.wiring):
                minimal.append(rec.invariants.to_text())
            else:
                assert target in frontier, rec.certificate
    # two ten-line classes lose simpliciality whichever line is removed
    assert sorted(minimal) == ["16,45,30|5,10,0,1|0,0,5,5", "16,45,30|6,7,3|0,1,3,6"]


def test_hasse_edge_text():
    e = HasseEdge((7, "abc"), (6, "def"))
    assert e.to_text() == "7:abc -> 6:def"


def test_realize_a61_exactly():
    r = realize_numeric(a61())
    assert r is not None and r.exact
    assert all(isinstance(x, Fraction) for l in r.lines for x in l)
    assert isomorphic(wiring_from_lines(r.lines), a61())
    assert r.to_text().startswith("gauge ")


def test_realize_small_classes_reextract():
    for rec in catalogue(9) + catalogue(11):
        r = realize_numeric(rec.wiring)
        assert r is not None
        if r.exact:
            assert certificate(wiring_from_lines(r.lines))[0] == rec.certificate


def test_realize_rejects_non_simplicial():
    with pytest.raises(WiringError):
        realize_numeric(AllowableSequence(3, ((1, 3),)))
