import random
from math import comb

import pytest
from hypothesis import given, settings

from conftest import FRAGMENT_20
from simparr.wiring import (AllowableSequence, IllegalMoveError, InvalidSizeError, MoveBoundsError,
                            WiringError, apply_move, flip, fragment_from_moves, is_complete,
                            legal_moves, new_fragment, recompute_fragment, reverse, rotate,
                            validate_sequence)
from strategies import fragments, replay, wirings


def test_new_fragment_identity():
    f = new_fragment(3)
    assert f.sigma[1:] == [1, 2, 3] and f.m == 0
    assert new_fragment(2).sigma[1:] == [1, 2]
    with pytest.raises(InvalidSizeError):
        new_fragment(1)


def test_full_pencil_move():
    f = apply_move(new_fragment(3), (1, 3))
    assert f.sigma[1:] == [3, 2, 1]
    assert is_complete(f)
    assert f.to_sequence().sizes() == [3]


def test_reduced_word_for_reversal():
    f = fragment_from_moves(3, [(1, 2), (2, 3), (1, 2)])
    assert f.sigma[1:] == [3, 2, 1]
    assert f.to_sequence().sizes() == [2, 2, 2]


def test_apply_move_does_not_mutate():
    f = new_fragment(4)
    g = apply_move(f, (2, 3))
    assert f.sigma[1:] == [1, 2, 3, 4] and g.sigma[1:] == [1, 3, 2, 4]


def test_twenty_wire_fragment_state():
    f = fragment_from_moves(20, FRAGMENT_20)
    assert f.m == 29
    assert f.sigma[1:] == [5, 4, 11, 8, 13, 9, 6, 16, 10, 19, 14, 20, 12, 7, 17, 18, 15, 3, 2, 1]
    assert f.s == [0, 1, 1, 1, 1, 2, 2, 1, 2, 2, 1, 2, 1, 2, 2, 1, 2, 2, 1, 2]
    assert f.v == [2, 1, 2, 1, 2, 1, 1, 2, 1, 2, 1, 2, 1, 1, 2, 2, 1, 1, 2, 2]
    assert f.eps[1:] == [5, 5, 3, 3, 4, 4, 4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 2]
    assert (f.d, f.u) == (1, 17)
    assert not is_complete(f)
    assert f.state() == recompute_fragment(20, FRAGMENT_20)


def test_legal_moves_examples():
    assert set(legal_moves(new_fragment(3))) == {(1, 2), (1, 3), (2, 3)}
    assert legal_moves(fragment_from_moves(3, [(1, 3)])) == []
    assert legal_moves(fragment_from_moves(3, [(1, 2)])) == [(2, 3)]


def test_is_complete_examples():
    assert not is_complete(new_fragment(4))
    assert is_complete(fragment_from_moves(3, [(1, 3)]))


def test_push_errors():
    f = new_fragment(4)
    with pytest.raises(MoveBoundsError):
        f.push(0, 2)
    with pytest.raises(MoveBoundsError):
        f.push(3, 5)
    f.push(1, 2)
    with pytest.raises(IllegalMoveError):
        f.push(1, 3)
    assert f.sigma[1:] == [2, 1, 3, 4]


def test_validate_examples():
    assert validate_sequence(AllowableSequence(3, ((1, 3),))) is None
    bad = validate_sequence(AllowableSequence(3, ((1, 2), (1, 2))))
    assert bad is not None and bad.index == 2
    short = validate_sequence(AllowableSequence(3, ((1, 2),)))
    assert short is not None and short.index == 2


def test_validate_random_bubble_sort_n4():
    rng = random.Random(4)
    for _ in range(50):
        f = new_fragment(4)
        while not f.is_complete():
            adj = [p for p in f.legal_moves() if p.b == p.a + 1]
            f.push(*rng.choice(adj))
        assert f.m == 6
        assert validate_sequence(f.to_sequence()) is None


def test_text_formats_round_trip():
    w = AllowableSequence(3, ((1, 2), (2, 3), (1, 2)))
    assert w.to_text() == "3 3\n1,2 2,3 1,2\n"
    assert AllowableSequence.from_text(w.to_text()) == w
    assert AllowableSequence.from_compact(w.compact()) == w
    with pytest.raises(WiringError):
        AllowableSequence.from_text("3 2\n1,2\n")


@settings(max_examples=200, deadline=None)
@given(fragments())
def test_incremental_matches_recompute(f):
    assert f.state() == recompute_fragment(f.n, list(f.moves))


@settings(max_examples=100, deadline=None)
@given(fragments(complete=False))
def test_pop_restores_state(f):
    before = f.state()
    for p in f.legal_moves():
        f.push(*p)
        f.pop()
        assert f.state() == before


@settings(max_examples=200, deadline=None)
@given(wirings())
def test_crossing_conservation(w):
    assert sum(comb(k, 2) for k in w.sizes()) == comb(w.n, 2)
    assert validate_sequence(w) is None


@settings(max_examples=100, deadline=None)
@given(wirings(min_n=3))
def test_reencodings_stay_valid(w):
    for other in (flip(w), reverse(w), rotate(w, 1), rotate(w, w.m - 1)):
        assert validate_sequence(other) is None
        assert sorted(other.sizes()) == sorted(w.sizes())


def test_replay_helper_completes():
    f = replay(6, [3, 1, 4, 1, 5])
    assert f.is_complete()
