"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from simparr.wiring import AllowableSequence, WiringFragment


def replay(n, choices, complete=True):
    """Drive a fragment with ``choices`` picking among legal moves; optionally finish it."""
    f = WiringFragment(n)
    for c in choices:
        legal = f.legal_moves()
        if not legal:
            break
        f.push(*legal[c % len(legal)])
    if complete:
        k = 0
        while not f.is_complete():
            legal = f.legal_moves()
            f.push(*legal[k % len(legal)])
            k += 1
    return f


@st.composite
def fragments(draw, min_n=2, max_n=9, complete=False):
    n = draw(st.integers(min_n, max_n))
    choices = draw(st.lists(st.integers(0, 10 ** 6), max_size=n * n))
    return replay(n, choices, complete)


@st.composite
def wirings(draw, min_n=2, max_n=9):
    f = draw(fragments(min_n, max_n, complete=True))
    return AllowableSequence(f.n, tuple(f.moves))
