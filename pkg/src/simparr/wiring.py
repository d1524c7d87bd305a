"""Allowable sequences, wiring fragments and move mechanics.

Conventions
-----------
Positions are 1-based with position 1 the bottom wire.  A move ``(a, b)``
reverses the labels at positions ``a..b``; it is legal when that block is
strictly increasing.  Gap ``g`` (``1 <= g < n``) lies between positions
``g`` and ``g + 1``; gap 0 is the wrap-around cell above position ``n`` and
below position 1.  Arrays indexed by position have a dummy slot 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple


class WiringError(ValueError):
    pass


class InvalidSizeError(WiringError):
    pass


class IllegalMoveError(WiringError):
    pass


class MoveBoundsError(WiringError):
    pass


class MovePair(NamedTuple):
    a: int
    b: int

    @property
    def size(self) -> int:
        return self.b - self.a + 1


@dataclass(frozen=True)
class AllowableSequence:
    """A complete wiring: ``n`` wires and the junction list."""

    n: int
    moves: Tuple[MovePair, ...]

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(MovePair(int(a), int(b)) for a, b in self.moves))

    @property
    def m(self) -> int:
        return len(self.moves)

    def sizes(self) -> List[int]:
        return [b - a + 1 for a, b in self.moves]

    def to_text(self) -> str:
        pairs = " ".join(f"{a},{b}" for a, b in self.moves)
        return f"{self.n} {self.m}\n{pairs}\n"

    @classmethod
    def from_text(cls, text: str) -> "AllowableSequence":
        lines = text.strip().splitlines()
        if not lines:
            raise WiringError("empty wiring text")
        head = lines[0].split()
        if len(head) != 2:
            raise WiringError("header must be 'n m'")
        n, m = int(head[0]), int(head[1])
        tokens = " ".join(lines[1:]).split()
        if len(tokens) != m:
            raise WiringError(f"expected {m} pairs, found {len(tokens)}")
        moves = []
        for tok in tokens:
            a, _, b = tok.partition(",")
            moves.append(MovePair(int(a), int(b)))
        return cls(n, tuple(moves))

    def compact(self) -> str:
        """One-line form ``n:a,b;a,b;...`` used inside catalogue records."""
        return f"{self.n}:" + ";".join(f"{a},{b}" for a, b in self.moves)

    @classmethod
    def from_compact(cls, text: str) -> "AllowableSequence":
        n, _, body = text.partition(":")
        moves = []
        for tok in body.split(";") if body else []:
            a, _, b = tok.partition(",")
            moves.append((int(a), int(b)))
        return cls(int(n), tuple(moves))


@dataclass(frozen=True)
class Violation:
    index: int  # 1-based move index, or m + 1 for "did not reach the reversal"
    reason: str


class WiringFragment:
    """Incremental enumeration state.

    ``push`` mutates in place and ``pop`` restores the exact prior state;
    :func:`apply_move` is the value-returning wrapper.
    """

    __slots__ = ("n", "sigma", "moves", "eps", "v", "s", "closed", "d", "u", "_undo")

    def __init__(self, n: int):
        if n < 2:
            raise InvalidSizeError(f"need at least 2 wires, got {n}")
        self.n = n
        self.sigma = list(range(n + 1))
        self.moves: List[MovePair] = []
        self.eps = [0] * (n + 1)
        self.v = [0] * n
        self.s = [0] * n
        self.closed = [False] * n
        self.d = 1
        self.u = n
        self._undo: list = []

    @property
    def m(self) -> int:
        return len(self.moves)

    def copy(self) -> "WiringFragment":
        f = WiringFragment.__new__(WiringFragment)
        f.n = self.n
        f.sigma = self.sigma[:]
        f.moves = self.moves[:]
        f.eps = self.eps[:]
        f.v = self.v[:]
        f.s = self.s[:]
        f.closed = self.closed[:]
        f.d = self.d
        f.u = self.u
        f._undo = []
        return f

    def is_complete(self) -> bool:
        n = self.n
        sig = self.sigma
        return all(sig[i] == n + 1 - i for i in range(1, n + 1))

    def is_legal(self, a: int, b: int) -> bool:
        if not 1 <= a < b <= self.n:
            return False
        sig = self.sigma
        return all(sig[k] < sig[k + 1] for k in range(a, b))

    def legal_moves(self) -> List[MovePair]:
        n, sig = self.n, self.sigma
        out = []
        for i in range(1, n):
            j = i
            while j < n and sig[j] < sig[j + 1]:
                j += 1
                out.append(MovePair(i, j))
        return out

    def push(self, a: int, b: int) -> None:
        n = self.n
        if not 1 <= a < b <= n:
            raise MoveBoundsError(f"move ({a},{b}) out of range for n={n}")
        sig = self.sigma
        for k in range(a, b):
            if sig[k] > sig[k + 1]:
                raise IllegalMoveError(f"block {a}..{b} of {sig[1:]} is not increasing")
        self._push_unchecked(a, b)

    def _push_unchecked(self, a: int, b: int) -> None:
        n = self.n
        sig, eps, v, s, closed = self.sigma, self.eps, self.v, self.s, self.closed
        lo = a - 1
        hi = b if b < n else 0
        # undo record: (a, b, eps slice, v/s/closed of gaps lo..b, d, u)
        gaps = list(range(a, b))
        rec = (a, b, eps[a:b + 1], [(g, v[g], s[g], closed[g]) for g in gaps],
               v[lo], s[lo], v[hi], s[hi], self.d, self.u)
        self._undo.append(rec)

        sig[a:b + 1] = sig[a:b + 1][::-1]
        size = b - a + 1
        for k in range(a, b + 1):
            eps[k] = size
        for g in gaps:
            if not closed[g]:
                closed[g] = True
                s[g] = v[g] + 1
            v[g] = 1
        v[lo] += 1
        v[hi] += 1
        if lo and not closed[lo]:
            s[lo] = v[lo]
        if hi and not closed[hi]:
            s[hi] = v[hi]
        self.moves.append(MovePair(a, b))

        d = self.d
        if a <= d:
            while d < n and sig[d] == n + 1 - d:
                d += 1
            self.d = d
        u = self.u
        if b >= u:
            while u > 1 and sig[u] == n + 1 - u:
                u -= 1
            self.u = u

    def pop(self) -> MovePair:
        a, b, eps_old, gap_old, vlo, slo, vhi, shi, d, u = self._undo.pop()
        n = self.n
        sig, v, s, closed = self.sigma, self.v, self.s, self.closed
        sig[a:b + 1] = sig[a:b + 1][::-1]
        self.eps[a:b + 1] = eps_old
        lo = a - 1
        hi = b if b < n else 0
        # hi before lo: when lo == hi == 0 the first-saved values are the originals
        v[hi], s[hi] = vhi, shi
        v[lo], s[lo] = vlo, slo
        for g, vg, sg, cg in gap_old:
            v[g], s[g], closed[g] = vg, sg, cg
        self.d, self.u = d, u
        return self.moves.pop()

    def to_sequence(self) -> AllowableSequence:
        return AllowableSequence(self.n, tuple(self.moves))

    def state(self) -> tuple:
        """Comparable snapshot of every field."""
        return (self.n, tuple(self.sigma[1:]), tuple(self.moves), tuple(self.eps[1:]),
                tuple(self.v), tuple(self.s), self.d, self.u)

    def __repr__(self) -> str:
        return (f"WiringFragment(n={self.n}, m={self.m}, sigma={self.sigma[1:]}, "
                f"d={self.d}, u={self.u})")


def new_fragment(n: int) -> WiringFragment:
    return WiringFragment(n)


def apply_move(f: WiringFragment, p: Sequence[int]) -> WiringFragment:
    g = f.copy()
    g.push(int(p[0]), int(p[1]))
    return g


def legal_moves(f: WiringFragment) -> List[MovePair]:
    return f.legal_moves()


def is_complete(f: WiringFragment) -> bool:
    return f.is_complete()


def fragment_from_moves(n: int, moves: Iterable[Sequence[int]]) -> WiringFragment:
    f = WiringFragment(n)
    for a, b in moves:
        f.push(a, b)
    return f


def recompute_fragment(n: int, moves: Sequence[Sequence[int]]) -> tuple:
    """Derived fields straight from the definitions, without incremental updates.

    Returns the same tuple layout as :meth:`WiringFragment.state`.
    """
    sigma = list(range(n + 1))
    for a, b in moves:
        sigma[a:b + 1] = sigma[a:b + 1][::-1]

    eps = [0] * (n + 1)
    for i in range(1, n + 1):
        for a, b in reversed(moves):
            if a <= i <= b:
                eps[i] = b - a + 1
                break

    def spans(a, b, g):
        return a <= g < b

    def touches(a, b, g):
        return b == g or a == g + 1

    v = [0] * n
    s = [0] * n
    v[0] = sum(1 for a, b in moves if a == 1) + sum(1 for a, b in moves if b == n)
    for g in range(1, n):
        span_idx = [k for k, (a, b) in enumerate(moves) if spans(a, b, g)]
        if span_idx:
            first, last = span_idx[0], span_idx[-1]
            s[g] = sum(1 for a, b in moves[:first] if touches(a, b, g)) + 1
            v[g] = sum(1 for a, b in moves[last + 1:] if touches(a, b, g)) + 1
        else:
            s[g] = v[g] = sum(1 for a, b in moves if touches(a, b, g))

    d = 1
    while d < n and sigma[d] == n + 1 - d:
        d += 1
    u = n
    while u > 1 and sigma[u] == n + 1 - u:
        u -= 1
    return (n, tuple(sigma[1:]), tuple(MovePair(a, b) for a, b in moves), tuple(eps[1:]),
            tuple(v), tuple(s), d, u)


def validate_sequence(seq: AllowableSequence) -> Optional[Violation]:
    """``None`` if ``seq`` is a complete allowable sequence, else the first violation."""
    n = seq.n
    if n < 2:
        return Violation(0, f"need at least 2 wires, got {n}")
    sigma = list(range(n + 1))
    for idx, (a, b) in enumerate(seq.moves, start=1):
        if not 1 <= a < b <= n:
            return Violation(idx, f"move ({a},{b}) out of range")
        if any(sigma[k] > sigma[k + 1] for k in range(a, b)):
            return Violation(idx, f"block {a}..{b} not increasing")
        sigma[a:b + 1] = sigma[a:b + 1][::-1]
    if sigma[1:] != list(range(n, 0, -1)):
        return Violation(seq.m + 1, "final permutation is not the reversal")
    return None


def is_valid(seq: AllowableSequence) -> bool:
    return validate_sequence(seq) is None


def final_permutation(n: int, moves: Iterable[Sequence[int]]) -> List[int]:
    sigma = list(range(n + 1))
    for a, b in moves:
        sigma[a:b + 1] = sigma[a:b + 1][::-1]
    return sigma[1:]


# -- re-encodings of the same arrangement ---------------------------------

def flip(seq: AllowableSequence) -> AllowableSequence:
    """Upside-down mirror: position p becomes n + 1 - p."""
    n = seq.n
    return AllowableSequence(n, tuple(MovePair(n + 1 - b, n + 1 - a) for a, b in seq.moves))


def reverse(seq: AllowableSequence) -> AllowableSequence:
    """Read the diagram right to left."""
    return AllowableSequence(seq.n, tuple(reversed(seq.moves)))


def rotate(seq: AllowableSequence, k: int = 1) -> AllowableSequence:
    """Continue the sweep past the end: the first ``k`` junctions reappear flipped at the end."""
    n = seq.n
    moves = list(seq.moves)
    for _ in range(k % max(1, len(moves))):
        a, b = moves.pop(0)
        moves.append(MovePair(n + 1 - b, n + 1 - a))
    return AllowableSequence(n, tuple(moves))
