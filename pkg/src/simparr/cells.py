"""Projective cell complex of a complete wiring, and the catalogue invariants.

The wiring is drawn on a strip whose ends are glued with a half twist:
right wire-row ``i`` continues as left wire-row ``n + 1 - i`` and the right end
of gap ``i`` is the left end of gap ``(n - i) mod n``.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .wiring import AllowableSequence, MovePair, WiringError, validate_sequence


class NotCompleteError(WiringError):
    pass


class NotSimplicialError(WiringError):
    pass


class DegenerateLinesError(ValueError):
    pass


@dataclass
class CellComplex:
    n: int
    vertices: List[FrozenSet[int]]          # vertex k = junction k, as its set of line labels
    line_vertices: Dict[int, List[int]]     # label -> vertices in order along the wire
    edges: List[Tuple[int, int, int]]       # (u, v, label); one segment per consecutive pair
    faces: List[Tuple[int, ...]]            # cyclic corner sequences
    face_edges: List[Tuple[int, ...]] = field(default_factory=list)  # edge i joins corners i, i+1
    _meet: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    @property
    def f(self) -> Tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def meet(self, l1: int, l2: int) -> int:
        """The vertex where two distinct lines cross."""
        if not self._meet:
            for k, labels in enumerate(self.vertices):
                ls = sorted(labels)
                for i, x in enumerate(ls):
                    for y in ls[i + 1:]:
                        self._meet[(x, y)] = k
        if l1 > l2:
            l1, l2 = l2, l1
        return self._meet[(l1, l2)]

    def line_through(self, v1: int, v2: int) -> Optional[int]:
        common = self.vertices[v1] & self.vertices[v2]
        if len(common) == 1:
            return next(iter(common))
        return None


@dataclass(frozen=True)
class InvariantVector:
    n: int
    f: Tuple[int, int, int]
    t: Tuple[int, ...]   # t[0] = t_2
    r: Tuple[int, ...]   # r[0] = r_2

    def to_text(self) -> str:
        join = lambda xs: ",".join(map(str, xs))
        return f"{join(self.f)}|{join(self.t)}|{join(self.r)}"

    @classmethod
    def from_text(cls, text: str, n: int) -> "InvariantVector":
        fs, ts, rs = text.split("|")
        parse = lambda s: tuple(int(x) for x in s.split(",")) if s else ()
        return cls(n, parse(fs), parse(ts), parse(rs))


def _gap_events(seq: AllowableSequence):
    """Per gap, the ordered list of ('span'|'below'|'above', vertex) events."""
    n = seq.n
    ev: List[list] = [[] for _ in range(n)]
    for k, (a, b) in enumerate(seq.moves):
        for g in range(a, b):
            ev[g].append(("span", k))
        if a >= 2:
            ev[a - 1].append(("above", k))
        if b <= n - 1:
            ev[b].append(("below", k))
    return ev


def _segments(events):
    """Split a gap's events at spans; each segment is (left_span, belows, aboves, right_span)."""
    segs = []
    left = None
    below: List[int] = []
    above: List[int] = []
    for kind, k in events:
        if kind == "span":
            segs.append((left, below, above, k))
            left, below, above = k, [], []
        elif kind == "below":
            below.append(k)
        else:
            above.append(k)
    segs.append((left, below, above, None))
    return segs


def _edge_between(vertices, line_vertices, base, x, y, wraps):
    """Index into ``edges`` of the side from corner ``x`` to corner ``y``; -1 if undefined."""
    common = vertices[x] & vertices[y]
    if x == y or len(common) != 1:
        return -1
    lab = next(iter(common))
    vs = line_vertices[lab]
    k = len(vs)
    if k == 2:
        return base[lab] + (1 if wraps else 0)
    for i in range(k):
        if {vs[i], vs[(i + 1) % k]} == {x, y}:
            return base[lab] + i
    return -1


def cell_complex(seq: AllowableSequence) -> CellComplex:
    n = seq.n
    bad = validate_sequence(seq)
    if bad is not None:
        raise NotCompleteError(f"not a complete wiring: move {bad.index}: {bad.reason}")

    sigma = list(range(n + 1))
    vertices = []
    line_vertices: Dict[int, List[int]] = {lab: [] for lab in range(1, n + 1)}
    for k, (a, b) in enumerate(seq.moves):
        labels = sigma[a:b + 1]
        vertices.append(frozenset(labels))
        for lab in labels:
            line_vertices[lab].append(k)
        sigma[a:b + 1] = labels[::-1]

    edges = []
    for lab in range(1, n + 1):
        vs = line_vertices[lab]
        for i in range(len(vs)):
            edges.append((vs[i], vs[(i + 1) % len(vs)], lab))

    # each face is a list of (side, corners) runs; a step between runs on different
    # sides crosses the glued end of the strip
    runs_per_face: List[list] = []
    top = [k for k, (a, b) in enumerate(seq.moves) if b == n]
    bottom = [k for k, (a, b) in enumerate(seq.moves) if a == 1]
    runs_per_face.append([("top", top), ("bottom", bottom)])

    segs = [None] + [_segments(e) for e in _gap_events(seq)[1:]]
    for g in range(1, n):
        for left, below, above, right in segs[g][1:-1]:
            runs_per_face.append([("in", [left] + below + [right] + above[::-1])])
    for g in range(1, n):
        # first cell of gap g is closed up by the last cell of gap n - g
        _, below_f, above_f, first_span = segs[g][0]
        last_span, below_l, above_l, _ = segs[n - g][-1]
        runs_per_face.append([("right", [last_span] + below_l),
                              ("left", above_f + [first_span] + below_f[::-1]),
                              ("right", above_l[::-1])])

    base = {}
    off = 0
    for lab in range(1, n + 1):
        base[lab] = off
        off += len(line_vertices[lab])
    faces: List[Tuple[int, ...]] = []
    face_edges: List[Tuple[int, ...]] = []
    for runs in runs_per_face:
        corners: List[int] = []
        sides: List[str] = []
        for side, r in runs:
            corners.extend(r)
            sides.extend([side] * len(r))
        crossing = [sides[i] != sides[(i + 1) % len(sides)] for i in range(len(sides))]
        faces.append(tuple(corners))
        fe = []
        for i, x in enumerate(corners):
            y = corners[(i + 1) % len(corners)]
            fe.append(_edge_between(vertices, line_vertices, base, x, y, crossing[i]))
        face_edges.append(tuple(fe))
    return CellComplex(n, vertices, line_vertices, edges, faces, face_edges)


def invariants(c: CellComplex) -> InvariantVector:
    mult = Counter(len(v) for v in c.vertices)
    per_line = Counter(len(vs) for vs in c.line_vertices.values())
    top_t = max(mult) if mult else 1
    top_r = max(per_line) if per_line else 1
    t = tuple(mult.get(i, 0) for i in range(2, top_t + 1))
    r = tuple(per_line.get(i, 0) for i in range(2, top_r + 1))
    return InvariantVector(c.n, c.f, t, r)


def wiring_invariants(seq: AllowableSequence) -> InvariantVector:
    return invariants(cell_complex(seq))


def is_simplicial(c: CellComplex) -> bool:
    return all(len(face) == 3 and len(set(face)) == 3 for face in c.faces)


def is_simplicial_wiring(seq: AllowableSequence) -> bool:
    return is_simplicial(cell_complex(seq))


def check_invariant_identities(inv: InvariantVector) -> List[str]:
    """Names of the counting identities that fail (empty when consistent)."""
    f0, f1, f2 = inv.f
    bad = []
    if f0 - f1 + f2 != 1:
        bad.append("euler")
    if sum(inv.t) != f0:
        bad.append("sum t")
    if sum((i + 2) * x for i, x in enumerate(inv.t)) != f1:
        bad.append("sum i t")
    if sum(comb(i + 2, 2) * x for i, x in enumerate(inv.t)) != comb(inv.n, 2):
        bad.append("pair crossings")
    if sum(inv.r) != inv.n:
        bad.append("sum r")
    if sum((i + 2) * x for i, x in enumerate(inv.r)) != f1:
        bad.append("sum i r")
    return bad


def triangulation_graph(seq: AllowableSequence, complex_: Optional[CellComplex] = None):
    """Simple graph ``(vertex_count, adjacency sets)`` of a simplicial wiring."""
    c = complex_ or cell_complex(seq)
    if not is_simplicial(c):
        raise NotSimplicialError("triangulation graph needs a simplicial wiring")
    adj: List[set] = [set() for _ in c.vertices]
    for u, v, _ in c.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return len(c.vertices), adj


def graph_edge_count(adj: Sequence[set]) -> int:
    return sum(len(a) for a in adj) // 2


# -- straight lines -> wiring -------------------------------------------------

def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _transform(M, line):
    return tuple(sum(M[i][j] * line[j] for j in range(3)) for i in range(3))


def _sweep(lines, tol):
    """Sweep the chart z = 1 with vertical lines; ``None`` when the chart is degenerate."""
    n = len(lines)
    zero = (lambda x: x == 0) if tol is None else (lambda x: abs(x) <= tol)
    for a, b, c in lines:
        if zero(b):
            return None  # vertical line
    slopes = [-a / b for a, b, c in lines]
    pts = []
    for i in range(n):
        for j in range(i + 1, n):
            p = _cross(lines[i], lines[j])
            if zero(p[2]):
                return None  # crossing at infinity
            pts.append((p[0] / p[2], p[1] / p[2], i, j))
    pts.sort(key=lambda q: (q[0], q[1]))
    groups: List[list] = []
    for x, y, i, j in pts:
        if groups and zero(groups[-1][0] - x):
            if not zero(groups[-1][1] - y):
                return None  # two crossing points above each other
            groups[-1][2].update((i, j))
        else:
            groups.append([x, y, {i, j}])
    order = sorted(range(n), key=lambda k: slopes[k], reverse=True)
    for k in range(n - 1):
        if zero(slopes[order[k]] - slopes[order[k + 1]]):
            return None
    pos_of = {line: p for p, line in enumerate(order, start=1)}
    at = {p: line for line, p in pos_of.items()}
    moves = []
    for _, _, members in groups:
        ps = sorted(pos_of[l] for l in members)
        a, b = ps[0], ps[-1]
        if b - a + 1 != len(ps):
            raise DegenerateLinesError("concurrent lines are not adjacent in the sweep")
        block = [at[p] for p in range(a, b + 1)][::-1]
        for off, line in enumerate(block):
            at[a + off] = line
            pos_of[line] = a + off
        moves.append(MovePair(a, b))
    return AllowableSequence(n, tuple(moves)), order


def wiring_from_lines(lines: Sequence[Sequence], *, tol=None, seed: int = 0,
                      retries: int = 100) -> AllowableSequence:
    """Wiring of a straight-line arrangement given by homogeneous line coordinates.

    With ``tol=None`` the coordinates must be exact (ints or Fractions); otherwise
    values within ``tol`` are treated as equal, which is how high-precision
    floating realizations are re-extracted.
    """
    if tol is None:
        lines = [tuple(Fraction(x) for x in l) for l in lines]
    else:
        lines = [tuple(l) for l in lines]
    n = len(lines)
    if n < 2:
        raise DegenerateLinesError("need at least two lines")
    for i in range(n):
        for j in range(i + 1, n):
            p = _cross(lines[i], lines[j])
            if all((x == 0) if tol is None else (abs(x) <= tol) for x in p):
                raise DegenerateLinesError(f"lines {i} and {j} coincide")
    rng = random.Random(seed)
    M = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for attempt in range(retries + 1):
        cur = [_transform(M, l) for l in lines]
        res = _sweep(cur, tol)
        if res is not None:
            return res[0]
        while True:
            M = tuple(tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(3))
            det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
                   - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
                   + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
            if det:
                break
    raise DegenerateLinesError("no generic projective chart found")
