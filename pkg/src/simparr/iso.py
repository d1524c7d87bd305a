"""Isomorphism classes of simplicial arrangements.

Certificates are computed on the flags (vertex, edge, face) of the projective
cell complex.  Automorphisms act freely on flags, so a breadth-first numbering
started at one flag determines the whole complex; the least numbering over an
invariant set of start flags is canonical and the number of start flags that
reach it is the automorphism group order.

The triangulation graph alone is not enough for automorphisms: the complete
quadrilateral has a graph with 144 symmetries but only 48 of them map
triangles to triangles.  :func:`canonical_form` is still provided for graph
level checks.
"""
from __future__ import annotations

import hashlib

from dataclasses import dataclass, field
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cells import (CellComplex, InvariantVector, NotSimplicialError, cell_complex,
                    invariants, is_simplicial, triangulation_graph)
from .wiring import AllowableSequence


@dataclass(frozen=True)
class Fingerprint:
    n: int
    f: Tuple[int, int, int]
    t: Tuple[int, ...]
    r: Tuple[int, ...]
    degrees: Tuple[int, ...]
    neighbourhoods: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def key(self) -> tuple:
        return (self.n, self.f, self.t, self.r, self.degrees, self.neighbourhoods)


@dataclass
class ArrangementRecord:
    wiring: AllowableSequence
    fingerprint: Fingerprint
    certificate: str
    automorphisms: int
    invariants: InvariantVector
    near_pencil: bool = False
    pappus: Optional[bool] = None           # None = not analysed
    extra: Dict[str, str] = field(default_factory=dict)


# -- colour refinement ---------------------------------------------------------

def _refine(adj: Sequence[Sequence[int]], colours: List[int]) -> List[int]:
    """Stable colouring; new colours are ranks of (colour, neighbour colour multiset)."""
    ncol = len(set(colours))
    while True:
        sigs = [(colours[v], tuple(sorted(colours[w] for w in adj[v]))) for v in range(len(adj))]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncol:
            return new
        colours, ncol = new, len(ranks)


def _target_cell(colours: List[int]) -> Optional[List[int]]:
    cells: Dict[int, List[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _individualize(colours: List[int], v: int) -> List[int]:
    c = colours[v]
    out = [2 * x + (1 if x == c and w != v else 0) for w, x in enumerate(colours)]
    ranks = {x: i for i, x in enumerate(sorted(set(out)))}
    return [ranks[x] for x in out]


def _leaf_code(adj: Sequence[Sequence[int]], colours: List[int]) -> Tuple[int, ...]:
    code = []
    for v in sorted(range(len(adj)), key=colours.__getitem__):
        cv = colours[v]
        code.append(sum(1 << colours[w] for w in adj[v] if colours[w] > cv))
    return tuple(code)


def canonical_form(adj: Sequence[Sequence[int]],
                   seed_colours: Optional[Sequence[int]] = None) -> Tuple[Tuple[int, ...], int]:
    """(canonical code, automorphism count) of a vertex-coloured simple graph."""
    nv = len(adj)
    adj = [tuple(a) for a in adj]
    start = list(seed_colours) if seed_colours is not None else [len(a) for a in adj]
    ranks = {x: i for i, x in enumerate(sorted(set(start)))}
    colours = _refine(adj, [ranks[x] for x in start])
    best: List = [None, 0]

    def search(col: List[int]) -> None:
        cell = _target_cell(col)
        if cell is None:
            code = _leaf_code(adj, col)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, 1
            elif code == best[0]:
                best[1] += 1
            return
        for v in cell:
            search(_refine(adj, _individualize(col, v)))

    if nv == 0:
        return (), 1
    search(colours)
    return best[0], best[1]


def _code_to_hex(nv: int, code: Tuple[int, ...]) -> str:
    bits = 0
    for row in code:
        bits = (bits << nv) | row
    width = (nv * nv + 3) // 4
    return f"{nv:x}-{bits:0{width}x}"


# -- public operations -----------------------------------------------------------

def _graph(w: AllowableSequence, c: Optional[CellComplex] = None):
    c = c or cell_complex(w)
    if not is_simplicial(c):
        raise NotSimplicialError("isomorphism test needs simplicial wirings")
    nv, adj = triangulation_graph(w, c)
    return c, [sorted(a) for a in adj]


def graph_certificate(w: AllowableSequence, c: Optional[CellComplex] = None) -> Tuple[str, int]:
    """(certificate, automorphism count) of the triangulation graph alone."""
    c, adj = _graph(w, c)
    code, aut = canonical_form(adj, [len(vs) for vs in c.vertices])
    return _code_to_hex(len(adj), code), aut


def fingerprint(w: AllowableSequence, c: Optional[CellComplex] = None) -> Fingerprint:
    c, adj = _graph(w, c)
    inv = invariants(c)
    mult = [len(vs) for vs in c.vertices]
    degrees = tuple(sorted(len(a) for a in adj))
    hood = tuple(sorted((mult[v], tuple(sorted(mult[x] for x in adj[v]))) for v in range(len(adj))))
    return Fingerprint(inv.n, inv.f, inv.t, inv.r, degrees, hood)


def _flag_maps(c: CellComplex):
    """Flag involutions ``(s0, s1, s2)`` and the vertex of each flag.

    Flag ``2 * (side) + o`` sits on side ``j`` of face ``f`` at corner ``j + o``.
    """
    starts = []
    off = 0
    for face in c.faces:
        starts.append(off)
        off += len(face)
    nflags = 2 * off
    s0 = [0] * nflags
    s1 = [0] * nflags
    s2 = [-1] * nflags
    vert = [0] * nflags
    by_edge: Dict[int, List[Tuple[int, int]]] = {}
    for fi, face in enumerate(c.faces):
        k = len(face)
        for j in range(k):
            side = starts[fi] + j
            lo, hi = 2 * side, 2 * side + 1
            s0[lo], s0[hi] = hi, lo
            vert[lo], vert[hi] = face[j], face[(j + 1) % k]
            nxt = 2 * (starts[fi] + (j + 1) % k)
            s1[hi], s1[nxt] = nxt, hi
            by_edge.setdefault(c.face_edges[fi][j], []).append((lo, hi))
    for e, sides in by_edge.items():
        if e < 0 or len(sides) != 2:
            raise NotSimplicialError("cell complex is not a regular map")
        (a0, a1), (b0, b1) = sides
        for x in (a0, a1):
            y = b0 if vert[b0] == vert[x] else b1
            s2[x], s2[y] = y, x
    return s0, s1, s2, vert


def _flag_code(start: int, s0, s1, s2, best) -> Optional[List[int]]:
    """BFS numbering code from ``start``; None as soon as it exceeds ``best``."""
    num = {start: 0}
    order = [start]
    code: List[int] = []
    pos = 0
    for x in order:
        for inv in (s0, s1, s2):
            y = inv[x]
            k = num.get(y)
            if k is None:
                k = num[y] = len(order)
                order.append(y)
            if best is not None:
                b = best[pos]
                if k > b:
                    return None
                if k < b:
                    best = None
            code.append(k)
            pos += 1
    return code


def _start_class(c: CellComplex, vert: List[int]) -> List[int]:
    """Flags whose vertex lies in the rarest vertex class (an invariant set)."""
    mult = [len(v) for v in c.vertices]
    nbrs: List[set] = [set() for _ in c.vertices]
    for u, v, _ in c.edges:
        if u != v:
            nbrs[u].add(v)
            nbrs[v].add(u)
    cls = [(mult[v], tuple(sorted(mult[w] for w in nbrs[v]))) for v in range(len(mult))]
    sizes = Counter(cls)
    target = min(sizes, key=lambda k: (sizes[k], k))
    return [x for x in range(len(vert)) if cls[vert[x]] == target]


def _canonical_starts(c: CellComplex):
    s0, s1, s2, vert = _flag_maps(c)
    best: Optional[List[int]] = None
    winners: List[int] = []
    for x in _start_class(c, vert):
        code = _flag_code(x, s0, s1, s2, best)
        if code is None:
            continue
        if best is None or code < best:
            best, winners = code, [x]
        else:
            winners.append(x)
    return best or [], winners, (s0, s1, s2)


def flag_canonical(c: CellComplex) -> Tuple[Tuple[int, ...], int]:
    """(canonical flag code, order of the projective automorphism group)."""
    code, winners, _ = _canonical_starts(c)
    return tuple(code), len(winners)


def _bfs_order(start: int, maps) -> List[int]:
    num = {start: 0}
    order = [start]
    for x in order:
        for inv in maps:
            y = inv[x]
            if y not in num:
                num[y] = len(order)
                order.append(y)
    return order


def automorphism_permutations(c: CellComplex) -> List[Dict[int, int]]:
    """Every automorphism of the projective complex, as a permutation of flags."""
    _, winners, maps = _canonical_starts(c)
    base = _bfs_order(winners[0], maps)
    return [dict(zip(base, _bfs_order(x, maps))) for x in winners]


def element_orders(w: AllowableSequence) -> Dict[int, int]:
    """Histogram {element order: count} of the projective automorphism group."""
    out: Counter = Counter()
    for perm in automorphism_permutations(cell_complex(w)):
        x0 = next(iter(perm))
        k, x = 1, perm[x0]
        while x != x0:
            x = perm[x]
            k += 1
        out[k] += 1  # the group acts freely, so one orbit gives the order
    return dict(sorted(out.items()))


def certificate(w: AllowableSequence, c: Optional[CellComplex] = None) -> Tuple[str, int]:
    """(hex certificate, projective automorphism order)."""
    c = c or cell_complex(w)
    if not is_simplicial(c):
        raise NotSimplicialError("isomorphism test needs simplicial wirings")
    code, aut = flag_canonical(c)
    f0, f1, f2 = c.f
    digest = hashlib.sha256(",".join(map(str, code)).encode()).hexdigest()
    return f"{f0}.{f1}.{f2}-{digest}", aut


def isomorphic(w1: AllowableSequence, w2: AllowableSequence) -> bool:
    if w1.n != w2.n:
        return False
    if fingerprint(w1) != fingerprint(w2):
        return False
    return certificate(w1)[0] == certificate(w2)[0]


def projective_automorphism_count(w: AllowableSequence) -> int:
    """Automorphisms of the cell complex in the projective plane."""
    return certificate(w)[1]


def automorphism_count(w: AllowableSequence) -> int:
    """Order of the automorphism group of the central arrangement on the sphere.

    Every projective automorphism lifts in two ways (the antipodal map is
    combinatorially determined), so this is twice the projective count.
    """
    return 2 * certificate(w)[1]


def make_record(w: AllowableSequence, near_pencil: bool = False) -> ArrangementRecord:
    c = cell_complex(w)
    fp = fingerprint(w, c)
    cert, aut = certificate(w, c)
    return ArrangementRecord(w, fp, cert, 2 * aut, invariants(c), near_pencil)


def _encoding_key(w: AllowableSequence) -> tuple:
    return (w.m, tuple(w.moves))


class Deduplicator:
    """Set-union merge point: add wirings in any order, read one record per class."""

    def __init__(self):
        self._by_cert: Dict[str, ArrangementRecord] = {}
        self._seen: Dict[tuple, str] = {}

    def add(self, w: AllowableSequence, near_pencil: bool = False) -> str:
        key = (w.n, tuple(w.moves))
        cert = self._seen.get(key)
        if cert is not None:
            return cert
        rec = make_record(w, near_pencil)
        self._seen[key] = rec.certificate
        old = self._by_cert.get(rec.certificate)
        if old is None:
            self._by_cert[rec.certificate] = rec
        elif _encoding_key(w) < _encoding_key(old.wiring):
            old.wiring = w
        return rec.certificate

    def merge(self, other: "Deduplicator") -> None:
        for rec in other._by_cert.values():
            old = self._by_cert.get(rec.certificate)
            if old is None:
                self._by_cert[rec.certificate] = rec
            elif _encoding_key(rec.wiring) < _encoding_key(old.wiring):
                old.wiring = rec.wiring
        self._seen.update(other._seen)

    def records(self) -> List[ArrangementRecord]:
        return sorted(self._by_cert.values(), key=lambda r: (r.wiring.n, r.certificate))

    def __len__(self) -> int:
        return len(self._by_cert)


def dedup(stream: Iterable[AllowableSequence]) -> List[ArrangementRecord]:
    d = Deduplicator()
    for w in stream:
        d.add(w)
    return d.records()
