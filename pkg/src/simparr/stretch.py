"""Stretchability tools: the Pappus obstruction, line deletion and Hasse
containment, and a best-effort numeric straight-line realization."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath as mp
import numpy as np

from .cells import (CellComplex, DegenerateLinesError, cell_complex, is_simplicial,
                    wiring_from_lines)
from .iso import ArrangementRecord, certificate
from .wiring import AllowableSequence, MovePair, WiringError

log = logging.getLogger(__name__)


# -- Pappus ----------------------------------------------------------------------

@dataclass(frozen=True)
class PappusWitness:
    lines: Tuple[int, int]                     # L1, L2
    first: Tuple[int, int, int]                # x, y, z on L1 (vertex ids)
    second: Tuple[int, int, int]               # u, v, w on L2
    connecting: Tuple[int, int, int, int, int, int]  # xv, yu, xw, zu, zv, yw
    cross: Tuple[int, int, int]                # p1, p2, p3
    violating_line: int                        # H, through exactly two of p1..p3

    def check(self, c: CellComplex) -> List[str]:
        """Incidences of the witness that fail in ``c`` (empty when sound)."""
        bad = []
        L1, L2 = self.lines
        x, y, z = self.first
        u, v, w = self.second
        on = lambda p, L: L in c.vertices[p]
        for p in self.first:
            if not on(p, L1) or on(p, L2):
                bad.append(f"vertex {p} not on L1 only")
        for p in self.second:
            if not on(p, L2) or on(p, L1):
                bad.append(f"vertex {p} not on L2 only")
        pairs = [(x, v), (y, u), (x, w), (z, u), (z, v), (y, w)]
        for (a, b), L in zip(pairs, self.connecting):
            if not (on(a, L) and on(b, L)):
                bad.append(f"line {L} misses {a} or {b}")
        for k, p in enumerate(self.cross):
            if not (on(p, self.connecting[2 * k]) and on(p, self.connecting[2 * k + 1])):
                bad.append(f"cross point {p} misplaced")
        if len(set(self.cross)) != 3:
            bad.append("cross points not distinct")
        if sum(on(p, self.violating_line) for p in self.cross) != 2:
            bad.append("violating line does not hold exactly two cross points")
        return bad


def pappus_obstruction(w: AllowableSequence,
                       c: Optional[CellComplex] = None) -> Optional[PappusWitness]:
    """First Pappus configuration whose three cross points are not collinear, or None.

    Pappus' theorem forces p1, p2, p3 onto one line in any straight-line
    realization, so a line holding exactly two of them certifies that ``w``
    is not stretchable.
    """
    c = c or cell_complex(w)
    n = c.n
    verts = c.vertices
    through: Dict[Tuple[int, int], Optional[int]] = {}

    def line(p, q):
        key = (p, q) if p < q else (q, p)
        if key not in through:
            common = verts[p] & verts[q]
            through[key] = next(iter(common)) if len(common) == 1 else None
        return through[key]

    for L1 in range(1, n + 1):
        for L2 in range(L1 + 1, n + 1):
            corner = c.meet(L1, L2)
            P = [p for p in c.line_vertices[L1] if p != corner]
            Q = [q for q in c.line_vertices[L2] if q != corner]
            if len(P) < 3 or len(Q) < 3:
                continue
            P.sort()
            Q.sort()
            for x, y, z in combinations(P, 3):
                for u, v, ww in permutations(Q, 3):
                    xv = line(x, v)
                    yu = line(y, u)
                    xw = line(x, ww)
                    zu = line(z, u)
                    zv = line(z, v)
                    yw = line(y, ww)
                    if None in (xv, yu, xw, zu, zv, yw):
                        continue
                    p1, p2, p3 = c.meet(xv, yu), c.meet(xw, zu), c.meet(zv, yw)
                    if len({p1, p2, p3}) < 3 or {p1, p2, p3} & {x, y, z, u, v, ww}:
                        continue
                    for a, b, other in ((p1, p2, p3), (p1, p3, p2), (p2, p3, p1)):
                        H = line(a, b)
                        if H is not None and H not in verts[other]:
                            return PappusWitness((L1, L2), (x, y, z), (u, v, ww),
                                                 (xv, yu, xw, zu, zv, yw), (p1, p2, p3), H)
    return None


# -- deletion and containment ---------------------------------------------------------

def delete_line(w: AllowableSequence, label: int) -> AllowableSequence:
    """The wiring with wire ``label`` removed (positions renumbered)."""
    n = w.n
    if not 1 <= label <= n:
        raise WiringError(f"no wire {label} in a wiring with {n} wires")
    if n < 3:
        raise WiringError("need at least 3 wires to delete one")
    p = label  # the wire starts at position == label
    out = []
    for a, b in w.moves:
        if a <= p <= b:
            if b - a >= 2:
                out.append(MovePair(a, b - 1))
            p = a + b - p
        elif p < a:
            out.append(MovePair(a - 1, b - 1))
        else:
            out.append(MovePair(a, b))
    return AllowableSequence(n - 1, tuple(out))


def delete_lines(w: AllowableSequence, labels: Iterable[int]) -> AllowableSequence:
    # delete from the top so the remaining labels keep their meaning
    for lab in sorted(set(labels), reverse=True):
        w = delete_line(w, lab)
    return w


def relabel_after_deletion(label: int, deleted: int) -> int:
    return label - 1 if label > deleted else label


@dataclass(frozen=True)
class HasseEdge:
    upper: Tuple[int, str]   # (n, certificate)
    lower: Tuple[int, str]

    def to_text(self) -> str:
        return f"{self.upper[0]}:{self.upper[1]} -> {self.lower[0]}:{self.lower[1]}"


def containments(records: Sequence[ArrangementRecord]) -> List[Tuple[Tuple[int, str], Tuple[int, str]]]:
    """All pairs (A, B) where deleting some lines of A leaves an arrangement isomorphic to B."""
    known: Dict[Tuple[int, str], ArrangementRecord] = {(r.wiring.n, r.certificate): r for r in records}
    sizes = sorted({n for n, _ in known})
    by_n: Dict[int, set] = {n: {cert for m, cert in known if m == n} for n in sizes}
    pairs = set()
    for (n, cert), rec in sorted(known.items()):
        for m in sizes:
            if m >= n:
                continue
            k = n - m
            targets = by_n[m]
            seen_here = set()
            for subset in combinations(range(1, n + 1), k):
                sub = delete_lines(rec.wiring, subset)
                cc = cell_complex(sub)
                if not is_simplicial(cc):
                    continue
                cert_b, _ = certificate(sub, cc)
                if cert_b in targets and cert_b not in seen_here:
                    seen_here.add(cert_b)
                    pairs.add(((n, cert), (m, cert_b)))
                if seen_here == targets:
                    break
    return sorted(pairs)


def hasse_edges(records: Sequence[ArrangementRecord]) -> List[HasseEdge]:
    """Covering edges (transitive reduction) of the containment order on ``records``."""
    pairs = containments(records)
    above: Dict[Tuple[int, str], set] = {}
    for a, b in pairs:
        above.setdefault(a, set()).add(b)
    out = []
    for a, b in pairs:
        middle = [c for c in above.get(a, ()) if c != b and b in above.get(c, ())]
        if not middle:
            out.append(HasseEdge(a, b))
    return out


# -- numeric realization ----------------------------------------------------------------

@dataclass
class RealizeOptions:
    restarts: int = 20
    seed: int = 0
    tol: float = 1e-18              # on the sum of squared normalized incidence residuals
    max_denominator: int = 10 ** 6
    precision_digits: int = 60      # mpmath polish when no rational point is found
    allow_inexact: bool = True
    rational_attempts: int = 2      # float solutions tried for a rational point before polishing


@dataclass
class Realization:
    lines: List[Tuple]              # Fractions when exact, mpf otherwise
    gauge: Tuple[int, int, int, int]
    exact: bool
    residual: float = 0.0
    notes: Dict[str, str] = field(default_factory=dict)

    def to_text(self) -> str:
        rows = [f"gauge {' '.join(map(str, self.gauge))} exact={int(self.exact)}"]
        for i, l in enumerate(self.lines, start=1):
            rows.append(f"{i}: " + " ".join(str(x) for x in l))
        return "\n".join(rows)


def _gauge_lines(c: CellComplex) -> Optional[Tuple[int, int, int, int]]:
    """Four lines no three of which pass through one vertex."""
    n = c.n
    for quad in combinations(range(1, n + 1), 4):
        if all(len(v & set(quad)) <= 2 for v in c.vertices):
            return quad
    return None


_PINNED = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 1.0, 1.0))


class _System:
    """Incidence equations: line . point = 0 for every vertex of multiplicity >= 3."""

    def __init__(self, c: CellComplex, gauge, charted: bool = False):
        self.charted = charted  # True: one coordinate per object is held at 1, no norm rows
        self.n = c.n
        self.gauge = gauge
        self.free = [l for l in range(1, c.n + 1) if l not in gauge]
        self.big = [sorted(v) for v in c.vertices if len(v) >= 3]
        self.nvar = 3 * len(self.free) + 3 * len(self.big)

    def unpack(self, x, fixed_lines=None):
        lines = {}
        for k, lab in enumerate(self.gauge):
            lines[lab] = _PINNED[k]
        for k, lab in enumerate(self.free):
            lines[lab] = x[3 * k:3 * k + 3]
        off = 3 * len(self.free)
        pts = [x[off + 3 * k: off + 3 * k + 3] for k in range(len(self.big))]
        return lines, pts

    def residuals(self, x):
        lines, pts = self.unpack(x)
        r = []
        for labels, p in zip(self.big, pts):
            for lab in labels:
                l = lines[lab]
                r.append(l[0] * p[0] + l[1] * p[1] + l[2] * p[2])
            if not self.charted:
                r.append(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1)
        if not self.charted:
            for lab in self.free:
                l = lines[lab]
                r.append(l[0] * l[0] + l[1] * l[1] + l[2] * l[2] - 1)
        return r

    def to_chart(self, x: np.ndarray):
        """Rescale every object so its largest coordinate is 1; returns (values, fixed mask)."""
        y = np.array(x, dtype=float)
        mask = np.zeros(self.nvar, dtype=bool)
        for k in range(self.nvar // 3):
            blk = y[3 * k:3 * k + 3]
            j = int(np.argmax(np.abs(blk)))
            y[3 * k:3 * k + 3] = blk / blk[j]
            mask[3 * k + j] = True
        return y, mask


def _solve(sys_: _System, x0: np.ndarray, mask: np.ndarray, values: np.ndarray):
    from scipy.optimize import least_squares

    def fun(y):
        x = values.copy()
        x[~mask] = y
        return np.array(sys_.residuals(x))

    if mask.all():
        return values.copy(), float(np.sum(fun(np.zeros(0)) ** 2))
    res = least_squares(fun, x0[~mask], xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=4000)
    x = values.copy()
    x[~mask] = res.x
    return x, float(np.sum(res.fun ** 2))


def _lines_exact(sys_: _System, x) -> List[Tuple[Fraction, Fraction, Fraction]]:
    lines, _ = sys_.unpack(x)
    return [tuple(Fraction(v) for v in lines[l]) for l in range(1, sys_.n + 1)]


def _same_class(lines, target_cert: str, tol=None) -> bool:
    try:
        w = wiring_from_lines(lines, tol=tol)
        cc = cell_complex(w)
    except (DegenerateLinesError, WiringError):
        return False
    if not is_simplicial(cc):
        return False
    return certificate(w, cc)[0] == target_cert


def _rationalize(sys_: _System, x: np.ndarray, opts: RealizeOptions, cert: str):
    """Pin free line coordinates one at a time to nearby rationals, re-solving in between."""
    chart = _System.__new__(_System)
    chart.__dict__.update(sys_.__dict__)
    chart.charted = True
    values, mask = chart.to_chart(x)
    nline = 3 * len(chart.free)
    for i in range(nline):
        if mask[i]:
            continue
        for den in (1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 100, 1000, opts.max_denominator):
            q = Fraction(values[i]).limit_denominator(den)
            trial_vals = values.copy()
            trial_vals[i] = float(q)
            trial_mask = mask.copy()
            trial_mask[i] = True
            y, err = _solve(chart, values, trial_mask, trial_vals)
            if err < opts.tol:
                values, mask = y, trial_mask
                break
        else:
            return None
    lines = {}
    for k, lab in enumerate(chart.gauge):
        lines[lab] = tuple(Fraction(int(v)) for v in _PINNED[k])
    for k, lab in enumerate(chart.free):
        lines[lab] = tuple(Fraction(values[3 * k + j]).limit_denominator(opts.max_denominator)
                           for j in range(3))
    out = [lines[l] for l in range(1, chart.n + 1)]
    return out if _same_class(out, cert) else None


def _polish(sys_: _System, x: np.ndarray, digits: int):
    """Gauss-Newton refinement in high precision; returns (mp vector, residual)."""
    with mp.workdps(digits + 20):
        v = mp.matrix([mp.mpf(float(t)) for t in x])
        for _ in range(60):
            r = mp.matrix(sys_.residuals(list(v)))
            err = sum(t * t for t in r)
            if err < mp.mpf(10) ** (-2 * digits):
                break
            J = mp.matrix(len(r), sys_.nvar)
            h = mp.mpf(10) ** (-(digits + 10))
            base = list(v)
            for j in range(sys_.nvar):
                bumped = base[:]
                bumped[j] += h
                rj = sys_.residuals(bumped)
                for i in range(len(r)):
                    J[i, j] = (rj[i] - r[i]) / h
            JT = J.T
            A = JT * J
            for j in range(sys_.nvar):
                A[j, j] += mp.mpf(10) ** (-(digits))
            step = mp.lu_solve(A, JT * r)
            v = v - step
        r = sys_.residuals(list(v))
        return list(v), sum(t * t for t in r)


def realize_numeric(w: AllowableSequence, opts: Optional[RealizeOptions] = None) -> Optional[Realization]:
    """Search for straight lines realizing ``w``; None means inconclusive.

    Success is only reported after the wiring of the found lines has been
    re-extracted and shown isomorphic to ``w``: exactly over the rationals
    when a rational point is found, otherwise at high precision with
    ``exact=False``.
    """
    opts = opts or RealizeOptions()
    c = cell_complex(w)
    if not is_simplicial(c):
        raise WiringError("realization search needs a simplicial wiring")
    cert = certificate(w, c)[0]
    gauge = _gauge_lines(c)
    if gauge is None:
        return None
    sys_ = _System(c, gauge)
    rng = np.random.default_rng(opts.seed)
    nomask = np.zeros(sys_.nvar, dtype=bool)
    float_hits = 0
    for attempt in range(opts.restarts):
        x0 = rng.normal(size=sys_.nvar)
        x, err = _solve(sys_, x0, nomask, x0.copy())
        if err > 1e-20:
            continue
        lines, _ = sys_.unpack(x)
        float_lines = [tuple(lines[l]) for l in range(1, sys_.n + 1)]
        if not _same_class(float_lines, cert, tol=1e-9):
            continue
        exact = _rationalize(sys_, x, opts, cert)
        if exact is not None:
            log.info("realized n=%d exactly after %d restarts", w.n, attempt + 1)
            return Realization(exact, gauge, True, 0.0, {"restart": str(attempt)})
        if not opts.allow_inexact:
            continue
        float_hits += 1
        if float_hits < opts.rational_attempts:
            continue
        v, err_mp = _polish(sys_, x, opts.precision_digits)
        with mp.workdps(opts.precision_digits + 20):
            tol = mp.mpf(10) ** (-(opts.precision_digits // 2))
            plines, _ = sys_.unpack(v)
            mp_lines = [tuple(mp.mpf(t) for t in plines[l]) for l in range(1, sys_.n + 1)]
            ok = err_mp < tol ** 2 and _same_class(mp_lines, cert, tol=tol)
        if ok:
            log.info("realized n=%d to %d digits after %d restarts", w.n, opts.precision_digits,
                     attempt + 1)
            return Realization(mp_lines, gauge, False, float(err_mp),
                               {"restart": str(attempt), "digits": str(opts.precision_digits)})
    return None
