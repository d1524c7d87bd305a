"""Depth-first enumeration of simplicial wirings.

The search starts from a *beginning* (line 1 passes all its vertices first),
keeps the junction sequence in chained/descending normal form and prunes with
the simpliciality obstructions.  ``mode="reference"`` drops every pruning rule
that is not a direct consequence of cell counting; it is slower but serves as
an independent check of the pruned search.
"""
from __future__ import annotations

import json
import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from .cells import cell_complex, is_simplicial
from .iso import ArrangementRecord, Deduplicator
from .wiring import AllowableSequence, MovePair, WiringFragment, fragment_from_moves

log = logging.getLogger(__name__)

NAIVE_MAX_N = 7


class ResourceGuardError(RuntimeError):
    pass


@dataclass(frozen=True)
class Beginning:
    parts: Tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.parts) + 1

    def moves(self) -> List[MovePair]:
        out, a = [], 1
        for p in self.parts:
            out.append(MovePair(a, a + p))
            a += p
        return out

    def junction_cap(self) -> int:
        return max(self.parts) + 1

    def fragment(self) -> WiringFragment:
        return fragment_from_moves(self.n, self.moves())


@dataclass
class EnumerationOptions:
    include_near_pencils: bool = False
    use_simpobstr7: bool = False
    worker_count: int = 1
    junction_cap_override: Optional[int] = None
    mode: str = "pruned"                      # "pruned" | "reference"
    disabled_checks: Tuple[str, ...] = ()    # obstruction ids to skip, for differential tests

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.mode not in ("pruned", "reference"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SearchStats:
    nodes: int = 0
    emitted: int = 0
    prunes: Counter = field(default_factory=Counter)

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.emitted += other.emitted
        self.prunes.update(other.prunes)


# -- beginnings -----------------------------------------------------------------

def compositions(total: int) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def dihedral_images(parts: Sequence[int]) -> List[Tuple[int, ...]]:
    p = tuple(parts)
    k = len(p)
    imgs = set()
    for r in range(k):
        rot = p[r:] + p[:r]
        imgs.add(rot)
        imgs.add(rot[::-1])
    return sorted(imgs)


def representative(parts: Sequence[int]) -> Tuple[int, ...]:
    imgs = dihedral_images(parts)
    both = [q for q in imgs if q[0] == 1 and q[-1] == 1]
    if both:
        return max(both)
    one = [q for q in imgs if q[0] == 1 or q[-1] == 1]
    if one:
        return max(one)
    return max(imgs)


def beginnings(n: int) -> List[Beginning]:
    if n < 3:
        raise ValueError("beginnings need n >= 3")
    seen = set()
    out = []
    for comp in compositions(n - 1):
        orbit = min(dihedral_images(comp))
        if orbit in seen:
            continue
        seen.add(orbit)
        out.append(Beginning(representative(comp)))
    return sorted(out, key=lambda b: (len(b.parts), b.parts))


def all_beginnings(n: int) -> List[Beginning]:
    """Every composition, without the dihedral reduction (for soundness tests)."""
    return [Beginning(c) for c in compositions(n - 1)]


# -- obstructions ---------------------------------------------------------------

def check_obstructions(f: WiringFragment, use_simpobstr7: bool = False,
                       disabled: Sequence[str] = ()) -> Optional[str]:
    """Identifier of the first obstruction that fires after the last junction, or None.

    Only open fragments (``d < u``) are tested; closed ones are final wirings.
    """
    if not f.moves or f.d >= f.u:
        return None
    n = f.n
    sig, s, v = f.sigma, f.s, f.v
    a, b = f.moves[-1]
    d, u = f.d, f.u

    def on(name):
        return name not in disabled

    # simpobstr_1
    if on("1.1") and a >= 2 and sig[a] < sig[a - 1] and (sig[a - 1] != n + 2 - a or sig[a] != n + 1 - a):
        return "1.1"
    if on("1.2") and b < n and sig[b + 1] < sig[b] and (sig[b] != n + 1 - b or sig[b + 1] != n - b):
        return "1.2"
    # simpobstr_2
    if on("2.1"):
        for j in range(a, min(b, n - 1) + 1):
            if sig[j] == sig[j + 1] + 1 and sig[j] != n + 1 - j and s[sig[j + 1]] == 2:
                return "2.1"
    if on("2.2"):
        for j in range(a + 1, min(b, n - 1) + 1):
            if (sig[j] == sig[j + 1] + 1 and sig[j - 1] != sig[j] + 1
                    and s[sig[j]] == 2 and s[sig[j + 1]] == 2):
                return "2.2"
    if on("2.3"):
        for j in range(a, min(b - 1, n - 2) + 1):
            x = sig[j] - 2
            if (sig[j] == sig[j + 1] + 1 and sig[j + 2] != x
                    and x >= 1 and s[x] == 2 and s[sig[j + 1]] == 2):
                return "2.3"
    # simpobstr_5 (gap n is gap 0)
    if on("5.1") and s[(n - u) % n] + v[u % n] >= 3:
        return "5.1"
    if on("5.2") and d > 1 and s[(n + 1 - d) % n] + v[d - 1] >= 3:
        return "5.2"
    # simpobstr_4
    if on("4.1") and b < n and sig[b] > sig[b + 1] and b <= u:
        return "4.1"
    if on("4.2") and d < a <= u and sig[a - 1] > sig[a]:
        sa = sig[a]
        if (s[(n + 1 - a) % n] != 1 or sig[d] < sa
                or (a >= 3 and sig[a - 2] < sig[a - 1])
                or any(sig[j] > sa for j in range(b + 1, u + 1))):
            return "4.2"
    if use_simpobstr7:
        if on("7.1") and a == d + 1 and sig[d + 1] == n - 1 - d:
            return "7.1"
        if on("7.2") and u > 1 and sig[u] == n + 2 - u and sig[u - 1] == n + 3 - u:
            return "7.2"
        if on("7.3") and d <= n - 1 and sig[d] == n - d and sig[d + 1] == n - 1 - d:
            return "7.3"
        if (on("7.4") and sig[1] == 2 and b + 2 < n and sig[b] == 3
                and sig[b + 1] == 4 and sig[b + 2] == n):
            return "7.4"
    return None


def joinends_ok(f: WiringFragment) -> bool:
    n, v, s = f.n, f.v, f.s
    return all(v[g] + s[(n - g) % n] == 3 for g in range(n))


def _touch_ok(v: List[int], gap: int) -> bool:
    # a touch adds one vertex; gap 0 has no opening vertex so it can take three touches
    return v[gap] < 3 if gap == 0 else v[gap] < 2


def _ordinary_pair(f: WiringFragment, a: int, b: int) -> bool:
    """A size-2 junction whose wires' previous vertices include an ordinary one."""
    return b == a + 1 and (f.eps[a] == 2 or f.eps[b] == 2)


# -- simplicial search ---------------------------------------------------------

class _Search:
    def __init__(self, f: WiringFragment, cap: int, opts: EnumerationOptions,
                 emit: Callable[[AllowableSequence], None]):
        self.f = f
        self.cap = cap
        self.opts = opts
        self.emit = emit
        self.stats = SearchStats()
        self.cut_pencils = not opts.include_near_pencils
        self.disabled = tuple(opts.disabled_checks)

    def run(self) -> SearchStats:
        if self.opts.mode == "pruned":
            self._pruned()
        else:
            self._reference()
        return self.stats

    def _emit_if_closed(self) -> bool:
        f = self.f
        if f.d < f.u:
            return False
        if joinends_ok(f):
            self.stats.emitted += 1
            self.emit(f.to_sequence())
        else:
            self.stats.prunes["joinends"] += 1
        return True

    def _pruned(self) -> None:
        f = self.f
        st = self.stats
        st.nodes += 1
        if self._emit_if_closed():
            return
        hit = check_obstructions(f, self.opts.use_simpobstr7, self.disabled)
        if hit:
            st.prunes[hit] += 1
            return
        n, sig, v = f.n, f.sigma, f.v
        cap = self.cap
        a_m, b_m = f.moves[-1]
        d, u = f.d, f.u
        if b_m <= u and v[b_m - 1] <= 1:
            i = b_m
            while i < n and sig[i] < sig[i + 1]:
                i += 1
            if b_m < i and i - b_m < cap:
                if not _touch_ok(v, i % n):
                    st.prunes["all2"] += 1
                elif self.cut_pencils and _ordinary_pair(f, b_m, i):
                    st.prunes["twosquares"] += 1
                else:
                    f._push_unchecked(b_m, i)
                    self._pruned()
                    f.pop()
        if d >= a_m:
            return
        for i in range(d, a_m):
            if not _touch_ok(v, i - 1):
                continue
            top = min(a_m, i + cap - 1)
            j = i
            while j < top and sig[j] < sig[j + 1]:
                j += 1
                if not _touch_ok(v, j % n):
                    continue
                if self.cut_pencils and _ordinary_pair(f, i, j):
                    st.prunes["twosquares"] += 1
                    continue
                f._push_unchecked(i, j)
                self._pruned()
                f.pop()

    def _reference(self) -> None:
        f = self.f
        self.stats.nodes += 1
        if self._emit_if_closed():
            return
        n, sig, v = f.n, f.sigma, f.v
        cap = self.cap
        a_m, b_m = f.moves[-1]
        cands = []
        j = b_m
        while j < n and sig[j] < sig[j + 1] and j + 1 - b_m < cap:
            j += 1
            cands.append((b_m, j))
        for i in range(1, a_m):
            j = i
            while j < a_m and sig[j] < sig[j + 1] and j + 1 - i < cap:
                j += 1
                cands.append((i, j))
        for i, j in cands:
            lo, hi = i - 1, j % n
            if lo == hi == 0:
                if v[0] > 1:
                    continue
            elif not (_touch_ok(v, lo) and _touch_ok(v, hi)):
                continue
            if any(v[g] != 2 for g in range(i, j)):
                continue
            if self.cut_pencils and _ordinary_pair(f, i, j):
                continue
            f._push_unchecked(i, j)
            self._reference()
            f.pop()


def enumerate_from(f: WiringFragment, cap: int, opts: Optional[EnumerationOptions] = None,
                   stats: Optional[SearchStats] = None) -> List[AllowableSequence]:
    """All simplicial completions the search reaches from fragment ``f``."""
    opts = opts or EnumerationOptions()
    if cap < 2:
        raise ValueError("junction cap must be >= 2")
    out: List[AllowableSequence] = []
    work = f.copy()
    st = _Search(work, cap, opts, out.append).run()
    if stats is not None:
        stats.merge(st)
    return out


# -- near-pencils ---------------------------------------------------------------

def is_near_pencil(w: AllowableSequence) -> bool:
    n = w.n
    if n == 3:
        return w.m == 3 and all(b - a == 1 for a, b in w.moves)
    big = [k for k, (a, b) in enumerate(w.moves) if b - a + 1 == n - 1]
    return len(big) == 1 and w.m == n


def near_pencil(n: int) -> AllowableSequence:
    """Lines 1..n-1 through one point, line n avoiding it."""
    if n < 3:
        raise ValueError("near-pencils need n >= 3")
    moves = [MovePair(1, 2)] + [MovePair(k, k + 1) for k in range(2, n)]
    moves.append(MovePair(1, n - 1))
    return AllowableSequence(n, tuple(moves))


# -- drivers --------------------------------------------------------------------

def _run_beginning(args) -> Tuple[Deduplicator, SearchStats, Tuple[int, ...]]:
    parts, opts = args
    beg = Beginning(parts)
    cap = opts.junction_cap_override or beg.junction_cap()
    dd = Deduplicator()
    stats = SearchStats()

    def emit(w: AllowableSequence) -> None:
        if is_near_pencil(w):
            if opts.include_near_pencils:
                dd.add(w, near_pencil=True)
        else:
            dd.add(w)

    search = _Search(beg.fragment(), cap, opts, emit)
    stats.merge(search.run())
    return dd, stats, parts


def _log_stats(n: int, parts, stats: SearchStats, classes: int) -> None:
    if log.isEnabledFor(logging.INFO):
        log.info(json.dumps({"event": "beginning", "n": n, "parts": list(parts),
                             "nodes": stats.nodes, "emitted": stats.emitted,
                             "classes": classes, "prunes": dict(sorted(stats.prunes.items()))}))


def enumerate_all(n: int, opts: Optional[EnumerationOptions] = None,
                  stats: Optional[SearchStats] = None,
                  begs: Optional[Sequence[Beginning]] = None) -> List[ArrangementRecord]:
    """One record per isomorphism class of simplicial wirings with ``n`` lines."""
    opts = opts or EnumerationOptions()
    if n < 3:
        raise ValueError("n must be >= 3")
    begs = list(begs) if begs is not None else beginnings(n)
    tasks = [(b.parts, opts) for b in begs]
    merged = Deduplicator()
    total = SearchStats()
    if opts.worker_count > 1 and len(tasks) > 1:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(opts.worker_count) as pool:
            results = pool.imap_unordered(_run_beginning, tasks)
            for dd, st, parts in results:
                _log_stats(n, parts, st, len(dd))
                merged.merge(dd)
                total.merge(st)
    else:
        for t in tasks:
            dd, st, parts = _run_beginning(t)
            _log_stats(n, parts, st, len(dd))
            merged.merge(dd)
            total.merge(st)
    if opts.include_near_pencils:
        merged.add(near_pencil(n), near_pencil=True)
    if stats is not None:
        stats.merge(total)
    log.info(json.dumps({"event": "done", "n": n, "nodes": total.nodes,
                         "emitted": total.emitted, "classes": len(merged)}))
    return merged.records()


# -- naive oracles ----------------------------------------------------------------

def _guard(n: int) -> None:
    if n > NAIVE_MAX_N:
        raise ResourceGuardError(f"naive enumeration is limited to n <= {NAIVE_MAX_N}")


def iter_naive(n: int, restricted: bool = False) -> Iterator[AllowableSequence]:
    """Every allowable sequence on ``n`` wires (or only the chained/descending ones)."""
    _guard(n)
    f = WiringFragment(n)

    def rec() -> Iterator[AllowableSequence]:
        if f.is_complete():
            yield f.to_sequence()
            return
        for i, j in list(_extensions(f, restricted)):
            f._push_unchecked(i, j)
            yield from rec()
            f.pop()

    return rec()


def enumerate_naive(n: int, restricted: bool = False) -> List[AllowableSequence]:
    return list(iter_naive(n, restricted))


def naive_simplicial_classes(n: int, restricted: bool = True) -> List[ArrangementRecord]:
    dd = Deduplicator()
    for w in iter_naive(n, restricted):
        if is_simplicial(cell_complex(w)):
            dd.add(w, near_pencil=is_near_pencil(w))
    return dd.records()


def _extensions(f: WiringFragment, restricted: bool) -> Iterator[Tuple[int, int]]:
    """Legal next moves; ``restricted`` keeps only chained or descending ones."""
    n, sig = f.n, f.sigma
    limit = n
    if restricted and f.moves:
        a_m, b_m = f.moves[-1]
        j = b_m
        while j < n and sig[j] < sig[j + 1]:
            j += 1
            yield b_m, j
        limit = a_m
    for i in range(1, limit):
        j = i
        while j < limit and sig[j] < sig[j + 1]:
            j += 1
            yield i, j


def completions_exist(f: WiringFragment, restricted: bool = False,
                      near_pencils: bool = True) -> bool:
    """Whether any completion of ``f`` is simplicial (exhaustive; small n only)."""
    _guard(f.n)
    g = f.copy()

    def rec() -> bool:
        if g.is_complete():
            w = g.to_sequence()
            if not near_pencils and is_near_pencil(w):
                return False
            return is_simplicial(cell_complex(w))
        for i, j in list(_extensions(g, restricted)):
            g._push_unchecked(i, j)
            found = rec()
            g.pop()
            if found:
                return True
        return False

    return rec()


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SIMPARR_JOBS", "1")))
    except ValueError:
        return 1
