"""Wiring diagrams as SVG or plain text; one column per junction."""
from __future__ import annotations

from typing import List, Sequence, Tuple

from .wiring import AllowableSequence, IllegalMoveError, MoveBoundsError

COL = 40   # svg units per junction column
ROW = 20   # svg units between positions
PAD = 30

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _replay(n: int, moves: Sequence[Tuple[int, int]]) -> List[List[int]]:
    """Permutation (position -> label, 1-based with dummy 0) before each move and at the end."""
    sig = list(range(n + 1))
    states = [sig[:]]
    for k, (a, b) in enumerate(moves, start=1):
        if not 1 <= a < b <= n:
            raise MoveBoundsError(f"move {k} ({a},{b}) out of range")
        if any(sig[i] > sig[i + 1] for i in range(a, b)):
            raise IllegalMoveError(f"move {k} ({a},{b}) reverses a non-increasing block")
        sig[a:b + 1] = sig[a:b + 1][::-1]
        states.append(sig[:])
    return states


def wire_paths(n: int, moves: Sequence[Tuple[int, int]]) -> dict:
    """label -> list of (column boundary, position); wires cross only inside move columns."""
    states = _replay(n, moves)
    paths = {lab: [] for lab in range(1, n + 1)}
    for k, sig in enumerate(states):
        for p in range(1, n + 1):
            paths[sig[p]].append((k, p))
    return paths


def render_svg(w: AllowableSequence) -> str:
    n, m = w.n, w.m
    width = 2 * PAD + COL * max(m, 1)
    height = 2 * PAD + ROW * (n - 1)
    y = lambda p: PAD + ROW * (n - p)   # position 1 at the bottom
    x = lambda k: PAD + COL * k
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    for k, (a, b) in enumerate(w.moves):
        cx = x(k) + COL // 2
        out.append(f'<line x1="{cx}" y1="{y(b)}" x2="{cx}" y2="{y(a)}" '
                   f'stroke="#dddddd" stroke-width="1"/>')
    for lab, pts in sorted(wire_paths(n, w.moves).items()):
        coords = " ".join(f"{x(k)},{y(p)}" for k, p in pts)
        colour = _PALETTE[(lab - 1) % len(_PALETTE)]
        out.append(f'<polyline points="{coords}" fill="none" stroke="{colour}" '
                   f'stroke-width="1.5" data-label="{lab}"/>')
        k0, p0 = pts[0]
        out.append(f'<text x="{x(k0) - 8}" y="{y(p0) + 4}" font-size="10" '
                   f'text-anchor="end">{lab}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(w: AllowableSequence) -> str:
    """Rows are positions (top row = position n); a junction column shows ``o`` on its block."""
    n = w.n
    states = _replay(n, w.moves)
    width = len(str(n))
    rows = []
    for p in range(n, 0, -1):
        cells = []
        for k, (a, b) in enumerate(w.moves):
            cells.append("-o-" if a <= p <= b else "---")
        left = str(states[0][p]).rjust(width)
        right = str(states[-1][p]).ljust(width)
        rows.append(f"{left} -{''.join(cells)}- {right}")
        if p > 1:
            gap = []
            for a, b in w.moves:
                gap.append(" | " if a <= p - 1 and p <= b else "   ")
            rows.append(" " * (width + 2) + "".join(gap))
    return "\n".join(rows) + "\n"
