"""Tables with exactly d(T) distinct eigenvalues.

Every star is first cut down to its two longest arms ``p >= q`` and given
its optimal list ``1 ^1 1 ... ^1 1 ^0 1 ... ^0 1`` (``q`` copies of ``^1``,
``p - q`` copies of ``^0``); a path with ``s`` vertices contributes ``s``
ones.  These rows are superposed around the row(s) that carry a longest
path of the tree:

* case 1, the longest path lies inside one star ``R``.  ``R`` occupies
  columns ``0..2p``; the other rows are laid greedily, leftmost first,
  moving outward from ``R``.
* case 2, the longest path runs from star ``R`` through the connecting
  path into star ``S``.  The path ones open fresh columns to the left of
  ``R`` and ``S`` starts one column to the right of ``R``, so the
  non-upward entries of ``S`` sit under the upward entries of ``R``.

Finally the deleted arms come back by raising upward entries, which never
turns a zero column into a nonzero one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..partitions import dual
from ..tree_model import LinearTreeSpec, diameter
from .table import LspTable, row_kinds, validate_table

__all__ = ["optimal_list", "diminimal_list", "DiminimalResult"]


def optimal_list(p: int, q: int) -> tuple:
    ups = [1] * q + [0] * (p - q)
    cells = [(1, False)]
    for u in ups:
        cells += [(u, True), (1, False)]
    return tuple(cells)


@dataclass(frozen=True)
class DiminimalResult:
    table: LspTable
    method: str  # "case1", "case2" or "search"
    diameter: int


def _reduced_rows(tree: LinearTreeSpec) -> list[tuple]:
    rows = []
    for kind, idx in row_kinds(tree):
        if kind == "star":
            arms = tree.stars[idx].arms
            p, q = arms[0], (arms[1] if len(arms) > 1 else 0)
            rows.append(optimal_list(p, q))
        else:
            rows.append(((1, False),) * tree.paths[idx])
    return rows


def _greedy(rows, fixed: dict[int, dict[int, tuple]], order_down, order_up):
    """Lay out ``rows`` around the already fixed ones.

    ``fixed`` maps row index -> {column: cell}.  Rows in ``order_down``
    are placed against the lowest present cell of each column, rows in
    ``order_up`` against the highest.  Returns row -> {column: cell} or
    None if some column would break the alternation rule.
    """
    placed = {r: dict(c) for r, c in fixed.items()}

    def ncols():
        return max((max(c) + 1 for c in placed.values() if c), default=0)

    def profile(direction):
        # state of each column as seen from below (direction=+1) or above (-1)
        prof = {}
        keys = sorted(placed, reverse=(direction == 1))
        for col in range(ncols()):
            for r in keys:
                if col in placed[r]:
                    prof[col] = "U" if placed[r][col][1] else "N"
                    break
        return prof

    for order, direction in ((order_down, 1), (order_up, -1)):
        for r in order:
            prof = profile(direction)
            col, mine = 0, {}
            for cell in rows[r]:
                while True:
                    state = prof.get(col)
                    if cell[1] or state != "N":
                        break
                    col += 1
                mine[col] = cell
                col += 1
            placed[r] = mine
    return placed


def _to_table(tree, placed, nrows) -> LspTable:
    used = sorted({c for cols in placed.values() for c in cols})
    index = {c: i for i, c in enumerate(used)}
    rows = []
    for r in range(nrows):
        row = [None] * len(used)
        for c, cell in placed.get(r, {}).items():
            row[index[c]] = cell
        rows.append(tuple(row))
    return LspTable(tree, tuple(rows))


def _case1(tree, rows, star: int):
    R = 2 * star
    fixed = {R: {c: cell for c, cell in enumerate(rows[R])}}
    down = list(range(R + 1, len(rows)))
    up = list(range(R - 1, -1, -1))
    return _to_table(tree, _greedy(rows, fixed, down, up), len(rows))


def _case2(tree, rows, a: int, b: int):
    """Stars ``a < b`` joined by a single connecting path (no stars between)."""
    out = []
    for R, S in ((2 * a, 2 * b), (2 * b, 2 * a)):
        P = (R + S) // 2
        s = len(rows[P])
        fixed = {
            R: {s + c: cell for c, cell in enumerate(rows[R])},
            P: {c: cell for c, cell in enumerate(rows[P])},
            S: {s + 1 + c: cell for c, cell in enumerate(rows[S])},
        }
        lo, hi = min(R, S), max(R, S)
        down = list(range(hi + 1, len(rows)))
        up = list(range(lo - 1, -1, -1))
        out.append(_to_table(tree, _greedy(rows, fixed, down, up), len(rows)))
    return out


def _search(tree, rows) -> LspTable:
    """Fewest nonzero columns over all placements of the fixed reduced rows."""
    nrows = len(rows)

    def moves(state):
        res = []
        cells = [None] * nrows

        def rec(r, pending, total, adv, nxt):
            if r == nrows:
                if adv:
                    res.append((tuple(nxt), total, tuple(cells)))
                return
            cells[r] = None
            rec(r + 1, pending, total, adv, nxt)
            if state[r] < len(rows[r]):
                cell = rows[r][state[r]]
                if cell[1] or not pending:
                    cells[r] = cell
                    rec(r + 1, not cell[1], total + cell[0], True, nxt[:r] + [state[r] + 1] + nxt[r + 1:])
                cells[r] = None

        rec(0, False, 0, False, list(state))
        return res

    final = tuple(len(r) for r in rows)

    @lru_cache(maxsize=None)
    def best(state):
        if state == final:
            return (0, None)
        top = None
        for ns, total, cells in moves(state):
            cost = best(ns)[0] + (1 if total else 0)
            if top is None or cost < top[0]:
                top = (cost, (ns, cells))
        return top

    columns, state = [], tuple(0 for _ in rows)
    while state != final:
        ns, cells = best(state)[1]
        columns.append(cells)
        state = ns
    return LspTable(tree, tuple(tuple(col[r] for col in columns) for r in range(nrows)))


def _restore_arms(tree: LinearTreeSpec, table: LspTable) -> LspTable:
    rows = [list(r) for r in table.rows]
    for i, star in enumerate(tree.stars):
        d = dual(star.arms).parts
        t = 0
        row = rows[2 * i]
        for c, cell in enumerate(row):
            if cell is not None and cell[1]:
                row[c] = (d[t] - 1, True)
                t += 1
    return LspTable(tree, tuple(tuple(r) for r in rows))


def _candidates(tree: LinearTreeSpec, rows, d: int):
    k = len(tree.stars)
    for i, star in enumerate(tree.stars):
        a = star.arms
        if a[0] + (a[1] if len(a) > 1 else 0) + 1 == d:
            yield "case1", _case1(tree, rows, i)
    for i in range(k - 1):
        j = i + 1
        if tree.stars[i].arms[0] + tree.stars[j].arms[0] + tree.paths[i] + 2 == d:
            for t in _case2(tree, rows, i, j):
                yield "case2", t


def diminimal_list(tree: LinearTreeSpec) -> DiminimalResult:
    """A valid table whose nonzero column sums number exactly ``diameter(tree)``."""
    d = diameter(tree)
    rows = _reduced_rows(tree)
    for method, table in _candidates(tree, rows, d):
        full = _restore_arms(tree, table)
        if len(full.multiplicities) == d and validate_table(full)[0]:
            return DiminimalResult(full, method, d)
    full = _restore_arms(tree, _search(tree, rows))
    ok, why = validate_table(full)
    if not ok or len(full.multiplicities) != d:
        from .corollaries import TheoremViolation

        raise TheoremViolation(
            f"{tree}: best superposition of optimal lists has {len(full.multiplicities)} "
            f"distinct eigenvalues, diameter is {d} ({why or 'valid'})"
        )
    return DiminimalResult(full, "search", d)
