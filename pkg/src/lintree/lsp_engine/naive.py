"""Slow, independent enumeration of superposition lists.

Used only as a cross-check for the column search.  Star lists come from a
plain scan over alternating templates filtered by ``validate_gstar``, and
rows are merged into the table one at a time: each cell of the new row
either joins an existing column or opens a fresh column, keeping row order.
A column is abstracted to ``(sum, last_entry_is_non_upward)`` which is all
the column rule needs when rows arrive top to bottom.
"""

from __future__ import annotations

from itertools import product

from ..gstar_lists import UpwardList, validate_gstar
from ..tree_model import LinearTreeSpec
from .table import row_kinds

__all__ = ["naive_star_lists", "naive_enumerate"]


def naive_star_lists(star) -> list[tuple]:
    n = star.vertex_count
    found = []
    # r upward slots between r + 1 simple non-upward entries
    for r in range(0, n):
        if r + 1 > n:
            break
        upward_total = n - (r + 1)
        for ups in product(range(upward_total + 1), repeat=r):
            if sum(ups) != upward_total:
                continue
            lst = UpwardList.from_pattern(ups)
            if validate_gstar(lst, star)[0]:
                found.append(lst.entries)
    return found


def _merge(columns: tuple, cells: tuple) -> set:
    """All ways to lay ``cells`` over ``columns`` (a new row below them)."""
    out = set()

    def place(ci, pos, cols):
        if ci == len(cells):
            out.add(tuple(cols))
            return
        m, up = cells[ci]
        for j in range(pos, len(cols) + 1):
            # open a new column just before index j
            fresh = cols[:j] + [(m, not up)] + cols[j:]
            place(ci + 1, j + 1, fresh)
            if j < len(cols):
                s, pending = cols[j]
                if up:
                    joined = (s + m, False)
                elif not pending:
                    joined = (s + m, True)
                else:
                    continue
                place(ci + 1, j + 1, cols[:j] + [joined] + cols[j + 1:])

    place(0, 0, list(columns))
    return out


def naive_enumerate(tree: LinearTreeSpec) -> list[tuple[int, ...]]:
    rows = []
    for kind, idx in row_kinds(tree):
        if kind == "star":
            rows.append(naive_star_lists(tree.stars[idx]))
        else:
            rows.append([((1, False),) * tree.paths[idx]])
    layouts = {()}
    for options in rows:
        nxt = set()
        for cols in layouts:
            for cells in options:
                nxt |= _merge(cols, cells)
        layouts = nxt
    return sorted({tuple(s for s, _ in cols if s > 0) for cols in layouts})
