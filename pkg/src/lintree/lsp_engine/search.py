"""Exact column-by-column search over superposition tables.

A table is built one column at a time.  Every row keeps a state: a star
row remembers the prefix of its list placed so far (the prefixes of all
valid lists form a trie), a path row remembers how many of its ones are
placed.  A column transition decides, row by row, whether that row
contributes its next cell or an inserted 0, tracking whether an unmatched
non-upward entry is pending above.  Results are memoized on the row-state
tuple, so the search is exact and runs in time polynomial in the number of
states.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from ..gstar_lists import enumerate_gstar
from ..tree_model import LinearTreeSpec
from .table import LspTable, row_kinds

__all__ = ["TableSearch", "decide_ordered", "decide_unordered", "enumerate_ordered", "DEFAULT_ENUM_CAP"]

DEFAULT_ENUM_CAP = 12


class TableSearch:
    """Row automata and column transitions for one tree."""

    def __init__(self, tree: LinearTreeSpec, star_lists=None):
        self.tree = tree
        self.kinds = row_kinds(tree)
        if star_lists is None:
            star_lists = [
                [l.entries for l in enumerate_gstar(s, cap=s.vertex_count)] for s in tree.stars
            ]
        self.star_lists = star_lists
        self._children = []
        self._terminal = []
        for lists in star_lists:
            children: dict[tuple, set] = {}
            for lst in lists:
                for p in range(len(lst)):
                    children.setdefault(lst[:p], set()).add(lst[p])
            self._children.append({k: sorted(v) for k, v in children.items()})
            self._terminal.append({tuple(l) for l in lists})
        self._trans_cache: dict = {}

    def initial(self):
        return tuple(() if k == "star" else 0 for k, _ in self.kinds)

    def is_final(self, state) -> bool:
        for (kind, idx), st in zip(self.kinds, state):
            if kind == "star":
                if st not in self._terminal[idx]:
                    return False
            elif st != self.tree.paths[idx]:
                return False
        return True

    def _next_cells(self, r, st):
        kind, idx = self.kinds[r]
        if kind == "star":
            return [(c, st + (c,)) for c in self._children[idx].get(st, ())]
        if st < self.tree.paths[idx]:
            return [((1, False), st + 1)]
        return []

    def transitions(self, state):
        """All legal columns from ``state``: list of (new_state, column_sum, cells)."""
        cached = self._trans_cache.get(state)
        if cached is not None:
            return cached
        out = []
        nrows = len(state)
        new_state = list(state)
        cells = [None] * nrows

        def rec(r, pending, total, advanced):
            if r == nrows:
                if advanced:
                    out.append((tuple(new_state), total, tuple(cells)))
                return
            st = state[r]
            new_state[r], cells[r] = st, None
            rec(r + 1, pending, total, advanced)
            for cell, nst in self._next_cells(r, st):
                m, up = cell
                if not up and pending:
                    continue
                new_state[r], cells[r] = nst, cell
                rec(r + 1, not up, total + m, True)
            new_state[r], cells[r] = st, None

        rec(0, False, 0, False)
        self._trans_cache[state] = out
        return out

    def table_from_columns(self, columns) -> LspTable:
        rows = tuple(tuple(col[r] for col in columns) for r in range(len(self.kinds)))
        return LspTable(self.tree, rows)


def _check_target(tree: LinearTreeSpec, L) -> tuple[int, ...]:
    L = tuple(int(a) for a in L)
    if any(a < 1 for a in L):
        raise ValueError(f"multiplicities must be positive, got {L}")
    if sum(L) != tree.vertex_count:
        raise ValueError(f"list sums to {sum(L)} but the tree has {tree.vertex_count} vertices")
    return L


def decide_ordered(tree: LinearTreeSpec, L, search: TableSearch | None = None):
    """Return ``(True, table)`` if some valid table has nonzero column sums ``L``."""
    L = _check_target(tree, L)
    S = search or TableSearch(tree)

    @lru_cache(maxsize=None)
    def ok(state, i):
        if S.is_final(state):
            return (None, None) if i == len(L) else False
        for ns, total, cells in S.transitions(state):
            if total == 0:
                nxt = i
            elif i < len(L) and total == L[i]:
                nxt = i + 1
            else:
                continue
            if ok(ns, nxt) is not False:
                return (ns, nxt, cells)
        return False

    start = S.initial()
    if ok(start, 0) is False:
        return False, None
    columns, state, i = [], start, 0
    while not S.is_final(state):
        ns, nxt, cells = ok(state, i)
        columns.append(cells)
        state, i = ns, nxt
    return True, S.table_from_columns(columns)


def decide_unordered(tree: LinearTreeSpec, multiset, search: TableSearch | None = None):
    """Try every ordering at once: the DP consumes a multiset instead of a sequence."""
    ms = _check_target(tree, multiset)
    if tree.vertex_count > 1 and Counter(ms)[1] < 2:
        # the extreme eigenvalues are always simple
        return False, None
    S = search or TableSearch(tree)

    @lru_cache(maxsize=None)
    def ok(state, remaining):
        if S.is_final(state):
            return (None, None, None) if not remaining else False
        for ns, total, cells in S.transitions(state):
            if total == 0:
                rest = remaining
            elif total in remaining:
                k = remaining.index(total)
                rest = remaining[:k] + remaining[k + 1:]
            else:
                continue
            if ok(ns, rest) is not False:
                return (ns, rest, cells)
        return False

    start, rem = S.initial(), tuple(sorted(ms))
    if ok(start, rem) is False:
        return False, None
    columns, state = [], start
    while not S.is_final(state):
        ns, rem, cells = ok(state, rem)
        columns.append(cells)
        state = ns
    return True, S.table_from_columns(columns)


def enumerate_ordered(tree: LinearTreeSpec, cap: int = DEFAULT_ENUM_CAP, search: TableSearch | None = None):
    """Every ordered multiplicity list the superposition produces, sorted."""
    if tree.vertex_count > cap:
        raise ValueError(f"tree has {tree.vertex_count} vertices, enumeration cap is {cap}")
    S = search or TableSearch(tree)

    @lru_cache(maxsize=None)
    def tails(state):
        if S.is_final(state):
            return frozenset({()})
        out = set()
        for ns, total, _ in S.transitions(state):
            for t in tails(ns):
                out.add((total,) + t if total else t)
        return frozenset(out)

    return sorted(tails(S.initial()))
