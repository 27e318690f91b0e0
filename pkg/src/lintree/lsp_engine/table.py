"""The superposition table and its text format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..gstar_lists import UpwardList, validate_gstar
from ..tree_model import LinearTreeSpec

Cell = Optional[tuple[int, bool]]  # None is an inserted non-upward 0

__all__ = [
    "Cell",
    "LspTable",
    "OrderedMultList",
    "row_kinds",
    "validate_table",
    "parse_table",
    "format_table",
    "parse_ordered",
]


def row_kinds(tree: LinearTreeSpec) -> list[tuple[str, int]]:
    """Row order b1, c1, b2, ..., bk as ("star", i) / ("path", j) tags."""
    kinds = []
    for i in range(len(tree.stars)):
        kinds.append(("star", i))
        if i < len(tree.paths):
            kinds.append(("path", i))
    return kinds


@dataclass(frozen=True)
class OrderedMultList:
    entries: tuple[int, ...]

    def __post_init__(self):
        ent = tuple(int(a) for a in self.entries)
        if any(a < 1 for a in ent):
            raise ValueError(f"ordered multiplicity lists have positive entries, got {ent}")
        object.__setattr__(self, "entries", ent)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return " ".join(map(str, self.entries))


def parse_ordered(text: str) -> tuple[int, ...]:
    toks = text.replace(",", " ").split()
    if not toks:
        raise ValueError("empty multiplicity list")
    out = []
    for tok in toks:
        if not tok.isdigit():
            raise ValueError(f"bad multiplicity token {tok!r}")
        out.append(int(tok))
    return OrderedMultList(tuple(out)).entries


@dataclass(frozen=True)
class LspTable:
    tree: LinearTreeSpec
    rows: tuple[tuple[Cell, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(None if c is None else (int(c[0]), bool(c[1])) for c in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        expected = 2 * len(self.tree.stars) - 1
        if len(rows) != expected:
            raise ValueError(f"table has {len(rows)} rows, tree needs {expected}")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError(f"rows have differing lengths {sorted(widths)}")

    @property
    def columns(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def sums(self) -> tuple[int, ...]:
        return tuple(
            sum(r[l][0] for r in self.rows if r[l] is not None) for l in range(self.columns)
        )

    @property
    def multiplicities(self) -> tuple[int, ...]:
        """Column sums with zero-sum columns dropped."""
        return tuple(s for s in self.sums if s > 0)

    def star_row(self, i: int) -> tuple[Cell, ...]:
        return self.rows[2 * i]

    def path_row(self, j: int) -> tuple[Cell, ...]:
        return self.rows[2 * j + 1]

    def star_list(self, i: int) -> UpwardList:
        return UpwardList(tuple(c for c in self.star_row(i) if c is not None))

    def __str__(self) -> str:
        return format_table(self)


def validate_table(t: LspTable) -> tuple[bool, str]:
    tree = t.tree
    for i, star in enumerate(tree.stars):
        cells = [c for c in t.star_row(i) if c is not None]
        try:
            lst = UpwardList(tuple(cells))
        except ValueError as exc:
            return False, f"star row {i + 1}: {exc}"
        ok, why = validate_gstar(lst, star)
        if not ok:
            return False, f"star row {i + 1}: {why}"
    for j, s in enumerate(tree.paths):
        cells = [c for c in t.path_row(j) if c is not None]
        if any(c != (1, False) for c in cells):
            return False, f"path row {j + 1}: entries must be non-upward 1s"
        if len(cells) != s:
            return False, f"path row {j + 1}: has {len(cells)} ones, path has {s} vertices"
    for l in range(t.columns):
        col = [r[l] for r in t.rows]
        if all(c is None for c in col):
            return False, f"column {l + 1} consists only of inserted zeros"
        pending = False
        for c in col:
            if c is None:
                continue
            if c[1]:
                pending = False
            elif pending:
                return False, f"column {l + 1}: two non-upward entries without an upward entry between them"
            else:
                pending = True
    return True, ""


def _fmt_cell(c: Cell) -> str:
    if c is None:
        return "."
    m, up = c
    return f"^{m}" if up else str(m)


def format_table(t: LspTable) -> str:
    """Rows in b1, c1, b2, ... order; empty path rows are omitted."""
    lines = []
    for (kind, idx), row in zip(row_kinds(t.tree), t.rows):
        if kind == "path" and t.tree.paths[idx] == 0:
            continue
        lines.append(" ".join(_fmt_cell(c) for c in row))
    lines.append("= " + " ".join(map(str, t.sums)))
    return "\n".join(lines)


def _parse_cell(tok: str) -> Cell:
    if tok in (".", "_"):
        return None
    up = tok.startswith("^")
    digits = tok[1:] if up else tok
    if not digits.isdigit():
        raise ValueError(f"bad table cell {tok!r}")
    m = int(digits)
    if m == 0 and not up:
        return None
    return (m, up)


def parse_table(text: str, tree: LinearTreeSpec) -> LspTable:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    sums_line = None
    if lines and lines[-1].startswith("="):
        sums_line = lines.pop()
    kinds = row_kinds(tree)
    present = [k for k in kinds if not (k[0] == "path" and tree.paths[k[1]] == 0)]
    if len(lines) != len(present):
        raise ValueError(f"expected {len(present)} table rows, got {len(lines)}")
    parsed = {k: tuple(_parse_cell(tok) for tok in ln.split()) for k, ln in zip(present, lines)}
    width = len(next(iter(parsed.values())))
    rows = tuple(parsed.get(k, (None,) * width) for k in kinds)
    table = LspTable(tree, rows)
    if sums_line is not None:
        claimed = tuple(int(x) for x in sums_line[1:].split())
        if claimed != table.sums:
            raise ValueError(f"sum line {claimed} disagrees with column sums {table.sums}")
    return table
