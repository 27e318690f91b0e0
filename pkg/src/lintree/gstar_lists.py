"""Upward multiplicity lists of generalized stars.

A list is read relative to the central vertex ``v``: an entry is *upward*
(written ``^q``) when deleting ``v`` raises that eigenvalue's multiplicity
from ``q`` to ``q + 1``.  Upward ``^0`` marks an eigenvalue of ``A(v)`` that
is not an eigenvalue of ``A``.

We work with *complete* lists, i.e. every eigenvalue of ``A(v)`` shows up as
an upward entry.  Interlacing at ``v`` then forces the shape::

    1 ^q1 1 ^q2 1 ... ^qr 1

(non-upward entries are simple and alternate with upward ones), so the
admissibility test reduces to that shape plus a majorization check on the
sorted values ``q + 1`` against the dual of the arm lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .partitions import dual, majorized_by
from .tree_model import GeneralizedStarSpec

__all__ = [
    "UpwardList",
    "validate_gstar",
    "enumerate_gstar",
    "max_multiplicity_gstar",
    "parse_list",
    "format_list",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 16


@dataclass(frozen=True)
class UpwardList:
    entries: tuple[tuple[int, bool], ...]

    def __post_init__(self):
        norm = []
        for i, e in enumerate(self.entries):
            m, up = e
            if isinstance(m, bool) or int(m) != m:
                raise ValueError(f"entry {i}: multiplicity {m!r} is not an integer")
            m = int(m)
            if m < 0:
                raise ValueError(f"entry {i}: negative multiplicity {m}")
            if m == 0 and not up:
                raise ValueError(f"entry {i}: non-upward 0 is not a list entry")
            norm.append((m, bool(up)))
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def parse(cls, text: str) -> "UpwardList":
        return parse_list(text)

    @classmethod
    def from_pattern(cls, upward: Sequence[int]) -> "UpwardList":
        """Build ``1 ^u1 1 ^u2 ... 1`` from the upward values alone."""
        entries = [(1, False)]
        for q in upward:
            entries += [(int(q), True), (1, False)]
        return cls(tuple(entries))

    @property
    def total(self) -> int:
        return sum(m for m, _ in self.entries)

    @property
    def upward_values(self) -> tuple[int, ...]:
        return tuple(m for m, up in self.entries if up)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        """Ordered multiplicity list with ``^0`` slots dropped."""
        return tuple(m for m, _ in self.entries if m > 0)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return format_list(self)


def parse_list(text: str) -> UpwardList:
    entries = []
    for i, tok in enumerate(text.split()):
        up = tok.startswith("^")
        digits = tok[1:] if up else tok
        if not digits.isdigit():
            raise ValueError(f"token {i} ({tok!r}) is not digits or '^'digits")
        entries.append((int(digits), up))
    return UpwardList(tuple(entries))


def format_list(lst: UpwardList) -> str:
    return " ".join(f"^{m}" if up else str(m) for m, up in lst.entries)


def _arms(arms) -> GeneralizedStarSpec:
    if isinstance(arms, GeneralizedStarSpec):
        return arms
    return GeneralizedStarSpec(tuple(arms))


def validate_gstar(lst: UpwardList, arms) -> tuple[bool, str]:
    """Check a complete upward list against a star's arm lengths.

    Returns ``(ok, reason)``; ``reason`` is empty on success.
    """
    star = _arms(arms)
    n = star.vertex_count
    ent = lst.entries
    if not ent:
        return False, "empty list"
    if lst.total != n:
        return False, f"multiplicities sum to {lst.total}, star has {n} vertices"
    for i, (m, up) in enumerate(ent):
        if up and (i == 0 or i == len(ent) - 1):
            return False, f"upward entry at boundary position {i + 1}"
        if up and ent[i - 1][1]:
            return False, f"adjacent upward entries at positions {i} and {i + 1}"
    for i, (m, up) in enumerate(ent):
        if not up and i > 0 and not ent[i - 1][1]:
            return False, f"non-upward entries at positions {i} and {i + 1} lack an upward entry between them"
        if not up and m != 1:
            # a non-upward eigenvalue of a star is simple: its multiplicity
            # cannot exceed what interlacing at the center allows
            return False, f"non-upward entry at position {i + 1} has multiplicity {m} > 1"
    ups = sorted((m + 1 for m, up in ent if up), reverse=True)
    if not majorized_by(ups, dual(star.arms).parts):
        return False, f"upward profile {tuple(ups)} not majorized by dual{star.arms} = {dual(star.arms).parts}"
    return True, ""


def max_multiplicity_gstar(arms) -> int:
    """Largest multiplicity over all lists of the star: ``max(1, k - 1)``."""
    star = _arms(arms)
    return max(1, star.degree - 1)


def _upward_profiles(n_minus_1: int, cap_part: int, dual_parts: tuple[int, ...]):
    """Compositions of ``n_minus_1`` into parts ``q + 1`` passing majorization."""
    out = []

    def rec(rest, acc):
        if rest == 0:
            if majorized_by(sorted(acc, reverse=True), dual_parts):
                out.append(tuple(v - 1 for v in acc))
            return
        for v in range(1, min(rest, cap_part) + 1):
            acc.append(v)
            # prune: the largest part so far already bounded by cap_part;
            # a partial prefix check on the sorted parts is cheap
            top = sorted(acc, reverse=True)
            if majorized_by(top, dual_parts):
                rec(rest - v, acc)
            acc.pop()

    rec(n_minus_1, [])
    return out


def enumerate_gstar(arms, max_distinct: int | None = None, cap: int = DEFAULT_CAP) -> list[UpwardList]:
    """All valid complete lists, lexicographic on the entry sequence.

    ``max_distinct`` bounds the number of positions (list length).
    """
    star = _arms(arms)
    n = star.vertex_count
    if n > cap:
        raise ValueError(f"star has {n} vertices, enumeration cap is {cap}")
    dual_parts = dual(star.arms).parts
    lists = []
    for ups in _upward_profiles(n - 1, dual_parts[0], dual_parts):
        lst = UpwardList.from_pattern(ups)
        if max_distinct is not None and len(lst) > max_distinct:
            continue
        lists.append(lst)
    lists.sort(key=lambda l: l.entries)
    return lists

