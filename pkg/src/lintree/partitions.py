"""Integer partitions, Ferrers duals and majorization."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

__all__ = ["Partition", "dual", "majorized_by", "partitions_of"]


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_unsorted(cls, values: Iterable[int]) -> "Partition":
        return cls(tuple(sorted((v for v in values if v > 0), reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]


def dual(p: Partition | Sequence[int]) -> Partition:
    """Transpose the Ferrers diagram: part j counts rows of length >= j."""
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    if not p.parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in p.parts if x >= j) for j in range(1, p.parts[0] + 1)))


def _check_monotone(xs: Sequence[int], name: str) -> list[int]:
    xs = [int(x) for x in xs]
    if any(x < 0 for x in xs):
        raise ValueError(f"{name} has negative entries: {xs}")
    for i in range(len(xs) - 1):
        if xs[i] < xs[i + 1]:
            raise ValueError(f"{name} is not weakly decreasing at index {i}: {xs}")
    return xs


def majorized_by(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a ⪯ b``: every prefix sum of ``a`` is at most the matching prefix sum of ``b``.

    Both inputs must be weakly decreasing; the shorter one is padded with
    zeros.  Totals are not required to agree.
    """
    a = _check_monotone(list(a), "a")
    b = _check_monotone(list(b), "b")
    width = max(len(a), len(b))
    a += [0] * (width - len(a))
    b += [0] * (width - len(b))
    return all(x <= y for x, y in zip(accumulate(a), accumulate(b)))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(n, max_part):
        yield Partition(parts)
