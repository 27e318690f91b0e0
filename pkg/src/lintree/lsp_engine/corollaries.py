"""Degree lists, subdivision, augmentation, and the extremal functions U and M."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..gstar_lists import max_multiplicity_gstar
from ..tree_model import LinearTreeSpec, TreeGraph, canonical_form, expand, is_linear, stats
from .search import TableSearch, decide_unordered, enumerate_ordered

__all__ = [
    "TheoremViolation",
    "degree_list",
    "subdivide_list",
    "augmentations",
    "augmentation_check",
    "AugmentationReport",
    "lists_plus_one",
    "lists_plus",
    "max_multiplicity",
    "ones_bound",
]


class TheoremViolation(AssertionError):
    """A consequence that must hold for every linear tree failed."""


def degree_list(tree: LinearTreeSpec):
    g = expand(tree)
    deg = g.degrees()
    hdv = sorted((d - 1 for d in deg if d >= 3), reverse=True)
    lst = tuple(hdv + [1] * (tree.vertex_count - sum(hdv)))
    ok, cert = decide_unordered(tree, lst)
    if not ok:
        raise TheoremViolation(f"degree list {lst} not achievable for {tree}")
    return lst, cert


def subdivide_list(tree: LinearTreeSpec, L, j: int, search: TableSearch | None = None):
    L = tuple(L)
    if not 0 <= j < len(L):
        raise IndexError(f"index {j} out of range for list of length {len(L)}")
    if L[j] < 2:
        raise ValueError(f"entry {j} is {L[j]}; subdivision needs an entry >= 2")
    new = L[:j] + (L[j] - 1,) + L[j + 1:] + (1,)
    ok, _ = decide_unordered(tree, new, search=search)
    if not ok:
        raise TheoremViolation(f"subdivided list {new} of {L} not achievable for {tree}")
    return new


def augmentations(tree: LinearTreeSpec) -> list[tuple[str, LinearTreeSpec]]:
    """Linear trees from one pendant addition or one edge subdivision, up to isomorphism."""
    g = expand(tree)
    n = g.n
    seen, out = set(), []

    def consider(kind, h: TreeGraph):
        key = canonical_form(h)
        if key in seen:
            return
        seen.add(key)
        ok, spec = is_linear(h)
        if ok and spec is not None:
            out.append((kind, spec))

    for v in range(n):
        consider("pendant", TreeGraph(n + 1, g.edges | {(v, n)}))
    for u, v in sorted(g.edges):
        consider("subdivide", TreeGraph(n + 1, (g.edges - {(u, v)}) | {(u, n), (v, n)}))
    return out


def lists_plus_one(lists) -> set:
    return {tuple(L) + (1,) for L in lists}


def lists_plus(lists) -> set:
    out = set()
    for L in lists:
        L = tuple(L)
        for i in range(len(L)):
            out.add(L[:i] + (L[i] + 1,) + L[i + 1:])
        for i in range(len(L) + 1):
            out.add(L[:i] + (1,) + L[i:])
    return out


@dataclass
class AugmentationReport:
    tree: LinearTreeSpec
    augmented: LinearTreeSpec
    lower_missing: list = field(default_factory=list)
    upper_extra: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.lower_missing and not self.upper_extra


def augmentation_check(tree: LinearTreeSpec, augmented: LinearTreeSpec, cap: int = 13, base_lists=None) -> AugmentationReport:
    base = base_lists if base_lists is not None else enumerate_ordered(tree, cap=cap)
    target = set(enumerate_ordered(augmented, cap=cap))
    rep = AugmentationReport(tree, augmented)
    rep.lower_missing = sorted(lists_plus_one(base) - target)
    rep.upper_extra = sorted(target - lists_plus(base))
    return rep


def max_multiplicity(tree: LinearTreeSpec) -> int:
    """``l + sum M(T_i)`` with ``l`` the number of non-empty connecting paths."""
    l = sum(1 for s in tree.paths if s > 0)
    return l + sum(max_multiplicity_gstar(s) for s in tree.stars)


def ones_bound(tree: LinearTreeSpec, lists=None) -> tuple[int, int]:
    upper = 2 + stats(expand(tree)).d2
    lists = lists if lists is not None else enumerate_ordered(tree, cap=max(13, tree.vertex_count))
    fewest = min(Counter(L)[1] for L in lists)
    if fewest > upper:
        raise TheoremViolation(f"{tree}: every list has at least {fewest} ones, bound is {upper}")
    return upper, fewest
