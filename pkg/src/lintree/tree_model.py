"""Linear trees as star/path specs and as explicit edge sets.

A linear tree ``L(T1, s1, T2, ..., s_{k-1}, Tk)`` is stored as a
:class:`LinearTreeSpec`: an ordered tuple of generalized stars (arm lengths
counted in vertices) and the number of interior vertices on each connecting
path.  :func:`expand` turns a spec into a :class:`TreeGraph` with a fixed
vertex numbering::

    star 1 center, star 1 arms (longest first, each root-to-tip),
    path 1 vertices (from star 1 toward star 2), star 2 center, ...

Every other module relies on this numbering, so it must not change.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

__all__ = [
    "GeneralizedStarSpec",
    "LinearTreeSpec",
    "TreeGraph",
    "TreeLayout",
    "TreeStats",
    "expand",
    "layout",
    "diameter",
    "is_linear",
    "stats",
    "canonical_form",
    "isomorphic",
    "bfs_diameter",
    "load_tree",
]


@dataclass(frozen=True)
class GeneralizedStarSpec:
    """A center vertex with pendant paths ("arms") attached."""

    arms: tuple[int, ...]

    def __post_init__(self):
        arms = tuple(int(a) for a in self.arms)
        if not arms:
            raise ValueError("a generalized star needs at least one arm")
        if any(a < 1 for a in arms):
            raise ValueError(f"arm lengths must be >= 1, got {arms}")
        object.__setattr__(self, "arms", tuple(sorted(arms, reverse=True)))

    @property
    def vertex_count(self) -> int:
        return 1 + sum(self.arms)

    @property
    def degree(self) -> int:
        return len(self.arms)


@dataclass(frozen=True)
class LinearTreeSpec:
    stars: tuple[GeneralizedStarSpec, ...]
    paths: tuple[int, ...] = ()

    def __post_init__(self):
        stars = tuple(
            s if isinstance(s, GeneralizedStarSpec) else GeneralizedStarSpec(tuple(s))
            for s in self.stars
        )
        paths = tuple(int(s) for s in self.paths)
        if not stars:
            raise ValueError("a linear tree needs at least one star")
        if len(paths) != len(stars) - 1:
            raise ValueError(
                f"{len(stars)} stars need {len(stars) - 1} connecting paths, got {len(paths)}"
            )
        if any(s < 0 for s in paths):
            raise ValueError(f"path lengths must be >= 0, got {paths}")
        object.__setattr__(self, "stars", stars)
        object.__setattr__(self, "paths", paths)

    @classmethod
    def of(cls, stars, paths=()) -> "LinearTreeSpec":
        """Build from plain nested lists, e.g. ``LinearTreeSpec.of([[2, 1, 1], [1, 1]], [1])``."""
        return cls(tuple(GeneralizedStarSpec(tuple(a)) for a in stars), tuple(paths))

    @property
    def vertex_count(self) -> int:
        return sum(s.vertex_count for s in self.stars) + sum(self.paths)

    @property
    def n(self) -> int:
        return self.vertex_count

    def to_json(self) -> dict:
        return {"stars": [list(s.arms) for s in self.stars], "paths": list(self.paths)}

    @classmethod
    def from_json(cls, obj: dict) -> "LinearTreeSpec":
        return cls.of(obj["stars"], obj.get("paths", []))

    def __str__(self) -> str:
        parts = []
        for i, star in enumerate(self.stars):
            parts.append("[" + ",".join(map(str, star.arms)) + "]")
            if i < len(self.paths):
                parts.append(str(self.paths[i]))
        return "L(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class TreeGraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_tree(self) -> bool:
        if self.n < 1 or len(self.edges) != self.n - 1:
            return False
        return len(_reachable(self.adjacency(), 0)) == self.n

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, obj: dict) -> "TreeGraph":
        return cls(int(obj["n"]), frozenset(tuple(e) for e in obj["edges"]))


@dataclass(frozen=True)
class TreeLayout:
    """Vertex indices of each structural piece of an expanded spec."""

    centers: tuple[int, ...]
    arms: tuple[tuple[tuple[int, ...], ...], ...]
    paths: tuple[tuple[int, ...], ...]

    def star_vertices(self, i: int) -> tuple[int, ...]:
        out = [self.centers[i]]
        for arm in self.arms[i]:
            out.extend(arm)
        return tuple(out)


@dataclass(frozen=True)
class TreeStats:
    degrees: tuple[int, ...]
    d2: int
    hdvs: tuple[int, ...]


def layout(spec: LinearTreeSpec) -> TreeLayout:
    nxt = 0
    centers, arms, paths = [], [], []
    for i, star in enumerate(spec.stars):
        centers.append(nxt)
        nxt += 1
        star_arms = []
        for length in star.arms:
            star_arms.append(tuple(range(nxt, nxt + length)))
            nxt += length
        arms.append(tuple(star_arms))
        if i < len(spec.paths):
            s = spec.paths[i]
            paths.append(tuple(range(nxt, nxt + s)))
            nxt += s
    return TreeLayout(tuple(centers), tuple(arms), tuple(paths))


def expand(spec: LinearTreeSpec) -> TreeGraph:
    lay = layout(spec)
    edges = []
    for i, center in enumerate(lay.centers):
        for arm in lay.arms[i]:
            chain = (center,) + arm
            edges.extend(zip(chain[:-1], chain[1:]))
        if i < len(lay.paths):
            chain = (center,) + lay.paths[i] + (lay.centers[i + 1],)
            edges.extend(zip(chain[:-1], chain[1:]))
    return TreeGraph(spec.vertex_count, frozenset(edges))


def diameter(spec: LinearTreeSpec) -> int:
    """Number of vertices on a longest path."""
    best = 0
    tops = []
    for star in spec.stars:
        a = star.arms
        best = max(best, a[0] + (a[1] if len(a) > 1 else 0) + 1)
        tops.append(a[0])
    # offset[i] = vertices strictly before center i along the spine
    offset = [0]
    for s in spec.paths:
        offset.append(offset[-1] + s + 1)
    for i in range(len(spec.stars)):
        for j in range(i + 1, len(spec.stars)):
            between = offset[j] - offset[i] + 1  # centers i..j inclusive plus path vertices
            best = max(best, tops[i] + tops[j] + between)
    return best


def stats(g: TreeGraph) -> TreeStats:
    deg = g.degrees()
    return TreeStats(
        degrees=tuple(sorted(deg, reverse=True)),
        d2=sum(1 for d in deg if d == 2),
        hdvs=tuple(v for v in range(g.n) if deg[v] >= 3),
    )


def is_linear(g: TreeGraph) -> tuple[bool, LinearTreeSpec | None]:
    """Decide linearity; when linear also return the canonical decomposition.

    Raises ``ValueError`` if ``g`` is not a tree.  The single-vertex tree is
    linear but has no star decomposition, so ``(True, None)`` is returned.
    """
    if not g.is_tree():
        raise ValueError("input graph is not a tree")
    if g.n == 1:
        return True, None
    adj = g.adjacency()
    deg = [len(a) for a in adj]
    hdvs = [v for v in range(g.n) if deg[v] >= 3]

    if len(hdvs) <= 1:
        center = hdvs[0] if hdvs else min(v for v in range(g.n) if deg[v] == 1)
        arms = [_branch_size(adj, center, nb) for nb in adj[center]]
        return True, LinearTreeSpec((GeneralizedStarSpec(tuple(arms)),), ())

    # minimal subtree spanning the HDVs: prune non-HDV leaves repeatedly
    alive = [True] * g.n
    cur = deg[:]
    queue = deque(v for v in range(g.n) if cur[v] == 1 and deg[v] < 3)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in adj[v]:
            if alive[w]:
                cur[w] -= 1
                if cur[w] == 1 and deg[w] < 3:
                    queue.append(w)
    if any(alive[v] and cur[v] > 2 for v in range(g.n)):
        return False, None

    ends = [v for v in range(g.n) if alive[v] and cur[v] == 1]
    spine = [ends[0]]
    prev = -1
    while True:
        v = spine[-1]
        step = [w for w in adj[v] if alive[w] and w != prev]
        if not step:
            break
        prev = v
        spine.append(step[0])

    def build(order: list[int]) -> LinearTreeSpec:
        on_spine = set(order)
        stars, paths, gap = [], [], 0
        for v in order:
            if deg[v] >= 3:
                if stars:
                    paths.append(gap)
                gap = 0
                arms = [_branch_size(adj, v, w) for w in adj[v] if w not in on_spine]
                stars.append(GeneralizedStarSpec(tuple(arms)))
            else:
                gap += 1
        return LinearTreeSpec(tuple(stars), tuple(paths))

    fwd, rev = build(spine), build(spine[::-1])
    return True, min(fwd, rev, key=_spec_key)


def _spec_key(spec: LinearTreeSpec):
    return (tuple(s.arms for s in spec.stars), spec.paths)


def _branch_size(adj, root: int, start: int) -> int:
    seen = {root, start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) - 1


def _reachable(adj, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _bfs_far(adj, start: int) -> tuple[int, int]:
    dist = {start: 1}
    queue = deque([start])
    last = start
    while queue:
        v = queue.popleft()
        last = v
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return last, dist[last]


def bfs_diameter(g: TreeGraph) -> int:
    """Double-sweep longest path (in vertices) straight from the edge set."""
    adj = g.adjacency()
    far, _ = _bfs_far(adj, 0)
    _, d = _bfs_far(adj, far)
    return d


# -- isomorphism (AHU canonical strings rooted at the centroid) --------------


def _centroids(adj, n: int) -> list[int]:
    parent = [-1] * n
    order = [0]
    parent[0] = 0
    for v in order:
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
    size = [1] * n
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    best, out = n, []
    for v in range(n):
        heaviest = n - size[v]
        for w in adj[v]:
            if w != parent[v] or v == 0:
                if parent[w] == v:
                    heaviest = max(heaviest, size[w])
        if heaviest < best:
            best, out = heaviest, [v]
        elif heaviest == best:
            out.append(v)
    return out


def _ahu(adj, root: int, parent: int) -> str:
    kids = sorted(_ahu(adj, w, root) for w in adj[root] if w != parent)
    return "(" + "".join(kids) + ")"


def canonical_form(g: TreeGraph) -> str:
    adj = g.adjacency()
    return min(_ahu(adj, c, -1) for c in _centroids(adj, g.n))


def isomorphic(a: TreeGraph, b: TreeGraph) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


def load_tree(path: str | Path) -> LinearTreeSpec:
    """Read either a tree-spec file or an explicit edge-list file."""
    obj = json.loads(Path(path).read_text())
    if "stars" in obj:
        return LinearTreeSpec.from_json(obj)
    ok, spec = is_linear(TreeGraph.from_json(obj))
    if not ok:
        raise ValueError(f"{path}: tree is not linear")
    if spec is None:
        raise ValueError(f"{path}: single-vertex tree has no star decomposition")
    return spec
