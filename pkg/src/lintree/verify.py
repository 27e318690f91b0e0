"""Independent checks on realized matrices."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .jacobi_recon import check_interlacing
from .realizer import EDGE_FLOOR, SpectrumTarget
from .tree_model import TreeGraph

__all__ = [
    "ParterError",
    "Cluster",
    "MultiplicityReport",
    "VerificationReport",
    "ParterWitness",
    "InterlacingReport",
    "cluster_eigenvalues",
    "verify_realization",
    "parter_witness",
    "interlacing_audit",
    "multiplicity_at",
]


class ParterError(AssertionError):
    """No Parter vertex exists for a multiple eigenvalue."""


@dataclass(frozen=True)
class Cluster:
    value: float
    multiplicity: int
    spread: float


@dataclass
class MultiplicityReport:
    clusters: list
    tol: float

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c.multiplicity for c in self.clusters)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(c.value for c in self.clusters)


def cluster_eigenvalues(evals, tol: float) -> MultiplicityReport:
    """Single-linkage clustering with gap threshold ``tol * (max - min + 1)``."""
    ev = np.sort(np.asarray(evals, dtype=float))
    gap = tol * (ev[-1] - ev[0] + 1.0)
    groups = [[ev[0]]]
    for x in ev[1:]:
        if x - groups[-1][-1] <= gap:
            groups[-1].append(x)
        else:
            groups.append([x])
    clusters = [Cluster(float(np.mean(g)), len(g), float(g[-1] - g[0])) for g in groups]
    return MultiplicityReport(clusters, tol)


@dataclass
class VerificationReport:
    ok: bool
    failures: list
    multiplicity: MultiplicityReport
    spectral_error: float
    min_edge: float

    def to_json(self) -> dict:
        d = asdict(self)
        d["multiplicity"]["multiplicities"] = list(self.multiplicity.multiplicities)
        return d

    def to_text(self) -> str:
        lines = [f"verification: {'PASS' if self.ok else 'FAIL'}"]
        lines.append(f"spectral error: {self.spectral_error:.3e}")
        lines.append(f"smallest edge entry: {self.min_edge:.3e}")
        lines.append("clusters (value, multiplicity, spread):")
        for c in self.multiplicity.clusters:
            lines.append(f"  {c.value:.10g}  {c.multiplicity}  {c.spread:.1e}")
        for f in self.failures:
            lines.append(f"failure: {f}")
        return "\n".join(lines)


def verify_realization(matrix, tree: TreeGraph, target: SpectrumTarget, tol: float = 1e-6) -> VerificationReport:
    A = np.asarray(matrix, dtype=float)
    n = tree.n
    failures = []
    if A.shape != (n, n):
        raise ValueError(f"matrix shape {A.shape} does not match tree on {n} vertices")
    if not np.array_equal(A, A.T):
        failures.append("matrix is not symmetric")
    min_edge = min((abs(A[u, v]) for u, v in tree.edges), default=np.inf)
    for u, v in sorted(tree.edges):
        if abs(A[u, v]) < EDGE_FLOOR:
            failures.append(f"edge ({u}, {v}) entry {A[u, v]:.3e} below floor {EDGE_FLOOR:g}")
    for u in range(n):
        for v in range(u + 1, n):
            if not tree.has_edge(u, v) and A[u, v] != 0:
                failures.append(f"non-edge ({u}, {v}) entry {A[u, v]:.3e} is not zero")
    ev = np.linalg.eigvalsh((A + A.T) / 2)
    rep = cluster_eigenvalues(ev, tol)
    expected = target.expanded()
    err = float(np.max(np.abs(ev - np.sort(expected)))) if len(ev) == len(expected) else np.inf
    if err > tol:
        failures.append(f"spectral error {err:.3e} exceeds {tol:g}")
    if rep.multiplicities != target.multiplicities:
        failures.append(f"multiplicities {rep.multiplicities} differ from target {target.multiplicities}")
    return VerificationReport(not failures, failures, rep, err, float(min_edge))


def multiplicity_at(A: np.ndarray, lam: float, tol: float) -> int:
    if A.shape[0] == 0:
        return 0
    return int(np.sum(np.abs(np.linalg.eigvalsh(A) - lam) <= tol))


def _components(tree: TreeGraph, removed: int) -> list[list[int]]:
    adj = tree.adjacency()
    seen = {removed}
    comps = []
    for s in range(tree.n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


@dataclass
class ParterWitness:
    vertex: int
    degree: int
    eigenvalue: float
    multiplicity: int
    multiplicity_without: int
    carrying_components: list = field(default_factory=list)


def parter_witness(matrix, tree: TreeGraph, lam: float, tol: float = 1e-7) -> ParterWitness:
    """A vertex whose removal raises the multiplicity of ``lam``.

    Among such vertices one of degree at least 3 with at least three
    components of ``T - u`` carrying ``lam`` is preferred.
    """
    A = np.asarray(matrix, dtype=float)
    scale = tol * (1.0 + float(np.max(np.abs(np.linalg.eigvalsh(A)))))
    m = multiplicity_at(A, lam, scale)
    if m < 2:
        raise ValueError(f"{lam} has multiplicity {m}; a witness needs multiplicity >= 2")
    deg = tree.degrees()
    found = None
    for u in range(tree.n):
        keep = [v for v in range(tree.n) if v != u]
        mu = multiplicity_at(A[np.ix_(keep, keep)], lam, scale)
        if mu != m + 1:
            continue
        carrying = [c for c in _components(tree, u) if multiplicity_at(A[np.ix_(c, c)], lam, scale) > 0]
        w = ParterWitness(u, deg[u], float(lam), m, mu, carrying)
        if deg[u] >= 3 and len(carrying) >= 3:
            return w
        found = found or w
    if found is not None:
        raise ParterError(f"Parter vertex {found.vertex} for {lam} has degree {found.degree} "
                          f"and {len(found.carrying_components)} carrying components")
    raise ParterError(f"no Parter vertex for eigenvalue {lam} of multiplicity {m}")


@dataclass
class InterlacingReport:
    ok: bool
    failing_vertices: list

    def to_json(self) -> dict:
        return asdict(self)


def interlacing_audit(matrix, tol: float = 1e-9) -> InterlacingReport:
    A = np.asarray(matrix, dtype=float)
    n = A.shape[0]
    ev = np.linalg.eigvalsh(A)
    bad = []
    for v in range(n):
        keep = [u for u in range(n) if u != v]
        if not check_interlacing(ev, np.linalg.eigvalsh(A[np.ix_(keep, keep)]), tol):
            bad.append(v)
    return InterlacingReport(not bad, bad)


def report_json(report) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True)
