"""Matrices with a prescribed linear-tree graph and prescribed spectrum.

Star blocks
-----------
For a generalized star with center ``c`` and arm matrices ``B_j``::

    p_A(t) / prod_j p_{B_j}(t) = t - a0 - sum_j a_j^2 p_{B_j(1)}(t) / p_{B_j}(t)

If every upward value ``mu`` is an eigenvalue of ``q(mu) + 1`` arms, the
right side is a secular function with poles at the distinct ``mu`` and its
roots must be the non-upward values ``lam``.  That pins ``a0`` and the total
residue at each pole in closed form:

    a0   = sum(lam) - sum(mu)
    c_mu = -prod_lam (mu - lam) / prod_{mu' != mu} (mu - mu')  > 0

Splitting ``c_mu`` over the arms that carry ``mu`` gives the edge weights
``a_j`` and each arm's spectral weights, and the arm itself is rebuilt from
its spectrum and weights.  The Newton machinery (``build_jacobian``) is kept
for the coupled problem and as a numerical witness that the implicit
variables give a nonsingular Jacobian.

Linear trees
------------
``realize`` starts from the direct sum of star blocks and diagonal path
vertices, switches every connecting edge on at size ``eps`` and restores the
lost eigenvalues by Newton on the union of the implicit variables.  If
Newton stalls ``eps`` is halved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .gstar_lists import UpwardList, validate_gstar
from .jacobi_recon import InterlacingError, _lanczos, reconstruct, subtree_char_polys
from .lsp_engine import LspTable, decide_ordered, validate_table
from .tree_model import GeneralizedStarSpec, LinearTreeSpec, TreeGraph, expand, layout

__all__ = [
    "RealizationError",
    "SpectrumTarget",
    "RealizationResult",
    "ImplicitVariableSet",
    "StarBlock",
    "JacobianCheck",
    "assign_upwards",
    "realize_gstar",
    "build_jacobian",
    "finite_difference_jacobian",
    "realize",
    "column_values",
    "matrix_to_json",
    "matrix_from_json",
    "EDGE_FLOOR",
]

EDGE_FLOOR = 1e-10
EPS_FLOOR = 1e-8
MAX_NEWTON = 100


class RealizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectrumTarget:
    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    table: LspTable

    def __post_init__(self):
        ev = tuple(float(x) for x in self.eigenvalues)
        ms = tuple(int(m) for m in self.multiplicities)
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "multiplicities", ms)
        if len(ev) != len(ms):
            raise ValueError(f"{len(ev)} eigenvalues for {len(ms)} multiplicities")
        if any(b <= a for a, b in zip(ev, ev[1:])):
            raise ValueError("target eigenvalues must be strictly increasing")
        if self.table.multiplicities != ms:
            raise ValueError(f"table sums {self.table.multiplicities} do not match {ms}")
        if sum(ms) != self.table.tree.vertex_count:
            raise ValueError("multiplicities do not sum to the vertex count")

    @property
    def tree(self) -> LinearTreeSpec:
        return self.table.tree

    @classmethod
    def from_table(cls, table: LspTable, eigenvalues=None) -> "SpectrumTarget":
        ms = table.multiplicities
        if eigenvalues is None:
            eigenvalues = tuple(float(i) for i in range(1, len(ms) + 1))
        return cls(tuple(eigenvalues), ms, table)

    @classmethod
    def from_list(cls, tree: LinearTreeSpec, L, eigenvalues=None) -> "SpectrumTarget":
        ok, table = decide_ordered(tree, tuple(L))
        if not ok:
            raise ValueError(f"{tuple(L)} is not a multiplicity list of {tree}")
        return cls.from_table(table, eigenvalues)

    def expanded(self) -> np.ndarray:
        return np.repeat(np.asarray(self.eigenvalues), self.multiplicities)


@dataclass(frozen=True)
class JacobianCheck:
    """Star Jacobian at the initial configuration."""

    size: int
    smallest_singular_value: float
    condition: float
    fd_relative_error: float


@dataclass
class RealizationResult:
    matrix: np.ndarray
    residual: float
    min_edge: float
    iterations: int
    eps: Optional[float] = None
    seed: int = 0
    jacobian_checks: list = field(default_factory=list)

    def to_json(self) -> dict:
        return matrix_to_json(self.matrix)


@dataclass(frozen=True)
class ImplicitVariableSet:
    """``a0``, then for every designated arm its edge weight and some ``eta`` indices."""

    designated: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def count(self) -> int:
        return 1 + sum(1 + len(e) for _, e in self.designated)

    def names(self) -> list[str]:
        out = ["a0"]
        for j, etas in self.designated:
            out.append(f"a{j + 1}")
            out += [f"eta{j + 1}_{k + 1}" for k in etas]
        return out


def assign_upwards(row: UpwardList, arms) -> list[tuple[int, ...]]:
    """Arms (0-based, longest first) that carry each upward slot of ``row``.

    Largest multiplicity first, into the arms with most room left; ties go
    to the arm holding fewer values.  Falls back to exhaustive search.
    """
    arms = tuple(GeneralizedStarSpec(tuple(arms)).arms) if not isinstance(arms, GeneralizedStarSpec) else arms.arms
    ups = [(i, m) for i, (m, up) in enumerate(row.entries) if up]
    need = {i: m + 1 for i, m in ups}
    order = sorted(need, key=lambda i: (-need[i], i))

    room = list(arms)
    held = [0] * len(arms)
    out: dict[int, tuple[int, ...]] = {}
    greedy_ok = True
    for slot in order:
        ranked = sorted(range(len(arms)), key=lambda j: (-room[j], held[j], j))
        pick = [j for j in ranked if room[j] > 0][: need[slot]]
        if len(pick) < need[slot]:
            greedy_ok = False
            break
        for j in pick:
            room[j] -= 1
            held[j] += 1
        out[slot] = tuple(sorted(pick))
    if greedy_ok:
        return [out[i] for i, _ in ups]

    solution = _assign_search(arms, [need[i] for i, _ in ups])
    if solution is None:
        raise RealizationError(f"no arm assignment for {row} on arms {arms}")
    return solution


def _assign_search(arms, needs):
    from itertools import combinations

    room = list(arms)
    picks = []

    def rec(k):
        if k == len(needs):
            return True
        for combo in combinations(range(len(arms)), needs[k]):
            if all(room[j] > 0 for j in combo):
                for j in combo:
                    room[j] -= 1
                picks.append(combo)
                if rec(k + 1):
                    return True
                picks.pop()
                for j in combo:
                    room[j] += 1
        return False

    return picks if rec(0) else None


@dataclass
class StarBlock:
    """A star matrix kept as ``a0``, edge weights ``a`` and arm matrices.

    ``gammas[j]`` (arm spectrum) never changes; ``etas[j]`` is the spectrum
    of the arm with its root removed.
    """

    arms: tuple[int, ...]
    a0: float
    a: np.ndarray
    blocks: list
    gammas: list
    etas: list
    lambdas: np.ndarray
    assignment: list

    @property
    def n(self) -> int:
        return 1 + sum(self.arms)

    def offsets(self) -> list[int]:
        out, nxt = [], 1
        for l in self.arms:
            out.append(nxt)
            nxt += l
        return out

    def matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        A[0, 0] = self.a0
        for j, off in enumerate(self.offsets()):
            l = self.arms[j]
            A[off : off + l, off : off + l] = self.blocks[j]
            A[0, off] = A[off, 0] = self.a[j]
        return A

    def variables(self, ivs: ImplicitVariableSet) -> np.ndarray:
        z = [self.a0]
        for j, idx in ivs.designated:
            z.append(self.a[j])
            z += [self.etas[j][k] for k in idx]
        return np.array(z)

    def with_variables(self, ivs: ImplicitVariableSet, z) -> "StarBlock":
        z = list(z)
        a = self.a.copy()
        blocks, etas = list(self.blocks), list(self.etas)
        a0 = z.pop(0)
        for j, idx in ivs.designated:
            a[j] = z.pop(0)
            if idx:
                eta = self.etas[j].copy()
                for k in idx:
                    eta[k] = z.pop(0)
                etas[j] = eta
                blocks[j] = reconstruct(self.gammas[j], eta, delete="first").to_dense()
        return StarBlock(self.arms, a0, a, blocks, self.gammas, etas, self.lambdas, self.assignment)

    def char_parts(self, t: float):
        """``(prod_j p_{B_j}(t), [p_{B_j}(t)], [p_{B_j(1)}(t)])`` from the stored spectra."""
        pB = [float(np.prod(t - g)) for g in self.gammas]
        pB1 = [float(np.prod(t - e)) for e in self.etas]
        return float(np.prod(pB)), pB, pB1


def _residues(lams: np.ndarray, mus: np.ndarray) -> np.ndarray:
    c = np.empty(len(mus))
    for i, m in enumerate(mus):
        others = np.delete(mus, i)
        c[i] = -np.prod(m - lams) / np.prod(m - others)
    return c


def _split_row(row: UpwardList, values: Sequence[float]):
    lams, mus, qs = [], [], []
    for (m, up), x in zip(row.entries, values):
        if up:
            mus.append(x)
            qs.append(m)
        else:
            lams.append(x)
    return np.array(lams, dtype=float), np.array(mus, dtype=float), qs


def default_variable_set(block: StarBlock, assignment, prefer: str = "low") -> ImplicitVariableSet:
    """Give each upward value to the first arm carrying it; each arm then
    contributes its edge weight and ``l - 1`` of its ``eta`` values."""
    count = [0] * len(block.arms)
    for arms in assignment:
        count[arms[0]] += 1
    designated = []
    for j, l in enumerate(count):
        if l == 0:
            continue
        total = len(block.etas[j])
        idx = tuple(range(l - 1)) if prefer == "low" else tuple(range(total - (l - 1), total))
        designated.append((j, idx))
    return ImplicitVariableSet(tuple(designated))


def _star_from_closed_form(arms, row: UpwardList, values, seed: int) -> StarBlock:
    lams, mus, _ = _split_row(row, values)
    assignment = assign_upwards(row, arms)
    k = len(arms)
    if len(mus) == 0:
        # a lone vertex has no arms; generalized stars always have some
        raise RealizationError("star row without upward slots")
    a0 = float(lams.sum() - mus.sum())
    c = _residues(lams, mus)
    if np.any(c <= 0):
        raise RealizationError("non-upward and upward values do not interlace")
    rng = np.random.default_rng(seed) if seed else None
    x = [dict() for _ in range(k)]
    for i, carriers in enumerate(assignment):
        if rng is None:
            share = np.full(len(carriers), 1.0 / len(carriers))
        else:
            share = rng.uniform(0.5, 1.5, len(carriers))
            share /= share.sum()
        for j, s in zip(carriers, share):
            x[j][i] = c[i] * s
    a = np.zeros(k)
    blocks, gammas, etas = [], [], []
    for j in range(k):
        slots = sorted(x[j])
        if len(slots) != arms[j]:
            raise RealizationError(f"arm {j + 1} of length {arms[j]} carries {len(slots)} values")
        g = np.array([mus[i] for i in slots])
        xs = np.array([x[j][i] for i in slots])
        a[j] = math.sqrt(xs.sum())
        J = _lanczos(g, xs / xs.sum())
        B = J.to_dense()
        blocks.append(B)
        gammas.append(g)
        etas.append(np.linalg.eigvalsh(B[1:, 1:]) if arms[j] > 1 else np.zeros(0))
    return StarBlock(tuple(arms), a0, a, blocks, gammas, etas, lams, assignment)


def build_jacobian(block: StarBlock, ivs: ImplicitVariableSet, lambdas=None, h: float = 1e-6) -> np.ndarray:
    """Rows: ``det(lam I - A)`` at each non-upward value; columns: ``ivs``.

    ``a0`` and edge columns are analytic, ``eta`` columns are central
    differences through the arm reconstruction.
    """
    lambdas = block.lambdas if lambdas is None else np.asarray(lambdas, dtype=float)
    rows = []
    for lam in lambdas:
        P, pB, pB1 = block.char_parts(lam)
        row = [-P]
        for j, idx in ivs.designated:
            others = P / pB[j] if pB[j] != 0 else float(np.prod([pB[l] for l in range(len(pB)) if l != j]))
            row.append(-2.0 * block.a[j] * pB1[j] * others)
            for k in idx:
                row.append(_eta_derivative(block, j, k, lam, others, h))
        rows.append(row)
    return np.array(rows)


def _eta_derivative(block: StarBlock, j, k, lam, others, h):
    eta = block.etas[j]
    g = block.gammas[j]
    # keep both probes inside the interlacing window
    step = h * min(eta[k] - g[k], g[k + 1] - eta[k])
    vals = []
    for sgn in (1.0, -1.0):
        e = eta.copy()
        e[k] += sgn * step
        B = reconstruct(g, e, delete="first").to_dense()
        B1 = np.linalg.eigvalsh(B[1:, 1:])
        vals.append(-block.a[j] ** 2 * float(np.prod(lam - B1)) * others)
    return (vals[0] - vals[1]) / (2 * step)


def _star_det(block: StarBlock, t: float) -> float:
    A = block.matrix()
    adj = [[] for _ in range(block.n)]
    for u in range(block.n):
        for v in range(u + 1, block.n):
            if A[u, v] != 0:
                adj[u].append(v)
                adj[v].append(u)
    return subtree_char_polys(A, adj, 0, t)[0]


def finite_difference_jacobian(block: StarBlock, ivs: ImplicitVariableSet, lambdas=None, h: float = 1e-6) -> np.ndarray:
    """Central differences of ``det(lam I - A)`` in every implicit variable."""
    lambdas = block.lambdas if lambdas is None else np.asarray(lambdas, dtype=float)
    z0 = block.variables(ivs)
    J = np.zeros((len(lambdas), len(z0)))
    names = ivs.names()
    for c in range(len(z0)):
        if names[c].startswith("eta"):
            j = int(names[c][3:].split("_")[0]) - 1
            k = int(names[c].split("_")[1]) - 1
            g, e = block.gammas[j], block.etas[j]
            step = h * min(e[k] - g[k], g[k + 1] - e[k])
        else:
            step = h * max(1.0, abs(z0[c]))
        zp, zm = z0.copy(), z0.copy()
        zp[c] += step
        zm[c] -= step
        bp, bm = block.with_variables(ivs, zp), block.with_variables(ivs, zm)
        for r, lam in enumerate(lambdas):
            J[r, c] = (_star_det(bp, lam) - _star_det(bm, lam)) / (2 * step)
    return J


def check_star_jacobian(block: StarBlock, ivs: ImplicitVariableSet) -> JacobianCheck:
    J = build_jacobian(block, ivs)
    F = finite_difference_jacobian(block, ivs)
    s = np.linalg.svd(J, compute_uv=False)
    rel = float(np.linalg.norm(J - F) / max(np.linalg.norm(F), 1e-300))
    cond = float(s[0] / s[-1]) if s[-1] > 0 else math.inf
    return JacobianCheck(J.shape[0], float(s[-1]), cond, rel)


def _spectral_error(A: np.ndarray, expected: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvalsh(A) - np.sort(expected))))


def _min_edge(A: np.ndarray, g: TreeGraph) -> float:
    return min((abs(A[u, v]) for u, v in g.edges), default=math.inf)


def realize_gstar(arms, row, eigenvalues, seed: int = 0, check_jacobian: bool = True) -> RealizationResult:
    """Realize one star row.  ``eigenvalues`` gives a value for every slot of ``row``."""
    star = arms if isinstance(arms, GeneralizedStarSpec) else GeneralizedStarSpec(tuple(arms))
    if isinstance(row, str):
        row = UpwardList.parse(row)
    ok, why = validate_gstar(row, star)
    if not ok:
        raise ValueError(f"row {row} is not a valid list for arms {star.arms}: {why}")
    values = [float(x) for x in eigenvalues]
    if len(values) != len(row):
        raise ValueError(f"{len(values)} eigenvalues for {len(row)} slots")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("slot eigenvalues must be strictly increasing")
    block = _star_from_closed_form(star.arms, row, values, seed)
    checks = []
    if check_jacobian:
        ivs = default_variable_set(block, block.assignment)
        checks.append(check_star_jacobian(block, ivs))
    A = block.matrix()
    expected = np.repeat([v for v, (m, _) in zip(values, row.entries) if m > 0],
                         [m for m, _ in row.entries if m > 0])
    res = RealizationResult(
        matrix=A,
        residual=_spectral_error(A, expected),
        min_edge=_min_edge(A, expand(LinearTreeSpec((star,), ()))),
        iterations=0,
        seed=seed,
        jacobian_checks=checks,
    )
    res.block = block
    return res


# -- linear trees --------------------------------------------------------------


def column_values(table: LspTable, eigenvalues: Sequence[float]) -> np.ndarray:
    """A number for every table column: targets on nonzero columns, evenly
    spaced points in the gaps for zero-sum columns."""
    sums = table.sums
    ev = list(map(float, eigenvalues))
    nz = [c for c, s in enumerate(sums) if s > 0]
    if len(nz) != len(ev):
        raise ValueError(f"{len(ev)} eigenvalues for {len(nz)} nonzero columns")
    vals = np.empty(len(sums))
    for c, x in zip(nz, ev):
        vals[c] = x
    for a, b in zip(nz, nz[1:]):
        gap = b - a
        for t in range(1, gap):
            vals[a + t] = vals[a] + (vals[b] - vals[a]) * t / gap
    return vals


@dataclass
class _Condition:
    value: float
    segment: np.ndarray  # boolean mask over vertices


class _TreeProblem:
    def __init__(self, tree: LinearTreeSpec, target: SpectrumTarget, seed: int):
        self.tree = tree
        self.graph = expand(tree)
        self.adj = self.graph.adjacency()
        self.lay = layout(tree)
        self.target = target
        self.seed = seed
        table = target.table
        self.values = column_values(table, target.eigenvalues)
        n = tree.vertex_count

        self.stars: list[StarBlock] = []
        self.star_ivs: list[ImplicitVariableSet] = []
        self.checks: list[JacobianCheck] = []
        for i, star in enumerate(tree.stars):
            row = table.star_row(i)
            cols = [c for c, cell in enumerate(row) if cell is not None]
            lst = table.star_list(i)
            block = _star_from_closed_form(star.arms, lst, self.values[cols], seed)
            self.stars.append(block)
            ivs = default_variable_set(block, block.assignment)
            self.star_ivs.append(ivs)

        # path vertices get the values of their columns, in order along the path
        self.path_diag = []
        for j in range(len(tree.paths)):
            cols = [c for c, cell in enumerate(table.path_row(j)) if cell is not None]
            self.path_diag.append(self.values[cols])

        base = np.zeros((n, n))
        for i, block in enumerate(self.stars):
            idx = list(self.lay.star_vertices(i))
            base[np.ix_(idx, idx)] = block.matrix()
        for j, verts in enumerate(self.lay.paths):
            for v, x in zip(verts, self.path_diag[j]):
                base[v, v] = x
        self.base = base
        self.coupling = []
        for j, verts in enumerate(self.lay.paths):
            chain = (self.lay.centers[j],) + verts + (self.lay.centers[j + 1],)
            self.coupling += list(zip(chain[:-1], chain[1:]))

        self.conditions = self._conditions(table)
        nvar = sum(iv.count for iv in self.star_ivs) + sum(len(p) for p in self.lay.paths)
        if nvar != len(self.conditions):
            raise RealizationError(f"{nvar} variables for {len(self.conditions)} conditions")

    def _conditions(self, table: LspTable) -> list[_Condition]:
        n = self.tree.vertex_count
        conds = []
        for c in range(table.columns):
            removed = [
                self.lay.centers[i]
                for i in range(len(self.tree.stars))
                if table.star_row(i)[c] is not None and table.star_row(i)[c][1]
            ]
            alive = np.ones(n, dtype=bool)
            alive[removed] = False
            for i in range(len(self.tree.stars)):
                cell = table.star_row(i)[c]
                if cell is not None and not cell[1]:
                    conds.append(_Condition(self.values[c], self._component(alive, self.lay.centers[i])))
            for j in range(len(self.tree.paths)):
                if table.path_row(j)[c] is not None:
                    conds.append(_Condition(self.values[c], self._component(alive, self.lay.paths[j][0])))
        return conds

    def _component(self, alive, start) -> np.ndarray:
        mask = np.zeros(len(alive), dtype=bool)
        mask[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if alive[w] and not mask[w]:
                    mask[w] = True
                    stack.append(w)
        return mask

    # variables: per star (a0, designated a_j, etas), then path diagonals
    def initial_vars(self) -> np.ndarray:
        z = [b.variables(iv) for b, iv in zip(self.stars, self.star_ivs)]
        z += [p for p in self.path_diag]
        return np.concatenate(z) if z else np.zeros(0)

    def assemble(self, z, eps) -> tuple[np.ndarray, list[StarBlock]]:
        A = self.base.copy()
        pos = 0
        blocks = []
        for i, (b, iv) in enumerate(zip(self.stars, self.star_ivs)):
            nb = b.with_variables(iv, z[pos : pos + iv.count])
            pos += iv.count
            idx = list(self.lay.star_vertices(i))
            A[np.ix_(idx, idx)] = nb.matrix()
            blocks.append(nb)
        for verts in self.lay.paths:
            for v in verts:
                A[v, v] = z[pos]
                pos += 1
        for u, v in self.coupling:
            A[u, v] = A[v, u] = eps
        return A, blocks

    def forest_det(self, A, mask, t) -> float:
        seen = np.zeros(len(mask), dtype=bool)
        total = 1.0
        for v in np.flatnonzero(mask):
            if seen[v]:
                continue
            comp = self._component(mask, v)
            seen |= comp
            total *= subtree_char_polys(A, self.adj, int(v), t, alive=mask)[0]
        return total

    def residual(self, A) -> np.ndarray:
        return np.array([self.forest_det(A, c.segment, c.value) for c in self.conditions])

    def jacobian(self, A, blocks, z, eps) -> np.ndarray:
        m = len(self.conditions)
        J = np.zeros((m, len(z)))
        col = 0
        for i, (b, iv) in enumerate(zip(blocks, self.star_ivs)):
            center = self.lay.centers[i]
            offs = [self.lay.arms[i][j][0] for j in range(len(b.arms))]
            J[:, col] = self._diag_column(A, center)
            col += 1
            for j, idx in iv.designated:
                J[:, col] = self._edge_column(A, center, offs[j])
                col += 1
                for k in idx:
                    zp, zm = z.copy(), z.copy()
                    g, e = b.gammas[j], b.etas[j]
                    step = 1e-6 * min(e[k] - g[k], g[k + 1] - e[k])
                    zp[col] += step
                    zm[col] -= step
                    Fp = self.residual(self.assemble(zp, eps)[0])
                    Fm = self.residual(self.assemble(zm, eps)[0])
                    J[:, col] = (Fp - Fm) / (2 * step)
                    col += 1
        for verts in self.lay.paths:
            for v in verts:
                J[:, col] = self._diag_column(A, v)
                col += 1
        return J

    def _diag_column(self, A, v) -> np.ndarray:
        out = np.zeros(len(self.conditions))
        for r, c in enumerate(self.conditions):
            if c.segment[v]:
                mask = c.segment.copy()
                mask[v] = False
                out[r] = -self.forest_det(A, mask, c.value)
        return out

    def _edge_column(self, A, u, v) -> np.ndarray:
        out = np.zeros(len(self.conditions))
        for r, c in enumerate(self.conditions):
            if c.segment[u] and c.segment[v]:
                mask = c.segment.copy()
                mask[u] = mask[v] = False
                out[r] = -2.0 * A[u, v] * self.forest_det(A, mask, c.value)
        return out

    def feasible(self, z) -> bool:
        pos = 0
        for b, iv in zip(self.stars, self.star_ivs):
            zz = z[pos : pos + iv.count]
            pos += iv.count
            k = 1
            for j, idx in iv.designated:
                if abs(zz[k]) < EDGE_FLOOR:
                    return False
                k += 1
                eta = b.etas[j].copy()
                for t in idx:
                    eta[t] = zz[k]
                    k += 1
                g = b.gammas[j]
                if len(eta) and not (np.all(g[:-1] < eta) and np.all(eta < g[1:])):
                    return False
        return True


def _newton(problem: _TreeProblem, eps: float, tol: float = 1e-13):
    z = problem.initial_vars()
    A, blocks = problem.assemble(z, eps)
    J = problem.jacobian(A, blocks, z, eps)
    scale = np.linalg.norm(J, axis=1)
    scale[scale == 0] = 1.0
    F = problem.residual(A) / scale
    norm = np.linalg.norm(F, np.inf)
    for it in range(1, MAX_NEWTON + 1):
        if norm <= tol:
            return z, A, it - 1
        try:
            step = np.linalg.solve(J / scale[:, None], -F)
        except np.linalg.LinAlgError:
            return None
        t = 1.0
        while t > 1e-10:
            zn = z + t * step
            if problem.feasible(zn):
                An, bn = problem.assemble(zn, eps)
                Fn = problem.residual(An) / scale
                nn = np.linalg.norm(Fn, np.inf)
                if nn < norm or nn <= tol:
                    break
            t *= 0.5
        else:
            return None
        z, A, blocks, F, norm = zn, An, bn, Fn, nn
        # rebase the star blocks so eta finite differences use current values
        J = problem.jacobian(A, blocks, z, eps) if norm > tol else J
    return (z, A, MAX_NEWTON) if norm <= tol else None


def realize(tree: LinearTreeSpec, target: SpectrumTarget, seed: int = 0, tol: float = 1e-8) -> RealizationResult:
    """A matrix with graph ``expand(tree)`` and spectrum ``target``."""
    ok, why = validate_table(target.table)
    if not ok:
        raise ValueError(f"invalid certificate table: {why}")
    if target.table.tree != tree:
        raise ValueError("target table belongs to a different tree")
    g = expand(tree)
    expected = target.expanded()

    if len(tree.stars) == 1:
        star = tree.stars[0]
        vals = column_values(target.table, target.eigenvalues)
        row = target.table.star_list(0)
        cols = [c for c, cell in enumerate(target.table.star_row(0)) if cell is not None]
        if star.degree == 1:
            lam = [vals[c] for c, (m, up) in zip(cols, row.entries) if not up]
            mu = [vals[c] for c, (m, up) in zip(cols, row.entries) if up]
            A = reconstruct(lam, mu, delete="first").to_dense()
            return _checked(RealizationResult(A, _spectral_error(A, expected), _min_edge(A, g), 0, seed=seed), g, target)
        res = realize_gstar(star, row, vals[cols], seed=seed)
        res.residual = _spectral_error(res.matrix, expected)
        res.min_edge = _min_edge(res.matrix, g)
        return _checked(res, g, target)

    problem = _TreeProblem(tree, target, seed)
    checks = [check_star_jacobian(b, iv) for b, iv in zip(problem.stars, problem.star_ivs)]
    spread = float(expected.max() - expected.min()) or 1.0
    eps = 1e-2 * spread
    best = math.inf
    while eps >= EPS_FLOOR:
        out = _newton(problem, eps)
        if out is not None:
            z, A, its = out
            err = _spectral_error(A, expected)
            best = min(best, err)
            if err <= tol and _min_edge(A, g) >= EDGE_FLOOR:
                res = RealizationResult(A, err, _min_edge(A, g), its, eps=eps, seed=seed, jacobian_checks=checks)
                return _checked(res, g, target)
        eps *= 0.5
    raise RealizationError(f"no convergence down to eps={EPS_FLOOR:g}; best spectral error {best:.3g}")


def _checked(res: RealizationResult, g: TreeGraph, target: SpectrumTarget) -> RealizationResult:
    from .verify import verify_realization

    rep = verify_realization(res.matrix, g, target)
    if not rep.ok:
        raise RealizationError("; ".join(rep.failures))
    return res


def matrix_to_json(A: np.ndarray) -> dict:
    """Lower triangle (with diagonal), nonzero entries only."""
    n = A.shape[0]
    entries = [[i, j, float(A[i, j])] for i in range(n) for j in range(i + 1) if A[i, j] != 0 or i == j]
    return {"n": n, "entries": entries}


def matrix_from_json(obj: dict) -> np.ndarray:
    n = int(obj["n"])
    A = np.zeros((n, n))
    for i, j, x in obj["entries"]:
        A[i, j] = A[j, i] = float(x)
    return A
