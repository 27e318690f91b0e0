"""Jacobi matrices from two interlacing spectra, and tree characteristic polynomials.

Given the spectrum ``omega`` of a Jacobi matrix ``J`` and the spectrum
``mu`` of ``J`` with one end row/column removed, the first (or last)
components of the eigenvectors of ``J`` are fixed:

    w_i = prod_j (omega_i - mu_j) / prod_{k != i} (omega_i - omega_k)

and Lanczos on ``diag(omega)`` started from ``sqrt(w)`` rebuilds ``J``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "InterlacingError",
    "JacobiMatrix",
    "SpectralPair",
    "spectral_weights",
    "reconstruct",
    "char_poly_neighbors",
    "subtree_char_polys",
    "check_interlacing",
]


class InterlacingError(ValueError):
    pass


@dataclass(frozen=True)
class JacobiMatrix:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float).copy()
        e = np.asarray(self.offdiag, dtype=float).copy()
        if e.shape != (max(len(d) - 1, 0),):
            raise ValueError(f"need {len(d) - 1} off-diagonal entries, got {e.shape}")
        if np.any(e <= 0):
            raise ValueError("Jacobi off-diagonal entries must be positive")
        d.flags.writeable = False
        e.flags.writeable = False
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.to_dense())

    def reversed(self) -> "JacobiMatrix":
        return JacobiMatrix(self.diag[::-1], self.offdiag[::-1])


@dataclass(frozen=True)
class SpectralPair:
    omega: tuple[float, ...]
    mu: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(float(x) for x in self.omega))
        object.__setattr__(self, "mu", tuple(float(x) for x in self.mu))
        _check_strict(self.omega, self.mu)


def _check_strict(omega: Sequence[float], mu: Sequence[float]) -> None:
    n = len(omega)
    if n == 0:
        raise InterlacingError("omega is empty")
    if len(mu) != n - 1:
        raise InterlacingError(f"need {n - 1} values in mu, got {len(mu)}")
    merged = []
    for i in range(n):
        merged.append(("omega", i, omega[i]))
        if i < n - 1:
            merged.append(("mu", i, mu[i]))
    for (na, ia, a), (nb, ib, b) in zip(merged, merged[1:]):
        if not a < b:
            raise InterlacingError(
                f"strict interlacing fails at {na}[{ia}] = {a!r} vs {nb}[{ib}] = {b!r}"
            )


def spectral_weights(omega: Sequence[float], mu: Sequence[float]) -> np.ndarray:
    """Normalized weights of the discrete measure; positive under strict interlacing."""
    om = np.asarray(omega, dtype=float)
    mu = np.asarray(mu, dtype=float)
    n = len(om)
    if n == 1:
        return np.ones(1)
    num = om[:, None] - mu[None, :]
    diff = om[:, None] - om[None, :]
    np.fill_diagonal(diff, 1.0)
    if n > 8:
        # log-magnitude plus sign keeps long products from under/overflowing
        sign = np.prod(np.sign(num), axis=1) * np.prod(np.sign(diff), axis=1)
        logw = np.sum(np.log(np.abs(num)), axis=1) - np.sum(np.log(np.abs(diff)), axis=1)
        logw -= logw.max()
        w = sign * np.exp(logw)
    else:
        w = np.prod(num, axis=1) / np.prod(diff, axis=1)
    if np.any(w <= 0):
        bad = int(np.argmin(w))
        raise InterlacingError(f"reconstruction weight {bad} is not positive ({w[bad]!r})")
    return w / w.sum()


def _lanczos(nodes: np.ndarray, weights: np.ndarray) -> JacobiMatrix:
    n = len(nodes)
    Q = np.zeros((n, n))
    alpha = np.zeros(n)
    beta = np.zeros(max(n - 1, 0))
    q = np.sqrt(weights)
    Q[:, 0] = q
    for k in range(n):
        v = nodes * Q[:, k]
        alpha[k] = Q[:, k] @ v
        if k == n - 1:
            break
        v = v - alpha[k] * Q[:, k]
        if k > 0:
            v = v - beta[k - 1] * Q[:, k - 1]
        for _ in range(2):
            v = v - Q[:, : k + 1] @ (Q[:, : k + 1].T @ v)
        beta[k] = np.linalg.norm(v)
        if beta[k] <= 1e-300:
            raise InterlacingError("Lanczos breakdown: measure has fewer than n support points")
        Q[:, k + 1] = v / beta[k]
    return JacobiMatrix(alpha, beta)


def reconstruct(omega, mu=None, delete: str = "last") -> JacobiMatrix:
    """The unique Jacobi matrix with spectrum ``omega`` whose submatrix has spectrum ``mu``.

    ``delete="last"`` removes the last row and column for the submatrix,
    ``delete="first"`` the first.  ``omega`` may be a :class:`SpectralPair`.
    """
    if isinstance(omega, SpectralPair):
        omega, mu = omega.omega, omega.mu
    if delete not in ("first", "last"):
        raise ValueError("delete must be 'first' or 'last'")
    omega = [float(x) for x in omega]
    mu = [] if mu is None else [float(x) for x in mu]
    _check_strict(omega, mu)
    w = spectral_weights(omega, mu)
    J = _lanczos(np.asarray(omega), w)
    return J if delete == "first" else J.reversed()


def _adjacency(tree):
    if hasattr(tree, "adjacency"):
        return tree.adjacency()
    return tree


def _check_pattern(A: np.ndarray, tree) -> None:
    n = A.shape[0]
    if A.shape != (n, n) or tree.n != n:
        raise ValueError(f"matrix shape {A.shape} does not match tree on {tree.n} vertices")
    mask = np.ones((n, n), dtype=bool)
    np.fill_diagonal(mask, False)
    for u, v in tree.edges:
        mask[u, v] = mask[v, u] = False
    if np.any(A[mask] != 0):
        i, j = np.argwhere(A * mask)[0]
        raise ValueError(f"entry ({i}, {j}) is nonzero but is not a tree edge")


def subtree_char_polys(A: np.ndarray, adj, root: int, t: float, parent: int = -1, alive=None):
    """``(p_S(t), p_{S - root}(t))`` for the subtree ``S`` hanging from ``root``.

    ``alive`` optionally restricts the walk to a vertex subset.
    """
    order, par = [root], {root: parent}
    for v in order:
        for w in adj[v]:
            if w != par[v] and (alive is None or alive[w]):
                par[w] = v
                order.append(w)
    P, Q = {}, {}
    for v in reversed(order):
        kids = [w for w in adj[v] if w != par[v] and w in par and par[w] == v]
        prod_all = 1.0
        for w in kids:
            prod_all *= P[w]
        total = (t - A[v, v]) * prod_all
        for w in kids:
            others = 1.0
            for x in kids:
                if x != w:
                    others *= P[x]
            total -= A[v, w] ** 2 * Q[w] * others
        P[v], Q[v] = total, prod_all
    return P[root], Q[root]


def char_poly_neighbors(A, tree, v: int, t: float) -> float:
    """``det(tI - A)`` by expanding along vertex ``v`` and its neighbors."""
    A = np.asarray(A, dtype=float)
    _check_pattern(A, tree)
    return subtree_char_polys(A, _adjacency(tree), v, float(t))[0]


def check_interlacing(evals_a, evals_b, tol: float = 1e-9) -> bool:
    """``a_1 <= b_1 <= a_2 <= ... <= b_{n-1} <= a_n`` up to ``tol``."""
    a = np.sort(np.asarray(evals_a, dtype=float))
    b = np.sort(np.asarray(evals_b, dtype=float))
    if len(b) != len(a) - 1:
        return False
    return bool(np.all(a[:-1] <= b + tol) and np.all(b <= a[1:] + tol))
