"""Block matrices, a Hermitian Jacobi eigensolver and spectrum clustering.

Matrices are plain numpy arrays; the eigensolver itself only uses numpy for
elementwise row/column updates, not for any factorization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AmbiguousClustering, NoConvergence, NotHermitian

DEFAULT_TOL = 1e-9
MAX_SWEEPS = 100


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """An n x n grid of r x r blocks, stored as an array of shape (n, n, r, r)."""

    blocks: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.blocks)
        if b.ndim != 4 or b.shape[0] != b.shape[1] or b.shape[2] != b.shape[3]:
            raise ValueError(f"block array must have shape (n, n, r, r), got {b.shape}")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "blocks", b)

    @property
    def n(self) -> int:
        return self.blocks.shape[0]

    @property
    def r(self) -> int:
        return self.blocks.shape[2]

    def block(self, i: int, j: int) -> np.ndarray:
        return self.blocks[i, j]

    def flat(self) -> np.ndarray:
        n, r = self.n, self.r
        return self.blocks.transpose(0, 2, 1, 3).reshape(n * r, n * r)

    @classmethod
    def from_flat(cls, X: np.ndarray, r: int):
        X = np.asarray(X)
        N = X.shape[0]
        if X.shape != (N, N) or N % r:
            raise ValueError(f"cannot cut a {X.shape} matrix into {r} x {r} blocks")
        n = N // r
        return cls(X.reshape(n, r, n, r).transpose(0, 2, 1, 3))

    def is_real(self, tol: float = DEFAULT_TOL) -> bool:
        return not np.iscomplexobj(self.blocks) or float(np.max(np.abs(self.blocks.imag), initial=0.0)) <= tol


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue clusters (value, multiplicity) in descending order."""

    clusters: tuple
    tolerance: float

    @property
    def values(self) -> tuple:
        return tuple(v for v, _ in self.clusters)

    @property
    def order(self) -> int:
        return sum(m for _, m in self.clusters)

    def multiplicity(self, value: float, tol: float | None = None) -> int:
        tol = self.tolerance if tol is None else tol
        return sum(m for v, m in self.clusters if abs(v - value) <= tol)

    def __len__(self) -> int:
        return len(self.clusters)


@lru_cache(maxsize=64)
def _round_robin(n: int) -> tuple:
    """Disjoint index pairs covering every (p, q), grouped into rounds."""
    N = n + (n % 2)
    players = list(range(N))
    rounds = []
    for _ in range(N - 1):
        pairs = []
        for i in range(N // 2):
            p, q = players[i], players[N - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        if pairs:
            P = np.array([a for a, _ in pairs])
            Q = np.array([b for _, b in pairs])
            rounds.append((P, Q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _check_hermitian(H: np.ndarray, tol: float) -> np.ndarray:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise NotHermitian(f"matrix of shape {H.shape} is not square")
    dev = float(np.max(np.abs(H - H.conj().T), initial=0.0))
    if dev > tol:
        raise NotHermitian(f"max |H - H*| = {dev:.3e} exceeds {tol:.1e}")
    return H


def _normalize_phase(v: np.ndarray) -> np.ndarray:
    # first clearly nonzero entry made real and positive, for reproducible output
    mags = np.abs(v)
    idx = int(np.argmax(mags > 1e-8 * mags.max()))
    z = v[idx]
    return v * (abs(z) / z)


def hermitian_eigen(H, tol: float = DEFAULT_TOL):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Rotations are applied in round-robin order so that every round rotates
    disjoint index pairs at once. Returns ``(w, V)`` with eigenvalues ``w``
    sorted descending and orthonormal eigenvectors in the columns of ``V``.
    """
    H = _check_hermitian(H, tol)
    n = H.shape[0]
    cplx = np.iscomplexobj(H)
    dtype = complex if cplx else float
    A = ((H + H.conj().T) / 2).astype(dtype)
    V = np.eye(n, dtype=dtype)
    if n == 0:
        return np.zeros(0), V

    fro = float(np.linalg.norm(A))
    target = 1e-15 * fro
    rounds = _round_robin(n)
    for sweep in range(MAX_SWEEPS + 1):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= target or off == 0.0:
            break
        if sweep == MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off-norm {off:.3e})")
        for P, Q in rounds:
            apq = A[P, Q]
            g = np.abs(apq)
            active = g > 1e-300
            if not active.any():
                continue
            gs = np.where(active, g, 1.0)
            e = np.where(active, apq / gs, 1.0)
            app = A[P, P].real
            aqq = A[Q, Q].real
            theta = (aqq - app) / (2.0 * gs)
            sgn = np.where(theta >= 0, 1.0, -1.0)
            t = sgn / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ec = e.conj()

            cp, cq = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = cp * c - cq * (s * ec)
            A[:, Q] = cp * s + cq * (c * ec)
            rp, rq = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = c[:, None] * rp - (s * e)[:, None] * rq
            A[Q, :] = s[:, None] * rp + (c * e)[:, None] * rq
            A[P, Q] = 0.0
            A[Q, P] = 0.0

            vp, vq = V[:, P].copy(), V[:, Q].copy()
            V[:, P] = vp * c - vq * (s * ec)
            V[:, Q] = vp * s + vq * (c * ec)

    w = np.diag(A).real.copy()
    cols = [_normalize_phase(V[:, j]) for j in range(n)]

    def key(j):
        v = cols[j]
        return (-w[j], tuple(np.round(v.real, 12)), tuple(np.round(v.imag, 12)) if cplx else ())

    order = sorted(range(n), key=key)
    return w[order], np.column_stack([cols[j] for j in order])


def eigvalsh(H, tol: float = DEFAULT_TOL) -> np.ndarray:
    return hermitian_eigen(H, tol)[0]


def cluster_eigenvalues(values, tol: float = DEFAULT_TOL) -> Spectrum:
    """Group sorted eigenvalues whose successive gaps are at most ``tol``."""
    vals = sorted((float(v) for v in values), reverse=True)
    groups: list[list[float]] = []
    for v in vals:
        if groups and groups[-1][-1] - v <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    clusters = tuple((math.fsum(g) / len(g), len(g)) for g in groups)
    reps = [v for v, _ in clusters]
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if abs(reps[a] - reps[b]) <= 2 * tol:
                raise AmbiguousClustering(
                    f"cluster representatives {reps[a]!r} and {reps[b]!r} lie within 2*tol"
                )
    return Spectrum(clusters, tol)


def singular_values(X, tol: float = DEFAULT_TOL) -> np.ndarray:
    X = np.asarray(X)
    w = eigvalsh(X.conj().T @ X, tol=max(tol, 1e-12 * (1.0 + float(np.abs(X).max(initial=0.0)) ** 2)))
    return np.sqrt(np.clip(w, 0.0, None))
