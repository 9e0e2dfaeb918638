"""Antipodal distance-regular covers of complete graphs.

A cover on n fibers of size m is stored by its n x n grid of permutation
blocks.  An off-diagonal entry ``p`` encodes the permutation matrix whose
column t has its single 1 in row ``p[t]``; diagonal entries are ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import finite_field as ff
from .diagnostics import record
from .errors import (
    AxiomViolation,
    CapExceeded,
    DivisibilityFailure,
    InconsistentC,
    NotExactMode,
    NotPrime,
)


@dataclass(frozen=True)
class DracknAdjacency:
    n: int
    m: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(
            tuple(None if b is None else tuple(int(x) for x in b) for b in row) for row in self.blocks
        )
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_array(cls, perms: np.ndarray):
        """Build from an (n, n, m) integer array; diagonal entries are ignored."""
        n, _, m = perms.shape
        blocks = [[None if i == j else perms[i, j] for j in range(n)] for i in range(n)]
        return cls(n, m, blocks)

    def block(self, i: int, j: int) -> Optional[tuple]:
        return self.blocks[i][j]

    @cached_property
    def perm_array(self) -> np.ndarray:
        """(n, n, m) array with the identity placed on the diagonal."""
        out = np.empty((self.n, self.n, self.m), dtype=np.int64)
        ident = np.arange(self.m)
        for i, row in enumerate(self.blocks):
            for j, b in enumerate(row):
                out[i, j] = ident if i == j or b is None else b
        return out

    def permutation_matrix(self, i: int, j: int) -> np.ndarray:
        P = np.zeros((self.m, self.m), dtype=np.int64)
        b = self.blocks[i][j]
        if b is not None:
            P[list(b), range(self.m)] = 1
        return P

    def dense(self) -> np.ndarray:
        """The flattened (mn) x (mn) 0/1 adjacency matrix."""
        n, m = self.n, self.m
        A = np.zeros((n * m, n * m), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                A[i * m:(i + 1) * m, j * m:(j + 1) * m] = self.permutation_matrix(i, j)
        return A

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "blocks": [[None if b is None else list(b) for b in row] for row in self.blocks],
        }

    @classmethod
    def from_json(cls, doc: dict):
        n, m = int(doc["n"]), int(doc["m"])
        blocks = doc["blocks"]
        if len(blocks) != n or any(len(row) != n for row in blocks):
            raise AxiomViolation("D2", None, f"block grid is not {n} x {n}")
        return cls(n, m, blocks)


@dataclass(frozen=True)
class DracknParams:
    n: int
    m: int
    c: int
    delta: int
    disc: int
    theta: float
    tau: float

    @classmethod
    def from_nmc(cls, n: int, m: int, c: int):
        delta = n - m * c - 2
        disc = delta * delta + 4 * (n - 1)
        root = math.sqrt(disc)
        return cls(n, m, c, delta, disc, (delta + root) / 2, (delta - root) / 2)

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "c": self.c, "delta": self.delta,
            "disc": self.disc, "theta": self.theta, "tau": self.tau,
        }


class MathonLabels(NamedTuple):
    field: ff.FieldSpec
    reps: tuple  # line representatives u_k in GF(q)^2
    gamma: np.ndarray  # gamma[k, l] = dlog B(u_k, u_l); diagonal is -1


def mathon_labels(k: int) -> MathonLabels:
    F = ff.field_build(k)
    reps = tuple((1, x) for x in F.elements()) + ((0, 1),)
    n = len(reps)
    gamma = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if a != b:
                gamma[a, b] = ff.dlog(F, ff.symplectic(F, reps[a], reps[b]))
    gamma.setflags(write=False)
    return MathonLabels(F, reps, gamma)


def mathon_drackn(k: int) -> tuple[DracknAdjacency, MathonLabels]:
    """The symplectic cover on GF(2^k)^2 minus zero, fibered by lines.

    Vertex (line l, index i) is generator**i * u_l; two vertices are adjacent
    exactly when their symplectic product is 1.
    """
    labels = mathon_labels(k)
    q = labels.field.q
    n, m = q + 1, q - 1
    t = np.arange(m)
    perms = np.zeros((n, n, m), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if a != b:
                perms[a, b] = (-t - labels.gamma[a, b]) % m
    return DracknAdjacency.from_array(perms), labels


def _square_counts(A: DracknAdjacency) -> np.ndarray:
    """Blocks of A^2 as exact integer counts, shape (n, n, m, m)."""
    n, m = A.n, A.m
    P = A.perm_array
    # comp[i, j, k, t] = P[i, k][P[k, j][t]]
    comp = np.take_along_axis(P[:, None, :, :], P.transpose(1, 0, 2)[None, :, :, :], axis=3)
    ii, jj, kk = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    keep = (kk != ii) & (kk != jj)
    counts = np.zeros((n, n, m, m), dtype=np.int64)
    I, J, K = ii[keep], jj[keep], kk[keep]
    rows = comp[I, J, K]  # (len, m)
    cols = np.broadcast_to(np.arange(m), rows.shape)
    np.add.at(
        counts,
        (np.repeat(I, m), np.repeat(J, m), rows.ravel(), cols.ravel()),
        1,
    )
    return counts


def verify_drackn(A: DracknAdjacency, c: Optional[int] = None, diagnostics: Optional[list] = None) -> DracknParams:
    """Check (D1)-(D4) in exact integer arithmetic and return (n, m, c).

    ``c`` is inferred from the off-support entries of an off-diagonal block
    of A^2.  When m = 1 there are no such entries and c is vacuous; pass it
    explicitly or it defaults to 1.
    """
    n, m = A.n, A.m
    if n < 2 or m < 1:
        raise AxiomViolation("D2", None, f"degenerate sizes n={n}, m={m}")
    for i in range(n):
        if A.blocks[i][i] is not None:
            raise AxiomViolation("D1", (i, i), "diagonal block is nonzero")
    record(diagnostics, "D1", None, 0, 0)
    target = list(range(m))
    for i in range(n):
        for j in range(n):
            b = A.blocks[i][j]
            if i != j and (b is None or len(b) != m or sorted(b) != target):
                raise AxiomViolation("D2", (i, j), "block is not a permutation matrix")
    record(diagnostics, "D2", None, 0, 0)
    for i in range(n):
        for j in range(i + 1, n):
            fwd, back = A.blocks[i][j], A.blocks[j][i]
            for t in range(m):
                if back[fwd[t]] != t:
                    raise AxiomViolation("D3", (j, i), f"not the transpose of block ({i}, {j})")
    record(diagnostics, "D3", None, 0, 0)

    counts = _square_counts(A)
    P = A.perm_array
    support = np.zeros((n, n, m, m), dtype=bool)
    ar = np.arange(m)
    for i in range(n):
        for j in range(n):
            if i != j:
                support[i, j, P[i, j], ar] = True
    offdiag = ~np.eye(n, dtype=bool)[:, :, None, None] & ~support

    if c is None:
        c = int(counts[0, 1][~support[0, 1]][0]) if m > 1 else 1
    bad = np.argwhere(offdiag & (counts != c))
    if len(bad):
        i, j, a, b = (int(x) for x in bad[0])
        raise InconsistentC(
            f"A^2 block ({i}, {j}) entry ({a}, {b}) is {counts[i, j, a, b]}, expected c={c}"
        )
    if c < 1:
        raise InconsistentC(f"c={c} is not positive; the graph is not a connected cover")
    delta = n - m * c - 2
    bad = np.argwhere(support & (counts != delta + c))
    if len(bad):
        i, j, a, b = (int(x) for x in bad[0])
        raise AxiomViolation("D4", (i, j, a, b), f"A^2 entry {counts[i, j, a, b]} != delta + c = {delta + c}")
    diag = counts[np.arange(n), np.arange(n)]
    expect = (n - 1) * np.eye(m, dtype=np.int64)
    bad = np.argwhere(diag != expect)
    if len(bad):
        i, a, b = (int(x) for x in bad[0])
        raise AxiomViolation("D4", (i, i, a, b), "diagonal block of A^2 is not (n-1)I")
    record(diagnostics, "D4", None, 0, 0)
    return DracknParams.from_nmc(n, m, c)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def conference_to_drackn(C, p: int) -> DracknAdjacency:
    """Cover with blocks T^l(i,j) R built from a p-th-root conference matrix.

    T is the translation e_i -> e_{i+1} and R the reversal e_i -> e_{-i} on
    Z_p, so each block is the permutation t -> l(i, j) - t.
    """
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if getattr(C, "modulus", None) is None:
        raise NotExactMode("conference matrix has no root-of-unity exponent storage")
    n = C.n
    if (n - 2) % p:
        raise DivisibilityFailure(f"p={p} does not divide n-2={n - 2}")
    if C.modulus != p:
        raise NotExactMode(f"exponents are stored modulo {C.modulus}, not p={p}")
    E = np.asarray(C.exponents)
    t = np.arange(p)
    perms = np.zeros((n, n, p), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i != j:
                perms[i, j] = (E[i, j] - t) % p
    A = DracknAdjacency.from_array(perms)
    verify_drackn(A)
    return A


class GroupClosure(NamedTuple):
    group: frozenset
    transitive: bool
    abelian: bool


def _compose(g: Sequence[int], h: Sequence[int]) -> tuple:
    return tuple(g[x] for x in h)


def _inverse(g: Sequence[int]) -> tuple:
    inv = [0] * len(g)
    for t, x in enumerate(g):
        inv[x] = t
    return tuple(inv)


def block_orbit(A: DracknAdjacency, point: int = 0) -> frozenset:
    """Orbit of ``point`` under the block permutations."""
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for i in range(A.n):
            for j in range(A.n):
                if i != j:
                    y = A.blocks[i][j][x]
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
    return frozenset(seen)


def block_group_closure(A: DracknAdjacency, cap: Optional[int] = None) -> GroupClosure:
    """Permutation group generated by the off-diagonal blocks."""
    m = A.m
    cap = 10 * m * m if cap is None else cap
    gens = set()
    for i in range(A.n):
        for j in range(A.n):
            if i != j:
                b = tuple(A.blocks[i][j])
                gens.add(b)
                gens.add(_inverse(b))
    gens = sorted(gens)
    identity = tuple(range(m))
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _compose(s, g)
                if h not in group:
                    group.add(h)
                    if len(group) > cap:
                        raise CapExceeded(f"group generated by the blocks exceeds {cap} elements")
                    nxt.append(h)
        frontier = nxt
    abelian = all(_compose(a, b) == _compose(b, a) for a in gens for b in gens)
    return GroupClosure(frozenset(group), len(block_orbit(A)) == m, abelian)
