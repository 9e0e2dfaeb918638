"""Dihedral group elements on Z_m, their real 2-dimensional irreps, and lifts
of a cover's permutation blocks to signature matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .drackn import DracknAdjacency, block_orbit
from .eitff import SignatureMatrix
from .errors import (
    EvenModulus,
    FiberTooSmall,
    IndexOutOfRange,
    NotAffine,
    NotTransitive,
    PreconditionError,
)

REFLECT = np.array([[1.0, 0.0], [0.0, -1.0]])


@dataclass(frozen=True)
class DihedralElement:
    """The bijection x -> eps*x + b of Z_m."""

    eps: int
    b: int
    m: int

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps}")
        object.__setattr__(self, "b", self.b % self.m)

    def __call__(self, x: int) -> int:
        return (self.eps * x + self.b) % self.m

    def __matmul__(self, other: "DihedralElement") -> "DihedralElement":
        # (self o other)(x) = self(other(x))
        return DihedralElement(self.eps * other.eps, self.eps * other.b + self.b, self.m)

    def as_permutation(self) -> tuple:
        return tuple(self(x) for x in range(self.m))

    @classmethod
    def identity(cls, m: int):
        return cls(1, 0, m)


def dihedral_group(m: int) -> list[DihedralElement]:
    return [DihedralElement(e, b, m) for e in (1, -1) for b in range(m)]


def match_affine(perm, m: int):
    """Return the dihedral element agreeing with ``perm``, or None."""
    b = perm[0]
    for eps in (1, -1):
        if all(perm[x] == (eps * x + b) % m for x in range(m)):
            return DihedralElement(eps, b, m)
    return None


def identify_dihedral(A: DracknAdjacency) -> list:
    """Grid of dihedral elements matching the off-diagonal blocks (diagonal None)."""
    m = A.m
    if m % 2 == 0:
        raise EvenModulus(f"fiber size m={m} is even")
    grid = []
    for i in range(A.n):
        row = []
        for j in range(A.n):
            if i == j:
                row.append(None)
                continue
            g = match_affine(A.blocks[i][j], m)
            if g is None:
                raise NotAffine((i, j))
            row.append(g)
        grid.append(row)
    return grid


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def irrep_matrix(m: int, k: int, g: DihedralElement) -> np.ndarray:
    """Image of g under the k-th 2-dimensional irrep of the dihedral group.

    x+1 goes to rotation by 2*pi*k/m and -x goes to diag(1, -1); an element
    x -> eps*x + b is the translation by b after the optional reflection.
    """
    if not 1 <= k <= (m - 1) // 2:
        raise IndexOutOfRange(f"irrep index k={k} outside [1, {(m - 1) // 2}] for m={m}")
    R = rotation(2 * math.pi * ((k * g.b) % m) / m)
    return R if g.eps == 1 else R @ REFLECT


@dataclass(frozen=True)
class RepSelection:
    """A set K of irrep indices; the lift is the direct sum over K."""

    m: int
    indices: tuple

    def __post_init__(self):
        if self.m % 2 == 0:
            raise EvenModulus(f"modulus m={self.m} is even")
        idx = tuple(sorted(set(int(k) for k in self.indices)))
        if not idx:
            raise IndexOutOfRange("irrep selection is empty")
        for k in idx:
            if not 1 <= k <= (self.m - 1) // 2:
                raise IndexOutOfRange(f"irrep index {k} outside [1, {(self.m - 1) // 2}]")
        object.__setattr__(self, "indices", idx)

    @property
    def degree(self) -> int:
        return 2 * len(self.indices)

    @classmethod
    def full(cls, m: int):
        return cls(m, tuple(range(1, (m - 1) // 2 + 1)))

    @classmethod
    def parse(cls, m: int, text: str):
        text = text.strip()
        if text == "all":
            return cls.full(m)
        try:
            idx = tuple(int(tok) for tok in text.split(",") if tok.strip())
        except ValueError:
            raise PreconditionError(f"cannot parse irrep list {text!r}") from None
        return cls(m, idx)


def _direct_sum(mats: list) -> np.ndarray:
    r = sum(M.shape[0] for M in mats)
    out = np.zeros((r, r))
    o = 0
    for M in mats:
        d = M.shape[0]
        out[o:o + d, o:o + d] = M
        o += d
    return out


def lift_dihedral(A: DracknAdjacency, sel: RepSelection) -> SignatureMatrix:
    if A.m == 1:
        raise FiberTooSmall("fibers of size 1 only carry the trivial representation")
    if sel.m != A.m:
        raise PreconditionError(f"selection is for m={sel.m}, cover has m={A.m}")
    grid = identify_dihedral(A)
    n, r = A.n, sel.degree
    blocks = np.zeros((n, n, r, r))
    for i in range(n):
        for j in range(n):
            if i != j:
                blocks[i, j] = _direct_sum([irrep_matrix(A.m, k, grid[i][j]) for k in sel.indices])
    return SignatureMatrix(blocks)


def complement_basis(m: int) -> np.ndarray:
    """Orthonormal basis (m x (m-1)) of the complement of the all-ones vector.

    Columns 2..m of the Householder reflector sending ones/sqrt(m) to e_1.
    """
    u = np.full(m, 1 / math.sqrt(m))
    v = u.copy()
    v[0] -= 1.0
    H = np.eye(m) - 2 * np.outer(v, v) / (v @ v)
    return H[:, 1:]


def lift_deleted_permutation(A: DracknAdjacency) -> SignatureMatrix:
    """Lift through the action on the complement of the all-ones vector."""
    if A.m == 1:
        raise FiberTooSmall("fibers of size 1 give a degree-0 representation")
    if len(block_orbit(A)) != A.m:
        raise NotTransitive("block group does not act transitively on the fiber")
    Q = complement_basis(A.m)
    n, r = A.n, A.m - 1
    blocks = np.zeros((n, n, r, r))
    for i in range(n):
        for j in range(n):
            if i != j:
                blocks[i, j] = Q.T @ A.permutation_matrix(i, j) @ Q
    return SignatureMatrix(blocks)
