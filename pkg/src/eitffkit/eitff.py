"""Signature matrices of equi-isoclinic tight fusion frames.

A signature matrix has zero diagonal blocks, unitary off-diagonal blocks
paired by conjugate transposition, and exactly two eigenvalues.  From it we
recover the fusion Gram matrix, factor that into explicit orthonormal
bases, and certify the frame directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .diagnostics import record
from .errors import AxiomViolation, NotIsoclinic, NotScaledProjection, NotTight, NotTwoEigenvalues
from .numerics import (
    DEFAULT_TOL,
    BlockMatrix,
    cluster_eigenvalues,
    complex_from_json,
    complex_to_json,
    hermitian_eigen,
    singular_values,
)

CLUSTER_TOL = 1e-6


class SignatureMatrix(BlockMatrix):
    @property
    def real_flag(self) -> bool:
        return self.is_real()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "blocks": [
                [[[complex_to_json(z) for z in row] for row in self.blocks[i, j]] for j in range(self.n)]
                for i in range(self.n)
            ],
        }

    @classmethod
    def from_json(cls, doc: dict):
        n, r = int(doc["n"]), int(doc["r"])
        arr = np.array(
            [[[[complex_from_json(z) for z in row] for row in blk] for blk in brow] for brow in doc["blocks"]],
            dtype=complex,
        ).reshape(n, n, r, r)
        if not np.any(arr.imag):
            arr = arr.real
        return cls(arr)


@dataclass(frozen=True)
class EitffParams:
    d: int
    n: int
    r: int
    lambda_plus: float
    lambda_minus: float

    @property
    def redundancy(self) -> float:
        return self.r * self.n / self.d

    def to_json(self) -> dict:
        return {
            "d": self.d, "n": self.n, "r": self.r,
            "lambda_plus": self.lambda_plus, "lambda_minus": self.lambda_minus,
            "redundancy": self.redundancy,
        }


def verify_signature(
    S: SignatureMatrix,
    tol: float = DEFAULT_TOL,
    cluster_tol: float = CLUSTER_TOL,
    diagnostics: Optional[list] = None,
) -> EitffParams:
    """Check (S1)-(S4) and read off (d, n, r)."""
    n, r = S.n, S.r
    B = S.blocks
    worst = 0.0
    for i in range(n):
        dev = float(np.abs(B[i, i]).max())
        if dev > tol:
            raise AxiomViolation("S1", (i, i), f"diagonal block has entry of size {dev:.3e}")
        worst = max(worst, dev)
    record(diagnostics, "S1", None, worst, tol)

    worst = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                dev = float(np.abs(singular_values(B[i, j], tol) - 1.0).max())
                if dev > tol:
                    raise AxiomViolation("S2", (i, j), f"singular values off 1 by {dev:.3e}")
                worst = max(worst, dev)
    record(diagnostics, "S2", None, worst, tol)

    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            dev = float(np.abs(B[j, i] - B[i, j].conj().T).max())
            if dev > tol:
                raise AxiomViolation("S3", (j, i), f"not the adjoint of block ({i}, {j}); deviation {dev:.3e}")
            worst = max(worst, dev)
    record(diagnostics, "S3", None, worst, tol)

    w, _ = hermitian_eigen(S.flat(), tol)
    spec = cluster_eigenvalues(w, cluster_tol)
    reps = np.array(spec.values)
    spread = float(np.abs(w[:, None] - reps[None, :]).min(axis=1).max())
    if len(spec) != 2 or not (spec.clusters[0][0] > 0 > spec.clusters[1][0]):
        raise NotTwoEigenvalues(len(spec), spec.values)
    record(diagnostics, "S4", None, spread, cluster_tol)
    (lp, d), (lm, _) = spec.clusters
    return EitffParams(d, n, r, lp, lm)


def expected_params(p, r: int) -> EitffParams:
    """Parameters predicted for lifting a cover with parameters ``p`` at degree r."""
    d = round(r * p.n * abs(p.tau) / (p.theta - p.tau))
    return EitffParams(d, p.n, r, p.theta, p.tau)


def gram_from_signature(S: SignatureMatrix, tol: float = DEFAULT_TOL) -> tuple[BlockMatrix, float]:
    """Fusion Gram matrix I - S/lambda_min and its scale beta."""
    params = verify_signature(S, tol)
    N = S.n * S.r
    G = np.eye(N) - S.flat() / params.lambda_minus
    beta = 1.0 - params.lambda_plus / params.lambda_minus
    return BlockMatrix.from_flat(G, S.r), beta


@dataclass(frozen=True, eq=False)
class FusionFrame:
    """Synthesis matrix M (d x rn) split into n blocks of r columns."""

    d: int
    n: int
    r: int
    M: np.ndarray
    alpha: float
    beta: float

    def block(self, i: int) -> np.ndarray:
        return self.M[:, i * self.r:(i + 1) * self.r]

    def to_json(self) -> dict:
        return {
            "d": self.d, "n": self.n, "r": self.r, "alpha": self.alpha, "beta": self.beta,
            "M": [[complex_to_json(z) for z in row] for row in self.M],
        }

    @classmethod
    def from_json(cls, doc: dict):
        M = np.array([[complex_from_json(z) for z in row] for row in doc["M"]], dtype=complex)
        if not np.any(M.imag):
            M = M.real
        return cls(int(doc["d"]), int(doc["n"]), int(doc["r"]), M, float(doc["alpha"]), float(doc["beta"]))


def factor_gram(G: BlockMatrix, beta: float, tol: float = DEFAULT_TOL) -> FusionFrame:
    """Factor G = M* M with M of full row rank d."""
    X = G.flat()
    n, r = G.n, G.r
    scale = max(1.0, float(np.linalg.norm(X)))
    if beta <= 1.0 + tol:
        raise NotScaledProjection(f"beta={beta} <= 1: mutually orthogonal subspaces are excluded")
    dev = float(np.linalg.norm(X @ X - beta * X))
    if dev > 10 * tol * beta * scale:
        raise NotScaledProjection(f"||G^2 - beta G||_F = {dev:.3e}")
    w, V = hermitian_eigen(X, tol)
    far = np.minimum(np.abs(w), np.abs(w - beta))
    if float(far.max()) > 1e3 * tol * beta * scale:
        raise NotScaledProjection(f"eigenvalue off {{0, beta}} by {float(far.max()):.3e}")
    keep = np.abs(w - beta) < beta / 2
    d = int(keep.sum())
    M = np.sqrt(w[keep])[:, None] * V[:, keep].conj().T
    if not np.iscomplexobj(X):
        M = M.real
    # G_ij = S_ij/|lambda_min| and lambda_min^2 = (n-1)/(beta-1) for any signature matrix
    alpha = math.sqrt((n - 1) / (beta - 1))
    return FusionFrame(d, n, r, M, alpha, beta)


@dataclass(frozen=True)
class EitffCertificate:
    d: int
    n: int
    r: int
    singular_value: float
    lambda_iso: float
    alpha: float
    beta: float
    real_flag: bool
    isoclinic_spread: float
    tight_deviation: float
    orthonormal_deviation: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def check_eitff(F: FusionFrame, tol: float = DEFAULT_TOL, diagnostics: Optional[list] = None) -> EitffCertificate:
    """Certify orthonormal blocks, equal principal angles and tightness."""
    d, n, r = F.d, F.n, F.r
    M = F.M
    beta = r * n / d
    tight = float(np.abs(M @ M.conj().T - beta * np.eye(d)).max())
    record(diagnostics, "tight", None, tight, tol)
    if tight > tol:
        raise NotTight(tight)

    ortho = max(float(np.abs(F.block(i).conj().T @ F.block(i) - np.eye(r)).max()) for i in range(n))
    record(diagnostics, "orthonormal", None, ortho, tol)
    if ortho > tol:
        raise NotTight(ortho)

    svs = {}
    for i in range(n):
        for j in range(i + 1, n):
            sv = singular_values(F.block(i).conj().T @ F.block(j), tol)
            spread = float(sv.max() - sv.min())
            if spread > tol:
                raise NotIsoclinic((i, j), spread)
            svs[(i, j)] = sv
    allsv = np.concatenate(list(svs.values())) if svs else np.zeros(1)
    spread = float(allsv.max() - allsv.min())
    record(diagnostics, "isoclinic", None, spread, tol)
    if spread > tol:
        raise NotIsoclinic("all", spread)
    s = float(allsv.mean())
    if s > 0 and abs(1.0 / s - F.alpha) > 1e3 * tol * F.alpha:
        raise NotIsoclinic("alpha", abs(1.0 / s - F.alpha))
    real = not np.iscomplexobj(M) or float(np.abs(M.imag).max()) <= tol
    return EitffCertificate(d, n, r, s, s * s, F.alpha, beta, real, spread, tight, ortho)
