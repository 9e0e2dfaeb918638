"""Complex symmetric conference matrices and their 2x2-block signature images."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .diagnostics import record
from .drackn import is_prime, mathon_labels
from .eitff import SignatureMatrix
from .errors import (
    AxiomViolation,
    DegenerateIrrep,
    ExactCountFailure,
    OutOfRange,
    WrongBlockShape,
)
from .numerics import DEFAULT_TOL, complex_from_json, complex_to_json

SHAPE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ConferenceMatrix:
    """Order-n matrix stored either as exponents of exp(2*pi*i/modulus) or numerically.

    Use :meth:`exact` or :meth:`numeric`; both reject asymmetric input and
    nonzero diagonals.  In exact mode the diagonal exponent is stored as -1.
    """

    n: int
    modulus: Optional[int] = None
    exponents: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None

    @classmethod
    def exact(cls, exponents, modulus: int):
        E = np.array(exponents, dtype=np.int64)
        n = E.shape[0]
        if E.shape != (n, n):
            raise AxiomViolation("C3", None, f"exponent array has shape {E.shape}")
        if modulus < 1:
            raise OutOfRange(f"modulus {modulus} must be positive")
        for i in range(n):
            if E[i, i] != -1:
                raise AxiomViolation("C1", (i, i), "diagonal exponent must be the sentinel -1")
        off = ~np.eye(n, dtype=bool)
        E[off] %= modulus
        bad = np.argwhere(E != E.T)
        if len(bad):
            raise AxiomViolation("C3", tuple(int(x) for x in bad[0]), "exponents not symmetric")
        E.setflags(write=False)
        return cls(n, modulus, E, None)

    @classmethod
    def numeric(cls, entries, tol: float = DEFAULT_TOL):
        C = np.array(entries, dtype=complex)
        n = C.shape[0]
        if C.shape != (n, n):
            raise AxiomViolation("C3", None, f"entry array has shape {C.shape}")
        for i in range(n):
            if abs(C[i, i]) > tol:
                raise AxiomViolation("C1", (i, i), f"diagonal entry {C[i, i]}")
        bad = np.argwhere(np.abs(C - C.T) > tol)
        if len(bad):
            raise AxiomViolation("C3", tuple(int(x) for x in bad[0]), "entries not symmetric")
        C.setflags(write=False)
        return cls(n, None, None, C)

    @property
    def is_exact(self) -> bool:
        return self.exponents is not None

    @property
    def entries(self) -> np.ndarray:
        if not self.is_exact:
            return self.values
        n, N = self.n, self.modulus
        C = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                if i != j:
                    e = int(self.exponents[i, j])
                    ang = 2 * math.pi * e / N
                    C[i, j] = complex(math.cos(ang), math.sin(ang))
        return C

    def conjugate(self) -> "ConferenceMatrix":
        if self.is_exact:
            E = np.where(np.eye(self.n, dtype=bool), -1, (-self.exponents) % self.modulus)
            return ConferenceMatrix.exact(E, self.modulus)
        return ConferenceMatrix.numeric(self.values.conj())

    def to_json(self) -> dict:
        if self.is_exact:
            return {"n": self.n, "modulus": self.modulus, "exponents": self.exponents.tolist()}
        return {"n": self.n, "entries": [[complex_to_json(z) for z in row] for row in self.values]}

    @classmethod
    def from_json(cls, doc: dict):
        if "exponents" in doc:
            C = cls.exact(doc["exponents"], int(doc["modulus"]))
        else:
            C = cls.numeric([[complex_from_json(z) for z in row] for row in doc["entries"]])
        if "n" in doc and int(doc["n"]) != C.n:
            raise AxiomViolation("C3", None, f"declared n={doc['n']} but matrix has order {C.n}")
        return C


def mathon_conference(k: int, a: int) -> ConferenceMatrix:
    """Exponents a * gamma[k, l] mod q-1 from the symplectic labels of GF(2^k)."""
    if not isinstance(k, int) or k < 2:
        raise OutOfRange(f"k={k!r} must be an integer > 1")
    labels = mathon_labels(k)
    m = labels.field.q - 1
    if a % m == 0:
        raise DegenerateIrrep(f"a={a} is 0 mod {m}; the representation would be trivial")
    G = labels.gamma
    E = np.where(np.eye(len(G), dtype=bool), -1, (a * G) % m)
    return ConferenceMatrix.exact(E, m)


def _exact_counts(C: ConferenceMatrix, diagnostics: Optional[list]) -> None:
    n, p = C.n, C.modulus
    E = C.exponents
    expected = (n - 2) / p
    for i in range(n):
        for j in range(i + 1, n):
            ks = [k for k in range(n) if k != i and k != j]
            counts = np.bincount((E[i, ks] - E[j, ks]) % p, minlength=p)
            for res, cnt in enumerate(counts):
                if cnt != expected:
                    raise ExactCountFailure(i, j, res, int(cnt), expected)
    record(diagnostics, "C4-exact", None, 0, 0)


def verify_conference(C: ConferenceMatrix, tol: float = DEFAULT_TOL, diagnostics: Optional[list] = None) -> int:
    """Check (C1)-(C4); returns the order n.

    With a prime modulus p, (C4) is additionally settled in integers: for
    every pair of rows the exponent differences must hit each residue mod p
    exactly (n-2)/p times.
    """
    n = C.n
    X = C.entries
    diag = float(np.abs(np.diag(X)).max(initial=0.0))
    if diag > tol:
        raise AxiomViolation("C1", None, f"diagonal entry of size {diag:.3e}")
    record(diagnostics, "C1", None, diag, 0 if C.is_exact else tol)
    off = ~np.eye(n, dtype=bool)
    unimod = float(np.abs(np.abs(X[off]) - 1.0).max(initial=0.0))
    if unimod > tol:
        i, j = (int(v) for v in np.argwhere(off & (np.abs(np.abs(X) - 1.0) > tol))[0])
        raise AxiomViolation("C2", (i, j), f"|C_ij| deviates from 1 by {unimod:.3e}")
    record(diagnostics, "C2", None, unimod, tol)
    if C.is_exact:
        sym = float(np.abs(C.exponents - C.exponents.T).max(initial=0))
        record(diagnostics, "C3", None, sym, 0)
    else:
        sym = float(np.abs(X - X.T).max(initial=0.0))
        record(diagnostics, "C3", None, sym, tol)
    if sym > (0 if C.is_exact else tol):
        raise AxiomViolation("C3", None, f"asymmetry {sym:.3e}")

    if C.is_exact and is_prime(C.modulus):
        _exact_counts(C, diagnostics)
    dev = float(np.abs(X @ X.conj().T - (n - 1) * np.eye(n)).max(initial=0.0))
    record(diagnostics, "C4", None, dev, tol)
    if dev > tol:
        raise AxiomViolation("C4", None, f"max |CC* - (n-1)I| = {dev:.3e}")
    return n


def ctr(Z) -> np.ndarray:
    """Replace each entry a+bi with the real block [[a, -b], [b, a]]."""
    Z = np.asarray(Z, dtype=complex)
    n, k = Z.shape
    out = np.zeros((2 * n, 2 * k))
    out[0::2, 0::2] = Z.real
    out[0::2, 1::2] = -Z.imag
    out[1::2, 0::2] = Z.imag
    out[1::2, 1::2] = Z.real
    return out


def et_taoui_to_signature(C: ConferenceMatrix) -> SignatureMatrix:
    """Blocks [[Re c, Im c], [Im c, -Re c]] for each entry c."""
    X = C.entries
    n = C.n
    blocks = np.zeros((n, n, 2, 2))
    blocks[:, :, 0, 0] = X.real
    blocks[:, :, 0, 1] = X.imag
    blocks[:, :, 1, 0] = X.imag
    blocks[:, :, 1, 1] = -X.real
    return SignatureMatrix(blocks)


def signature_to_conference(
    S: SignatureMatrix, modulus: Optional[int] = None, tol: float = SHAPE_TOL
) -> ConferenceMatrix:
    """Read a+bi off every block [[a, b], [b, -a]].

    With ``modulus`` the entries are snapped to exponents of
    exp(2*pi*i/modulus) and an exact-mode matrix is returned.
    """
    if S.r != 2:
        raise WrongBlockShape(None, f"blocks are {S.r} x {S.r}, not 2 x 2")
    n = S.n
    B = S.blocks
    if np.iscomplexobj(B) and float(np.abs(B.imag).max()) > tol:
        raise WrongBlockShape(None, "blocks have complex entries")
    B = B.real
    X = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            (a, b), (c, d) = B[i, j]
            if abs(b - c) > tol or abs(a + d) > tol:
                raise WrongBlockShape((i, j))
            X[i, j] = complex(a, b)
    if modulus is None:
        return ConferenceMatrix.numeric(X, tol)
    E = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            t = np.angle(X[i, j]) * modulus / (2 * math.pi)
            e = int(round(t)) % modulus
            ang = 2 * math.pi * e / modulus
            if abs(X[i, j] - complex(math.cos(ang), math.sin(ang))) > tol:
                raise WrongBlockShape((i, j), f"entry is not a {modulus}-th root of unity")
            E[i, j] = e
    return ConferenceMatrix.exact(E, modulus)
