"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import io
import json
import math
import time
from contextlib import redirect_stdout

import numpy as np
import pytest

from eitffkit.cli import main
from eitffkit.conference import (
    ConferenceMatrix,
    et_taoui_to_signature,
    mathon_conference,
    signature_to_conference,
    verify_conference,
)
from eitffkit.drackn import DracknAdjacency, conference_to_drackn, mathon_drackn, verify_drackn
from eitffkit.eitff import check_eitff, expected_params, factor_gram, gram_from_signature, verify_signature
from eitffkit.errors import NotTwoEigenvalues
from eitffkit.numerics import cluster_eigenvalues, eigvalsh, singular_values
from eitffkit.representations import RepSelection, lift_deleted_permutation, lift_dihedral

pytestmark = pytest.mark.acceptance


def report(log, number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(line)
    log.append(line)
    assert ok, line


def test_criterion_1_mathon_exact(criterion_log):
    details, ok = [], True
    for k in (2, 3, 4, 5):
        q = 2**k
        start = time.perf_counter()
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(["mathon-drackn", "--k", str(k)])
        A = DracknAdjacency.from_json(json.loads(buf.getvalue())["payload"]["drackn"])
        p = verify_drackn(A)
        elapsed = time.perf_counter() - start
        good = code == 0 and (p.n, p.m, p.c) == (q + 1, q - 1, 1) and elapsed < 5.0
        ok &= good
        details.append(f"k={k} ({p.n},{p.m},{p.c}) {elapsed:.2f}s")
    report(criterion_log, 1, ok, "; ".join(details))


def test_criterion_2_lift_k1(criterion_log):
    details, ok = [], True
    for k in (2, 3, 4):
        q = 2**k
        start = time.perf_counter()
        A, _ = mathon_drackn(k)
        S = lift_dihedral(A, RepSelection(A.m, (1,)))
        e = verify_signature(S, cluster_tol=1e-6)
        elapsed = time.perf_counter() - start
        root = math.sqrt(q)
        good = (
            (e.d, e.n, e.r) == (q + 1, q + 1, 2)
            and abs(e.lambda_plus - root) < 1e-6
            and abs(e.lambda_minus + root) < 1e-6
            and elapsed < 30.0
        )
        ok &= good
        details.append(f"q={q} ({e.d},{e.n},{e.r}) +-{e.lambda_plus:.9f} {elapsed:.2f}s")
    report(criterion_log, 2, ok, "; ".join(details))


def test_criterion_3_redundancy_invariance(criterion_log, mathon):
    A, _ = mathon(3)
    details, ok = [], True
    for K in [(1,), (2,), (3,), (1, 2), (1, 2, 3)]:
        e = verify_signature(lift_dihedral(A, RepSelection(7, K)))
        good = abs(e.redundancy - 2.0) <= 1e-6
        ok &= good
        details.append(f"K={set(K)} rn/d={e.redundancy:.12g}")
    report(criterion_log, 3, ok, "; ".join(details))


def test_criterion_4_q4_frame(criterion_log, mathon):
    start = time.perf_counter()
    A, _ = mathon(2)
    S = lift_dihedral(A, RepSelection(3, (1,)))
    F = factor_gram(*gram_from_signature(S))
    check_eitff(F)
    blocks = [F.block(i) for i in range(F.n)]
    ortho = max(float(np.abs(M.conj().T @ M - np.eye(2)).max()) for M in blocks)
    svs = np.concatenate([
        singular_values(blocks[i].conj().T @ blocks[j])
        for i in range(F.n) for j in range(F.n) if i != j
    ])
    sv_dev = float(np.abs(svs - 0.5).max())
    spread = float(svs.max() - svs.min())
    tight = float(np.abs(sum(M @ M.conj().T for M in blocks) - 2 * np.eye(5)).max())
    imag = float(np.abs(np.imag(F.M)).max()) if np.iscomplexobj(F.M) else 0.0
    elapsed = time.perf_counter() - start
    ok = (
        F.M.shape == (5, 10)
        and ortho < 1e-9
        and sv_dev < 1e-9
        and spread < 1e-9
        and tight < 1e-8
        and imag <= 1e-9
        and elapsed < 1.0
    )
    report(
        criterion_log, 4, ok,
        f"orthonormal {ortho:.1e}, |s-1/2| {sv_dev:.1e}, spread {spread:.1e}, "
        f"tight {tight:.1e}, imag {imag:.1e}, {elapsed:.3f}s",
    )


def test_criterion_5_mathon_conference(criterion_log):
    details, ok = [], True
    for k in (2, 3, 4):
        C = mathon_conference(k, 1)
        log = []
        n = verify_conference(C, tol=1e-9, diagnostics=log)
        if k in (2, 3):
            exact = any(d.axiom == "C4-exact" for d in log)
            ok &= exact
            details.append(f"k={k} n={n} exact residue counts checked: {exact}")
        else:
            X = C.entries
            dev = float(np.abs(X @ X.conj().T - 16 * np.eye(17)).max())
            ok &= n == 17 and dev <= 1e-9
            details.append(f"k=4 |CC*-16I| {dev:.1e}")
    report(criterion_log, 5, ok, "; ".join(details))


def test_criterion_6_et_taoui(criterion_log):
    C = mathon_conference(2, 1)
    S = et_taoui_to_signature(C)
    e = verify_signature(S)
    X = S.flat()
    dev = float(np.abs(X @ X - 4 * np.eye(10)).max())
    forward = (e.d, e.n, e.r) == (5, 5, 2) and dev <= 1e-9

    Y = C.entries.copy()
    Y[0, 1] *= complex(math.cos(0.3), math.sin(0.3))
    Y[1, 0] = Y[0, 1]
    try:
        verify_signature(et_taoui_to_signature(ConferenceMatrix.numeric(Y)))
        rejected = False
    except NotTwoEigenvalues:
        rejected = True
    report(
        criterion_log, 6, forward and rejected,
        f"forward ({e.d},{e.n},{e.r}) |S^2-4I| {dev:.1e}; perturbed entry rejected by S4: {rejected}",
    )


def test_criterion_7_round_trip(criterion_log):
    start = time.perf_counter()
    C = mathon_conference(2, 1)
    A = conference_to_drackn(C, 3)
    p = verify_drackn(A)
    S = lift_dihedral(A, RepSelection(3, (1,)))
    C2 = signature_to_conference(S, modulus=3)
    n = verify_conference(C2)
    elapsed = time.perf_counter() - start
    ok = (p.n, p.m, p.c) == (5, 3, 1) and n == 5 and elapsed < 1.0
    report(criterion_log, 7, ok, f"cover ({p.n},{p.m},{p.c}), recovered conference n={n}, {elapsed:.3f}s")


def test_criterion_8_gardiner(criterion_log, gardiner):
    p = verify_drackn(gardiner)
    S = lift_deleted_permutation(gardiner)
    e = verify_signature(S)
    want = expected_params(p, S.r)
    spec = cluster_eigenvalues(eigvalsh(S.flat()), 1e-6)
    (lp, mp), (lm, mm) = spec.clusters
    ok = (
        (p.n, p.m, p.c) == (7, 6, 1)
        and (e.d, e.n, e.r) == (21, 7, 5)
        and (e.d, e.n, e.r) == (want.d, want.n, want.r)
        and abs(lp - 2) < 1e-6 and mp == 21
        and abs(lm + 3) < 1e-6 and mm == 14
    )
    report(criterion_log, 8, ok, f"({e.d},{e.n},{e.r}); theta {lp:.9f} x{mp}, tau {lm:.9f} x{mm}")


def test_criterion_9_char_poly(criterion_log, mathon):
    details, ok = [], True
    for k in (2, 3):
        A, _ = mathon(k)
        n = A.n
        adj = np.sort(eigvalsh(A.dense().astype(float)))
        lift = eigvalsh(lift_deleted_permutation(A).flat())
        predicted = np.sort(np.concatenate([lift, [n - 1.0], -np.ones(n - 1)]))
        dev = float(np.abs(adj - predicted).max()) if adj.shape == predicted.shape else math.inf
        ok &= dev <= 1e-6
        details.append(f"q={2**k} max deviation {dev:.1e}")
    report(criterion_log, 9, ok, "; ".join(details))
