import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eitffkit.conference import (
    ConferenceMatrix,
    ctr,
    et_taoui_to_signature,
    mathon_conference,
    signature_to_conference,
    verify_conference,
)
from eitffkit.drackn import conference_to_drackn, verify_drackn
from eitffkit.eitff import SignatureMatrix, verify_signature
from eitffkit.errors import (
    AxiomViolation,
    DegenerateIrrep,
    ExactCountFailure,
    NotTwoEigenvalues,
    OutOfRange,
    WrongBlockShape,
)
from eitffkit.representations import RepSelection, lift_dihedral


def test_mathon_k2():
    C = mathon_conference(2, 1)
    assert C.n == 5 and C.modulus == 3
    E = C.exponents
    assert all(E[i, i] == -1 for i in range(5))
    assert np.array_equal(E, E.T)
    assert verify_conference(C) == 5


@pytest.mark.parametrize("a", [1, 2, 3, 4, 5, 6])
def test_mathon_k3_all_nontrivial(a):
    assert verify_conference(mathon_conference(3, a)) == 9


def test_mathon_k2_conjugate_pair():
    C1, C2 = mathon_conference(2, 1), mathon_conference(2, 2)
    assert np.array_equal(C1.conjugate().exponents, C2.exponents)


def test_mathon_errors():
    with pytest.raises(DegenerateIrrep):
        mathon_conference(2, 3)
    with pytest.raises(DegenerateIrrep):
        mathon_conference(3, 0)
    with pytest.raises(OutOfRange):
        mathon_conference(1, 1)


def test_all_ones_fails_c4():
    n = 5
    J = np.ones((n, n)) - np.eye(n)
    with pytest.raises(AxiomViolation) as e:
        verify_conference(ConferenceMatrix.numeric(J))
    assert e.value.axiom == "C4"


def test_exact_count_failure():
    # order 5 with cube-root-of-unity entries, all exponents 0 except one pair
    E = np.zeros((5, 5), dtype=int)
    np.fill_diagonal(E, -1)
    E[0, 1] = E[1, 0] = 1
    with pytest.raises(ExactCountFailure) as e:
        verify_conference(ConferenceMatrix.exact(E, 3))
    assert e.value.i == 0


def test_construction_errors():
    E = np.zeros((3, 3), dtype=int)
    with pytest.raises(AxiomViolation) as e:
        ConferenceMatrix.exact(E, 3)
    assert e.value.axiom == "C1"
    np.fill_diagonal(E, -1)
    E[0, 1] = 1
    with pytest.raises(AxiomViolation) as e:
        ConferenceMatrix.exact(E, 3)
    assert e.value.axiom == "C3"
    X = np.ones((3, 3), dtype=complex) - np.eye(3)
    X[0, 1] = 1j
    with pytest.raises(AxiomViolation) as e:
        ConferenceMatrix.numeric(X)
    assert e.value.axiom == "C3"


def test_c2_violation():
    X = np.ones((3, 3)) - np.eye(3)
    X[0, 1] = X[1, 0] = 0.5
    with pytest.raises(AxiomViolation) as e:
        verify_conference(ConferenceMatrix.numeric(X))
    assert e.value.axiom == "C2"


def test_exponent_reduction():
    E = np.array([[-1, 4], [1, -1]])
    C = ConferenceMatrix.exact(E, 3)
    assert C.exponents[0, 1] == 1


def test_et_taoui_single_entry_block():
    E = np.array([[-1, 1], [1, -1]])
    S = et_taoui_to_signature(ConferenceMatrix.exact(E, 4))
    assert np.allclose(S.blocks[0, 1], [[0, 1], [1, 0]])
    assert np.allclose(S.blocks[0, 0], 0)


def test_ctr_examples():
    assert np.array_equal(ctr([[1]]), np.eye(2))
    assert np.array_equal(ctr([[1j]]), [[0, -1], [1, 0]])


_cplx = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(_cplx, min_size=n * n, max_size=n * n), st.lists(_cplx, min_size=n * n, max_size=n * n))))
def test_ctr_is_a_star_homomorphism(pair):
    a, b = pair
    n = int(round(len(a) ** 0.5))
    Z, W = np.array(a).reshape(n, n), np.array(b).reshape(n, n)
    assert np.allclose(ctr(Z @ W), ctr(Z) @ ctr(W), atol=1e-9 * (1 + np.abs(Z).max() * np.abs(W).max() * n))
    assert np.allclose(ctr(Z.conj().T), ctr(Z).T)


@pytest.mark.parametrize("k", [2, 3])
def test_et_taoui_structure(k):
    C = mathon_conference(k, 1)
    n = C.n
    S = et_taoui_to_signature(C)
    X = S.flat()
    R = np.kron(np.eye(n), np.diag([1.0, -1.0]))
    assert np.allclose(X, ctr(C.entries) @ R, atol=1e-12)
    assert np.abs(X @ X - (n - 1) * np.eye(2 * n)).max() < 1e-9
    assert np.sum(X * X) == pytest.approx(2 * n * (n - 1))
    p = verify_signature(S)
    assert (p.d, p.n, p.r) == (n, n, 2)


def test_phase_perturbation_rejected():
    C = mathon_conference(2, 1)
    X = C.entries.copy()
    X[0, 1] *= cmath.exp(0.3j)
    X[1, 0] = X[0, 1]
    S = et_taoui_to_signature(ConferenceMatrix.numeric(X))
    with pytest.raises(NotTwoEigenvalues):
        verify_signature(S)


def test_wrong_block_shape(mathon):
    S = lift_dihedral(mathon(2)[0], RepSelection(3, (1,)))
    # a rotation block [[c, -s], [s, c]] is not of the reflection form
    B = np.array(S.blocks)
    B[0, 1] = [[0, -1], [1, 0]]
    with pytest.raises(WrongBlockShape):
        signature_to_conference(SignatureMatrix(B))
    with pytest.raises(WrongBlockShape):
        signature_to_conference(SignatureMatrix(np.zeros((3, 3, 1, 1))))


@pytest.mark.parametrize("k,a", [(2, 1), (3, 1), (3, 3)])
def test_et_taoui_round_trip(k, a):
    C = mathon_conference(k, a)
    back = signature_to_conference(et_taoui_to_signature(C), modulus=C.modulus)
    assert np.array_equal(back.exponents, C.exponents)
    numeric = signature_to_conference(et_taoui_to_signature(C))
    assert np.abs(numeric.entries - C.entries).max() < 1e-12


def test_not_root_of_unity():
    X = np.array([[0, cmath.exp(0.1j)], [cmath.exp(0.1j), 0]])
    with pytest.raises(WrongBlockShape):
        signature_to_conference(et_taoui_to_signature(ConferenceMatrix.numeric(X)), modulus=3)


def test_q4_lift_is_conjugate_mathon(mathon):
    A, _ = mathon(2)
    S = lift_dihedral(A, RepSelection(3, (1,)))
    C = signature_to_conference(S, modulus=3)
    assert verify_conference(C) == 5
    assert np.array_equal(C.exponents, mathon_conference(2, 1).conjugate().exponents)
    assert np.array_equal(C.exponents, mathon_conference(2, 2).exponents)


def test_conference_to_drackn_round_trip():
    C = mathon_conference(2, 1)
    A = conference_to_drackn(C, 3)
    p = verify_drackn(A)
    assert (p.n, p.m, p.c) == (5, 3, 1)


@pytest.mark.parametrize("mode", ["exact", "numeric"])
def test_json_round_trip(mode):
    C = mathon_conference(3, 2)
    if mode == "numeric":
        C = ConferenceMatrix.numeric(C.entries)
    D = ConferenceMatrix.from_json(C.to_json())
    assert D.is_exact == C.is_exact
    assert np.abs(D.entries - C.entries).max() < 1e-15


def test_json_declared_order_mismatch():
    doc = mathon_conference(2, 1).to_json()
    doc["n"] = 6
    with pytest.raises(AxiomViolation):
        ConferenceMatrix.from_json(doc)
