import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpcheck.analysis import (
    Tolerances,
    blocks_from_psd,
    check_hermitian,
    cp_verdict,
    gram_matrix,
    gram_vectors,
    kraus_from_choi,
    minimal_kraus_count,
    psd_from_blocks,
    remix_kraus,
    zero_diagonal_consistent,
)
from cpcheck.channels import ChoiMatrix, KrausSet, apply_kraus, apply_superop, choi_from_kraus, choi_from_superop, superop_from_choi, weyl
from cpcheck.errors import DimensionMismatch, NotCp, NotHermitian, NotPositiveDefinite, NotPsd, NotUnitary, NumericalFailure, ZeroMap
from cpcheck.linalg import hermitian_eigen, max_norm, random_unitary
from cpcheck.zoo import PAULI_REMIX, depolarizing, identity_channel, random_cptp, transpose_map
from oracles import depolarizing_formula, proportionality_defect, random_complex, random_kraus_mats


def choi_of(superop):
    return choi_from_superop(superop)


def test_check_hermitian_examples():
    ok, defect = check_hermitian(choi_of(depolarizing(0.4, 0.3)))
    assert ok and defect == 0
    j = np.array([[0.5, 0, 0, 1j], [0, 0.5, 0, 0], [0, 0, 0.5, 0], [1j, 0, 0, 0.5]])
    ok, defect = check_hermitian(ChoiMatrix(2, j))
    assert not ok and defect == pytest.approx(2.0)
    assert check_hermitian(ChoiMatrix(2, np.zeros((4, 4)))) == (True, 0.0)


def test_zero_diagonal_examples():
    assert zero_diagonal_consistent(np.diag([1.0, 0.0]))
    assert not zero_diagonal_consistent(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert zero_diagonal_consistent(choi_of(depolarizing(0.5, 0.5)))
    assert not zero_diagonal_consistent(choi_of(transpose_map(2)))


def test_verdict_transposition():
    r = cp_verdict(choi_of(transpose_map(2)))
    assert not r.is_cp and r.is_hermitian and not r.is_psd
    assert r.min_eigenvalue == pytest.approx(-1, abs=1e-9)


def test_verdict_depolarizing_and_zero_map():
    r = cp_verdict(choi_of(depolarizing(0.5, 0.5)))
    assert r.is_cp and r.rank == 4 and r.zero_diag_consistent
    z = cp_verdict(ChoiMatrix(2, np.zeros((4, 4))))
    assert z.is_cp and z.rank == 0


def test_verdict_non_hermitian_skips_spectrum():
    r = cp_verdict(ChoiMatrix(2, np.triu(np.ones((4, 4)))))
    assert not r.is_hermitian and not r.is_cp and r.rank == 0
    assert r.eigenvalues is None and r.min_eigenvalue is None


def test_verdict_trace_preserving_only_with_kraus():
    k = random_cptp(2, 3, 1)
    assert cp_verdict(choi_from_kraus(k)).trace_preserving is None
    assert cp_verdict(choi_from_kraus(k), k=k).trace_preserving is True


def test_verdict_numerical_failure(monkeypatch):
    from cpcheck import analysis
    from cpcheck.errors import NoConvergence

    def stalled(*args, **kwargs):
        raise NoConvergence("sweep limit")

    monkeypatch.setattr(analysis, "hermitian_eigen", stalled)
    with pytest.raises(NumericalFailure):
        cp_verdict(choi_from_kraus(random_cptp(3, 2, 0)))


def test_kraus_from_identity_choi():
    k = kraus_from_choi(choi_of(identity_channel(3)))
    assert len(k) == 1
    defect, c = proportionality_defect(k.matrices[0], np.eye(3))
    assert defect < 1e-12 and abs(abs(c) - 1) < 1e-12


def test_kraus_from_single_unit():
    k = kraus_from_choi(choi_from_kraus(KrausSet(2, (weyl(0, 1, 2),))))
    assert len(k) == 1
    assert np.allclose(k.matrices[0], weyl(0, 1, 2))


def test_kraus_from_depolarizing():
    lam, mu = 0.5, 0.5
    k = kraus_from_choi(choi_of(depolarizing(lam, mu)))
    assert len(k) == 4
    for target, m in zip([np.eye(2), weyl(0, 1, 2), weyl(1, 0, 2), np.diag([1, -1])], k):
        assert proportionality_defect(m, target)[0] < 1e-12
    rng = np.random.default_rng(1)
    for _ in range(5):
        x = random_complex(rng, (2, 2))
        assert np.allclose(apply_kraus(k, x), depolarizing_formula(lam, mu, x), atol=1e-12)


def test_kraus_refuses_non_cp():
    with pytest.raises(NotCp):
        kraus_from_choi(choi_of(transpose_map(2)))
    with pytest.raises(NotCp):
        kraus_from_choi(ChoiMatrix(2, np.triu(np.ones((4, 4)))))
    with pytest.raises(ZeroMap):
        kraus_from_choi(ChoiMatrix(2, np.zeros((4, 4))))


def test_minimal_kraus_count_examples():
    assert minimal_kraus_count(choi_of(identity_channel(2))) == 1
    assert minimal_kraus_count(choi_of(depolarizing(0.5, 0.25))) == 4
    assert minimal_kraus_count(choi_of(depolarizing(0.0, 1.0))) == 1
    with pytest.raises(NotCp):
        minimal_kraus_count(choi_of(transpose_map(3)))


def test_remix_identity_and_pauli():
    k = kraus_from_choi(choi_of(depolarizing(0.5, 0.5)))
    same = remix_kraus(k, np.eye(4))
    assert all(np.array_equal(a, b) for a, b in zip(same, k))
    paulis = remix_kraus(k, PAULI_REMIX)
    targets = [np.eye(2), [[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]]
    for m, t in zip(paulis, targets):
        assert proportionality_defect(m, t)[0] < 1e-12
    assert max_norm(choi_from_kraus(paulis).matrix - choi_from_kraus(k).matrix) <= 1e-12


def test_remix_pads_and_validates():
    k = KrausSet(2, (np.eye(2),))
    out = remix_kraus(k, random_unitary(3, 0))
    assert len(out) == 3
    assert max_norm(choi_from_kraus(out).matrix - choi_from_kraus(k).matrix) <= 1e-12
    with pytest.raises(NotUnitary):
        remix_kraus(k, 2 * np.eye(2))
    with pytest.raises(DimensionMismatch):
        remix_kraus(KrausSet(2, (np.eye(2), np.eye(2))), np.eye(1))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 3]), k=st.integers(1, 5))
def test_remix_preserves_choi(seed, n, k):
    rng = np.random.default_rng(seed)
    ks = KrausSet(n, tuple(random_kraus_mats(rng, n, k)))
    size = k + int(rng.integers(0, 3))
    mixed = remix_kraus(ks, random_unitary(size, seed))
    j0 = choi_from_kraus(ks).matrix
    assert max_norm(choi_from_kraus(mixed).matrix - j0) <= 1e-10 * max(1, max_norm(j0))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 3, 4]), k=st.integers(1, 6))
def test_extraction_reproduces_channel(seed, n, k):
    rng = np.random.default_rng(seed)
    ks = KrausSet(n, tuple(random_kraus_mats(rng, n, k)))
    j = choi_from_kraus(ks)
    out = kraus_from_choi(j)
    assert len(out) == minimal_kraus_count(j) == min(k, n * n)
    s = superop_from_choi(j)
    for _ in range(5):
        x = random_complex(rng, (n, n))
        ref = apply_kraus(ks, x)
        assert max_norm(apply_kraus(out, x) - ref) <= 1e-9 * max(1, max_norm(ref))
        assert max_norm(apply_superop(s, x) - ref) <= 1e-9 * max(1, max_norm(ref))


def test_rank_of_dependent_kraus_matrices(rng):
    a, b = random_complex(rng, (3, 3)), random_complex(rng, (3, 3))
    ks = KrausSet(3, (a, b, a + 2 * b, 1j * a))
    assert minimal_kraus_count(choi_from_kraus(ks)) == 2


@pytest.mark.parametrize("size,seed", [(4, 1), (4, 2), (9, 3), (9, 4)])
def test_indefinite_inputs_rejected(size, seed):
    u = random_unitary(size, seed)
    w = np.linspace(1, -0.5, size)
    j = ChoiMatrix.from_matrix(u @ np.diag(w) @ u.conj().T)
    assert not cp_verdict(j).is_cp
    with pytest.raises(NotCp):
        kraus_from_choi(j)


def test_gram_vectors_examples():
    f = gram_vectors(np.eye(2))
    assert np.allclose(gram_matrix(f), np.eye(2))
    f = gram_vectors([[2, 1], [1, 2]])
    assert np.linalg.norm(f[0]) ** 2 == pytest.approx(2)
    assert np.linalg.norm(f[1]) ** 2 == pytest.approx(2)
    assert np.vdot(f[0], f[1]) == pytest.approx(1)
    f = gram_vectors([[1, 1], [1, 1]])
    assert np.allclose(f[0], f[1]) and np.linalg.norm(f[0]) == pytest.approx(1)


def test_gram_vectors_with_other_basis():
    s = np.array([[2, 1j], [-1j, 3]])
    f = gram_vectors(s, basis=random_unitary(2, 4))
    assert max_norm(gram_matrix(f) - s) <= 1e-12
    with pytest.raises(NotUnitary):
        gram_vectors(s, basis=2 * np.eye(2))
    with pytest.raises(NotPsd):
        gram_vectors(np.diag([1, -1]))
    with pytest.raises(NotHermitian):
        gram_vectors([[1, 1], [0, 1]])


def test_psd_from_blocks_examples():
    assert np.array_equal(psd_from_blocks([[1]], np.zeros((0, 1))), [[1]])
    m = psd_from_blocks([[1]], [[1]])
    assert np.array_equal(m, [[1, 1], [1, 1]])
    assert np.allclose(hermitian_eigen(m).eigenvalues, [2, 0])
    assert np.array_equal(psd_from_blocks(np.eye(2), np.zeros((2, 2))), np.diag([1, 1, 0, 0]))


def test_psd_from_blocks_validation():
    with pytest.raises(NotPositiveDefinite):
        psd_from_blocks(np.diag([1.0, 0.0]), np.ones((1, 2)))
    with pytest.raises(DimensionMismatch):
        psd_from_blocks(np.eye(2), np.ones((2, 3)))


def test_blocks_from_psd_roundtrip(rng):
    s = random_complex(rng, (2, 2))
    s = s @ s.conj().T + np.eye(2)
    c = random_complex(rng, (3, 2))
    m = psd_from_blocks(s, c)
    s2, c2 = blocks_from_psd(m)
    assert np.allclose(s2, s) and np.allclose(c2, c)


def test_blocks_from_psd_needs_permutation():
    # full rank sits in rows 1, 2; the leading 2x2 block is singular
    m = np.diag([0.0, 1.0, 1.0])
    with pytest.raises(NotPositiveDefinite):
        blocks_from_psd(m)
    # leading block nonsingular but lower block inconsistent with rank
    with pytest.raises(NumericalFailure):
        blocks_from_psd(np.diag([1.0, 2.0, 3.0]), n1=2)


def test_zero_diagonal_holds_on_psd_corpus():
    for seed in range(20):
        j = choi_from_kraus(random_cptp(2 + seed % 3, 1 + seed % 4, seed))
        assert zero_diagonal_consistent(j)
    assert zero_diagonal_consistent(choi_from_kraus(KrausSet(2, (weyl(0, 1, 2),))))


def test_tolerances_validate():
    with pytest.raises(ValueError):
        Tolerances(herm_tol=0)
    assert Tolerances.uniform(1e-6).rank_tol == 1e-6
