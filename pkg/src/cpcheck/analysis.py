"""Complete-positivity verdicts and Kraus extraction from Choi matrices.

A map is CP exactly when its Choi matrix is Hermitian positive
semidefinite. For a CP map, any factorization ``J = Q Q^dagger`` yields a
Kraus set: column ``k`` of ``Q``, reshaped row-major to ``N x N``, is the
Kraus matrix ``M_k``. Factoring through the eigendecomposition keeps only
columns with positive eigenvalues, so the result is minimal.
"""
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .channels import ChoiMatrix, KrausSet, choi_from_kraus, is_trace_preserving
from .errors import (
    DimensionMismatch,
    NoConvergence,
    NotCp,
    NotPositiveDefinite,
    NotUnitary,
    NumericalFailure,
    ZeroMap,
)
from .linalg import (
    DEFAULT_TOL,
    EigenDecomposition,
    as_matrix,
    as_square,
    factor_from_eigen,
    hermiticity_defect,
    hermitian_eigen,
    is_unitary,
    max_norm,
)


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances; each is scaled by ``max(1, lambda_max)`` or ``max(1, ||J||_max)``."""

    herm_tol: float = DEFAULT_TOL
    psd_tol: float = DEFAULT_TOL
    rank_tol: float = DEFAULT_TOL

    def __post_init__(self):
        for name in ("herm_tol", "psd_tol", "rank_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    @classmethod
    def uniform(cls, tol: float) -> "Tolerances":
        return cls(tol, tol, tol)


@dataclass(frozen=True)
class CpReport:
    hermiticity_defect: float
    min_eigenvalue: Optional[float]
    max_eigenvalue: Optional[float]
    is_hermitian: bool
    is_psd: bool
    is_cp: bool
    rank: int
    zero_diag_consistent: bool
    trace_preserving: Optional[bool] = None
    eigenvalues: Optional[Tuple[float, ...]] = None

    def as_dict(self) -> dict:
        d = asdict(self)
        if self.eigenvalues is not None:
            d["eigenvalues"] = list(self.eigenvalues)
        return d


def _choi(j) -> ChoiMatrix:
    return j if isinstance(j, ChoiMatrix) else ChoiMatrix.from_matrix(j)


def check_hermitian(j, t: Tolerances = Tolerances()) -> Tuple[bool, float]:
    m = _choi(j).matrix
    defect = hermiticity_defect(m)
    return defect <= t.herm_tol * max(1.0, max_norm(m)), defect


def zero_diagonal_consistent(j, t: Tolerances = Tolerances()) -> bool:
    """Zero diagonal entries of a PSD matrix force their row and column to vanish.

    Necessary for positive semidefiniteness, not sufficient.
    """
    m = j.matrix if isinstance(j, ChoiMatrix) else as_square(j)
    eps = t.psd_tol * max(1.0, max_norm(m))
    zero = np.abs(np.diag(m)) <= eps
    if not zero.any():
        return True
    mags = np.abs(m)
    return bool(np.all(mags[zero, :] <= eps) and np.all(mags[:, zero] <= eps))


def _rank(eigenvalues: np.ndarray, t: Tolerances) -> int:
    return int(np.count_nonzero(eigenvalues > t.rank_tol * max(1.0, float(eigenvalues[0]))))


def _analyze(j: ChoiMatrix, t: Tolerances, k: Optional[KrausSet]) -> Tuple[CpReport, Optional[EigenDecomposition]]:
    hermitian, defect = check_hermitian(j, t)
    zdc = zero_diagonal_consistent(j, t)
    tp = is_trace_preserving(k) if k is not None else None
    if not hermitian:
        return CpReport(defect, None, None, False, False, False, 0, zdc, tp), None
    try:
        eig = hermitian_eigen(j.matrix, t.herm_tol)
    except NoConvergence as exc:
        raise NumericalFailure(str(exc)) from exc
    w = eig.eigenvalues
    is_psd = bool(w[-1] >= -t.psd_tol * max(1.0, float(w[0])))
    report = CpReport(
        hermiticity_defect=defect,
        min_eigenvalue=float(w[-1]),
        max_eigenvalue=float(w[0]),
        is_hermitian=True,
        is_psd=is_psd,
        is_cp=is_psd,
        rank=_rank(w, t),
        zero_diag_consistent=zdc,
        trace_preserving=tp,
        eigenvalues=tuple(float(x) for x in w),
    )
    return report, eig


def cp_verdict(j, t: Tolerances = Tolerances(), k: Optional[KrausSet] = None) -> CpReport:
    """Decide complete positivity from the Choi matrix.

    ``trace_preserving`` is only filled in when a Kraus set is supplied.
    """
    return _analyze(_choi(j), t, k)[0]


def _require_cp(j: ChoiMatrix, t: Tolerances) -> Tuple[CpReport, EigenDecomposition]:
    report, eig = _analyze(j, t, None)
    if not report.is_cp:
        if not report.is_hermitian:
            raise NotCp(f"Choi matrix is not Hermitian (defect {report.hermiticity_defect:.3e})")
        raise NotCp(f"Choi matrix is not PSD (min eigenvalue {report.min_eigenvalue:.6g})")
    return report, eig


def kraus_from_choi(j, t: Tolerances = Tolerances()) -> KrausSet:
    """Minimal Kraus set read off the columns of ``Q = P D^{1/2}``."""
    j = _choi(j)
    report, eig = _require_cp(j, t)
    if report.rank == 0:
        raise ZeroMap("the zero map has no non-empty Kraus representation")
    q = factor_from_eigen(eig, t.psd_tol)
    n = j.dim
    return KrausSet(n, tuple(q[:, c].reshape(n, n).copy() for c in range(report.rank)))


def minimal_kraus_count(j, t: Tolerances = Tolerances()) -> int:
    return _require_cp(_choi(j), t)[0].rank


def remix_kraus(k: KrausSet, u, tol: float = DEFAULT_TOL) -> KrausSet:
    """Unitary remix ``M'_j = sum_p u[p, j] M_p``; ``k`` is zero-padded to ``u``'s size."""
    u = as_matrix(u, "unitary")
    if u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got {u.shape}")
    if u.shape[0] < len(k):
        raise DimensionMismatch(f"unitary of size {u.shape[0]} cannot remix {len(k)} Kraus matrices")
    if not is_unitary(u, tol):
        raise NotUnitary("remix matrix is not unitary")
    stack = np.zeros((u.shape[0], k.dim, k.dim), dtype=np.complex128)
    stack[: len(k)] = k.stack()
    mixed = np.einsum("pj,pab->jab", u, stack)
    return KrausSet(k.dim, tuple(mixed))


def gram_vectors(s, tol: float = DEFAULT_TOL, basis=None) -> List[np.ndarray]:
    """Vectors ``f_i`` whose inner products ``<f_i, f_j>`` reproduce ``s``.

    With ``s = P D P^dagger`` and ``Q = P D^{1/2}``, ``f_i = sum_j conj(Q[i, j]) b_j``
    for the orthonormal basis ``b_j`` (columns of ``basis``, default the
    standard basis). Positive semidefinite ``s`` is accepted via clipping.
    """
    s = as_square(s, "S")
    q = factor_from_eigen(hermitian_eigen(s, tol), tol)
    b = np.eye(s.shape[0], dtype=np.complex128) if basis is None else as_square(basis, "basis")
    if b.shape != s.shape:
        raise DimensionMismatch("basis must match the size of S")
    if not is_unitary(b, 1e-9):
        raise NotUnitary("basis columns must be orthonormal")
    f = b @ q.conj().T  # column i is f_i
    return [f[:, i].copy() for i in range(s.shape[0])]


def gram_matrix(vectors: Sequence) -> np.ndarray:
    """``G[i, j] = <f_i, f_j>``, conjugate-linear in the first slot."""
    f = np.column_stack([np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors])
    return f.conj().T @ f


def psd_from_blocks(s, c) -> np.ndarray:
    """Assemble ``[[S, S C^dagger], [C S, C S C^dagger]]`` from positive definite ``S``."""
    s = as_square(s, "S")
    c = np.asarray(c, dtype=np.complex128)
    if c.size == 0:
        c = c.reshape(0, s.shape[0])
    if c.ndim != 2 or c.shape[1] != s.shape[0]:
        raise DimensionMismatch(f"C must have {s.shape[0]} columns, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise ValueError("C has non-finite entries")
    eig = hermitian_eigen(s)
    if eig.min_eigenvalue <= 0.0:
        raise NotPositiveDefinite(f"S has minimum eigenvalue {eig.min_eigenvalue:.6g}")
    cs = c @ s
    return np.block([[s, s @ c.conj().T], [cs, cs @ c.conj().T]])


def blocks_from_psd(m, n1: Optional[int] = None, tol: float = DEFAULT_TOL) -> Tuple[np.ndarray, np.ndarray]:
    """Split a PSD matrix whose leading ``n1 x n1`` block carries its full rank into ``(S, C)``.

    Returns ``S = m[:n1, :n1]`` and ``C = m[n1:, :n1] S^{-1}``; raises
    :class:`NotPositiveDefinite` when the leading block is singular or
    :class:`NumericalFailure` when the lower-right block is not ``C S C^dagger``
    (a row/column permutation would be needed first).
    """
    m = as_square(m, "M")
    eig = hermitian_eigen(m, tol)
    factor_from_eigen(eig, tol)  # PSD precondition
    if n1 is None:
        n1 = max(1, _rank(eig.eigenvalues, Tolerances.uniform(tol)))
    s = m[:n1, :n1]
    if hermitian_eigen(s, tol).min_eigenvalue <= tol * max(1.0, eig.max_eigenvalue):
        raise NotPositiveDefinite("leading block is not positive definite")
    c = np.linalg.solve(s.T, m[n1:, :n1].T).T
    if max_norm(c @ s @ c.conj().T - m[n1:, n1:]) > 1e-8 * max(1.0, max_norm(m)):
        raise NumericalFailure("matrix does not have the block form for this leading block")
    return s, c
