"""Dense complex matrix kernel.

Matrices are plain ``numpy`` complex128 arrays. The Hermitian eigensolver
is a cyclic-by-row complex Jacobi iteration; the sweep loop runs in the
compiled extension when available (see ``cpcheck._kernel``).
"""
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from . import _kernel
from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPsd

DEFAULT_TOL = 1e-9
JACOBI_REL_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 100
_PHASE_TIE = 1e-12


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a 2-D complex128 array, rejecting NaN/Inf."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_square(m, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(m, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


def max_norm(m) -> float:
    """Largest entry modulus; 0 for an empty array."""
    arr = np.asarray(m)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def hermiticity_defect(m) -> float:
    arr = np.asarray(m)
    return max_norm(arr - arr.conj().T)


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    arr = np.asarray(u, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    return max_norm(arr.conj().T @ arr - np.eye(arr.shape[0])) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product; row ``p*b.rows + q``, column ``r*b.cols + s`` holds ``a[p,r]*b[q,s]``."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


@dataclass(frozen=True)
class EigenDecomposition:
    """``m = P diag(eigenvalues) P^dagger`` with eigenvalues descending.

    Column ``k`` of ``eigenvectors`` pairs with ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def __post_init__(self):
        for arr in (self.eigenvalues, self.eigenvectors):
            arr.flags.writeable = False

    def reconstruct(self) -> np.ndarray:
        p = self.eigenvectors
        return (p * self.eigenvalues) @ p.conj().T

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude entry real positive, near-ties go to the lowest index
    mags = np.abs(vectors)
    out = vectors.copy()
    for k in range(vectors.shape[1]):
        col = mags[:, k]
        top = col.max()
        if top == 0.0:
            continue
        idx = int(np.argmax(col >= top * (1.0 - _PHASE_TIE)))
        z = vectors[idx, k]
        out[:, k] *= np.conj(z) / abs(z)
        out[idx, k] = abs(z)
    return out


def hermitian_eigen(m, tol: float = DEFAULT_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    :param m: square matrix, Hermitian to ``tol * max(1, ||m||_max)``.
    :param tol: relative Hermiticity tolerance for the precondition.
    :param max_sweeps: sweep limit before :class:`NoConvergence` is raised.
    :return: eigenvalues sorted descending (stable on ties) and eigenvectors
        with their largest-magnitude entry made real and positive.
    """
    arr = as_square(m)
    scale = max(1.0, max_norm(arr))
    defect = hermiticity_defect(arr)
    if defect > tol * scale:
        raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds {tol * scale:.3e}")
    a = np.ascontiguousarray((arr + arr.conj().T) / 2)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = JACOBI_REL_THRESHOLD * float(np.linalg.norm(a))
    sweeps = _kernel.jacobi_sweeps(a, v, threshold, max_sweeps)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")
    w = np.real(np.diag(a)).copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], _fix_phases(v[:, order]), sweeps)


def clip_spectrum(eig: EigenDecomposition, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues with small negatives zeroed; raises :class:`NotPsd` below the clip threshold."""
    w = eig.eigenvalues
    floor = -tol * max(1.0, float(w[0]))
    if w[-1] < floor:
        raise NotPsd(f"minimum eigenvalue {w[-1]:.6g} below clip threshold {floor:.3e}")
    return np.where(w < 0.0, 0.0, w)


def factor_from_eigen(eig: EigenDecomposition, tol: float = DEFAULT_TOL) -> np.ndarray:
    return eig.eigenvectors * np.sqrt(clip_spectrum(eig, tol))


def psd_sqrt_factor(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``Q = P D^{1/2}`` so that ``Q Q^dagger = m``, columns by descending eigenvalue."""
    return factor_from_eigen(hermitian_eigen(m, tol), tol)


def gram_schmidt(vectors: Sequence, tol: float = 1e-10) -> List[np.ndarray]:
    """Orthonormalize ``vectors`` in order, dropping any whose residual norm is below ``tol``."""
    vecs = [np.asarray(x, dtype=np.complex128).reshape(-1) for x in vectors]
    if not vecs:
        return []
    length = vecs[0].shape[0]
    if any(x.shape[0] != length for x in vecs):
        raise DimensionMismatch("vectors must all have the same length")
    basis: List[np.ndarray] = []
    for x in vecs:
        r = x.copy()
        # two passes of modified Gram-Schmidt keep orthogonality near machine precision
        for _ in range(2):
            for e in basis:
                r = r - np.vdot(e, r) * e
        norm = float(np.linalg.norm(r))
        if norm < tol:
            continue
        basis.append(r / norm)
    return basis


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) % 2**64)


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-random ``n x n`` unitary, deterministic per ``seed``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(n: int, seed: int) -> np.ndarray:
    rng = _rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2
