"""Superoperator, Choi and Kraus representations of linear maps on N x N matrices.

Conventions (all indices 0-based):

* ``vec`` stacks rows: ``vec(E_ij)`` is the unit vector at ``i*N + j``.
* ``SuperOperator.action[m*N + n, a*N + b] = L(E_ab)[m, n]``.
* ``ChoiMatrix.matrix[m*N + a, n*N + b] = L(E_ab)[m, n]``, i.e. the Choi
  matrix is ``sum_ab kron(L(E_ab), E_ab)`` with the image factor first.
"""
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch
from .linalg import DEFAULT_TOL, as_matrix, as_square, max_norm


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.complex128, copy=True)
    out.flags.writeable = False
    return out


def _dim_from_square(size: int) -> int:
    n = int(round(np.sqrt(size)))
    if n * n != size:
        raise DimensionMismatch(f"matrix size {size} is not a perfect square N^2")
    return n


@dataclass(frozen=True, eq=False)
class SuperOperator:
    dim: int
    action: np.ndarray

    def __post_init__(self):
        action = as_square(self.action, "superoperator")
        if action.shape[0] != self.dim**2:
            raise DimensionMismatch(f"superoperator of dim {self.dim} must be {self.dim**2}x{self.dim**2}, got {action.shape}")
        object.__setattr__(self, "action", _frozen(action))

    @classmethod
    def from_matrix(cls, action) -> "SuperOperator":
        action = as_square(action, "superoperator")
        return cls(_dim_from_square(action.shape[0]), action)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = as_square(self.matrix, "Choi matrix")
        if matrix.shape[0] != self.dim**2:
            raise DimensionMismatch(f"Choi matrix of dim {self.dim} must be {self.dim**2}x{self.dim**2}, got {matrix.shape}")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @classmethod
    def from_matrix(cls, matrix) -> "ChoiMatrix":
        matrix = as_square(matrix, "Choi matrix")
        return cls(_dim_from_square(matrix.shape[0]), matrix)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Ordered Kraus matrices ``M_1..M_K`` of a map ``X -> sum_p M_p X M_p^dagger``."""

    dim: int
    matrices: Tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(as_square(m, f"Kraus matrix {i}") for i, m in enumerate(self.matrices))
        if not mats:
            raise DimensionMismatch("a Kraus set needs at least one matrix")
        for i, m in enumerate(mats):
            if m.shape[0] != self.dim:
                raise DimensionMismatch(f"Kraus matrix {i} has shape {m.shape}, expected {self.dim}x{self.dim}")
        if all(max_norm(m) == 0.0 for m in mats):
            raise ValueError("a Kraus set needs at least one nonzero matrix")
        object.__setattr__(self, "matrices", tuple(_frozen(m) for m in mats))

    @classmethod
    def from_matrices(cls, matrices: Sequence) -> "KrausSet":
        mats = [as_square(m, f"Kraus matrix {i}") for i, m in enumerate(matrices)]
        if not mats:
            raise DimensionMismatch("a Kraus set needs at least one matrix")
        return cls(mats[0].shape[0], tuple(mats))

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def stack(self) -> np.ndarray:
        """Kraus matrices as a ``(K, N, N)`` array."""
        return np.stack(self.matrices)


def vec(x) -> np.ndarray:
    return np.asarray(x).reshape(-1)


def unvec(v, n: int) -> np.ndarray:
    return np.asarray(v).reshape(n, n)


def weyl(i: int, j: int, n: int) -> np.ndarray:
    """Matrix unit ``E_ij`` with a single 1 at row ``i``, column ``j``."""
    e = np.zeros((n, n), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def _check_input(x, n: int) -> np.ndarray:
    x = as_matrix(x, "input")
    if x.shape != (n, n):
        raise DimensionMismatch(f"input has shape {x.shape}, channel acts on {n}x{n} matrices")
    return x


def apply_kraus(k: KrausSet, x) -> np.ndarray:
    x = _check_input(x, k.dim)
    ms = k.stack()
    return np.einsum("pij,jk,plk->il", ms, x, ms.conj())


def apply_superop(s: SuperOperator, x) -> np.ndarray:
    x = _check_input(x, s.dim)
    return unvec(s.action @ vec(x), s.dim)


def superop_from_function(f: Callable[[np.ndarray], np.ndarray], n: int) -> SuperOperator:
    """Tabulate a linear map column by column from its images of the matrix units."""
    action = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            action[:, i * n + j] = vec(np.asarray(f(weyl(i, j, n)), dtype=np.complex128))
    return SuperOperator(n, action)


def superop_from_kraus(k: KrausSet) -> SuperOperator:
    action = sum(np.kron(m, m.conj()) for m in k.matrices)
    return SuperOperator(k.dim, action)


def choi_from_superop(s: SuperOperator) -> ChoiMatrix:
    n = s.dim
    t = s.action.reshape(n, n, n, n)  # [m, n, a, b]
    return ChoiMatrix(n, t.transpose(0, 2, 1, 3).reshape(n * n, n * n).copy())


def superop_from_choi(j: ChoiMatrix) -> SuperOperator:
    n = j.dim
    t = j.matrix.reshape(n, n, n, n)  # [m, a, n, b]
    return SuperOperator(n, t.transpose(0, 2, 1, 3).reshape(n * n, n * n).copy())


def choi_from_kraus(k: KrausSet) -> ChoiMatrix:
    vs = k.stack().reshape(len(k), -1)
    return ChoiMatrix(k.dim, vs.T @ vs.conj())


def kraus_gram_defect(k: KrausSet) -> float:
    """``||sum_p M_p^dagger M_p - I||_max``."""
    ms = k.stack()
    total = np.einsum("pji,pjk->ik", ms.conj(), ms)
    return max_norm(total - np.eye(k.dim))


def is_trace_preserving(k: KrausSet, tol: float = DEFAULT_TOL) -> bool:
    return kraus_gram_defect(k) <= tol
