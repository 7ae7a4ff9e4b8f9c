import os

import numpy as np
import pytest

from cpcheck import _jacobi_py, _kernel
from cpcheck.linalg import random_hermitian

compiled = pytest.importorskip("cpcheck._jacobi", reason="compiled kernel not built")


def _run(sweeps_fn, h, max_sweeps=100):
    a = np.ascontiguousarray(h.astype(np.complex128))
    v = np.eye(h.shape[0], dtype=np.complex128)
    sweeps = sweeps_fn(a, v, 1e-13 * np.linalg.norm(h), max_sweeps)
    return sweeps, np.real(np.diag(a)), v


@pytest.mark.parametrize("n,seed", [(2, 0), (4, 1), (9, 2), (16, 3), (33, 4)])
def test_backends_agree(n, seed):
    h = random_hermitian(n, seed)
    s1, w1, v1 = _run(compiled.jacobi_sweeps, h)
    s2, w2, v2 = _run(_jacobi_py.jacobi_sweeps, h)
    assert s1 == s2 and s1 > 0
    assert np.allclose(w1, w2, atol=1e-12)
    assert np.allclose(v1, v2, atol=1e-11)


def test_backends_report_nonconvergence():
    h = random_hermitian(8, 5)
    assert _run(compiled.jacobi_sweeps, h, max_sweeps=1)[0] == -1
    assert _run(_jacobi_py.jacobi_sweeps, h, max_sweeps=1)[0] == -1


def test_rotation_places_larger_diagonal_first():
    h = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    for fn in (compiled.jacobi_sweeps, _jacobi_py.jacobi_sweeps):
        _, w, _ = _run(fn, h)
        assert w[0] == pytest.approx(1.0) and w[1] == pytest.approx(-1.0)


def test_selected_backend(monkeypatch):
    expected = "python" if os.environ.get("CPCHECK_PURE_PYTHON") else "cython"
    assert _kernel.BACKEND == expected
