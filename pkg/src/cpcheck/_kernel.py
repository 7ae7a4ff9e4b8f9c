"""Select the Jacobi kernel: compiled extension if importable, else numpy fallback."""
import os

from . import _jacobi_py

if os.environ.get("CPCHECK_PURE_PYTHON"):
    jacobi_sweeps = _jacobi_py.jacobi_sweeps
    BACKEND = "python"
else:
    try:
        from ._jacobi import jacobi_sweeps
        BACKEND = "cython"
    except ImportError:
        jacobi_sweeps = _jacobi_py.jacobi_sweeps
        BACKEND = "python"

__all__ = ["jacobi_sweeps", "BACKEND"]
