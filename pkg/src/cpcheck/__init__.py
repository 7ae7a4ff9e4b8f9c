"""Complete-positivity checks and Kraus decompositions for linear maps on M_N(C)."""
from ._kernel import BACKEND
from .analysis import (
    CpReport,
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
from .channels import (
    ChoiMatrix,
    KrausSet,
    SuperOperator,
    apply_kraus,
    apply_superop,
    choi_from_kraus,
    choi_from_superop,
    is_trace_preserving,
    superop_from_choi,
    superop_from_function,
    superop_from_kraus,
    weyl,
)
from .errors import *  # noqa: F401,F403
from .linalg import (
    EigenDecomposition,
    gram_schmidt,
    hermitian_eigen,
    kron,
    psd_sqrt_factor,
    random_unitary,
)

__version__ = "0.1.0"
