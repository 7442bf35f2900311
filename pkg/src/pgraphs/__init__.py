"""Product-system graphs over quasi-lattice ordered groups, with exact verification suites."""

from .algebra import (
    FormalElement,
    MatrixOp,
    Representation,
    adjoint,
    expectation,
    grade_decompose,
    mult,
    operator_norm,
    to_matrix,
)
from .catalog import build_grid, build_hereditary_embedding, build_kgraph, build_sy, grid3, parse_spec
from .errors import (
    CapExceeded,
    FilterError,
    LemmaViolation,
    NotHereditary,
    OrderError,
    PGraphError,
    SpecParseError,
    TruncationError,
)
from .filters import Filter, act, act_inv, enumerate_filters, fe_witness, principal_filter, ultrafilter_extend
from .pgraph import Path, PGraph, ext, is_exhaustive, mce, validate, vee_paths
from .qlo import INFINITY, FreeMonoid, FreeProductN2N, LexZ2, Nk, join, leq
from .spielberg import build_hybrid, hyb1, mce_hybrid

__all__ = [name for name in dir() if not name.startswith("_")]
