"""One-way quantum deficit of two-qubit X states."""
from .analytic import (
    Branch,
    BranchDecision,
    DeficitResult,
    classify_branch,
    g_at_pi2,
    g_at_zero,
    h0,
    h_pi2_prime,
    one_way_deficit,
    solve_theta_s,
)
from .state import (
    BlochX,
    InvalidStateError,
    XMatrix,
    canonicalize,
    entropy_spectrum,
    from_matrix,
    to_matrix,
    validate,
    von_neumann_entropy,
)

__version__ = "0.1.0"
