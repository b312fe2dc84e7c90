"""Coalition vote-share control in plurality elections.

Thin Python wrapper over the C++ core. Every function exchanges instance
documents and results as JSON text; see the repository README for the
document schema.
"""

from ._core import (
    CapacityError,
    InstanceError,
    QueryError,
    TieError,
    __version__,
    auto_solver,
    generate,
    normalize,
    oracle,
    reduce_clique,
    reduce_dominating_set,
    reduce_subset_sum,
    solve,
    solver_names,
    verify,
)

__all__ = [
    "CapacityError",
    "InstanceError",
    "QueryError",
    "TieError",
    "__version__",
    "auto_solver",
    "generate",
    "normalize",
    "oracle",
    "reduce_clique",
    "reduce_dominating_set",
    "reduce_subset_sum",
    "solve",
    "solver_names",
    "verify",
]
