"""Random matrix ensembles, the two-step base model, and base audits."""
from lsvlab.models.audit import BaseAudit, audit_base
from lsvlab.models.matchings import (
    cross_edges,
    difference_vector,
    is_perfect_matching,
    level_set_stats,
    matching_of,
    union_components,
)
from lsvlab.models.samplers import (
    assemble_from_base,
    least_prime_at_least,
    sample_base,
    sample_bits,
    sample_gaussian,
    sample_matrix,
    sample_q_via_base,
    sample_rademacher,
    sample_row_regular,
)

__all__ = [
    "BaseAudit",
    "assemble_from_base",
    "audit_base",
    "cross_edges",
    "difference_vector",
    "is_perfect_matching",
    "least_prime_at_least",
    "level_set_stats",
    "matching_of",
    "sample_base",
    "sample_bits",
    "sample_gaussian",
    "sample_matrix",
    "sample_q_via_base",
    "sample_rademacher",
    "sample_row_regular",
    "union_components",
]
