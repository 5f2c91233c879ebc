"""Matching combinatorics on a base, and the integer-vector statistics built on them."""
from collections import Counter
from typing import AbstractSet, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

from lsvlab.core.domain import Base
from lsvlab.errors import DimensionMismatchError, NotAMatchingError, PreconditionError

Matching = Sequence[Tuple[int, int]]


def is_perfect_matching(m: Iterable[Sequence[int]], n: int) -> bool:
    seen: List[int] = []
    for edge in m:
        if len(edge) != 2:
            return False
        seen.extend(int(x) for x in edge)
    return sorted(seen) == list(range(n))


def _validated(m: Matching) -> List[Tuple[int, int]]:
    edges = [(int(a), int(b)) for a, b in m]
    n = 2 * len(edges)
    if n == 0 or not is_perfect_matching(edges, n):
        raise NotAMatchingError(f"not a perfect matching of range({n}): {edges}")
    return edges


def matching_of(perm: Sequence[int]) -> List[Tuple[int, int]]:
    """The matching {perm(2k-1), perm(2k)} induced by a permutation in one-line notation."""
    return [(int(perm[2 * k]), int(perm[2 * k + 1])) for k in range(len(perm) // 2)]


def union_components(m1: Matching, m2: Matching) -> int:
    """Connected components of the multigraph union of two perfect matchings.

    The union is a disjoint set of even cycles; an edge present in both
    matchings is a doubled edge and forms a component of size 2.
    """
    e1, e2 = _validated(m1), _validated(m2)
    if len(e1) != len(e2):
        raise DimensionMismatchError(f"matchings on {2 * len(e1)} and {2 * len(e2)} vertices")
    g = nx.MultiGraph()
    g.add_nodes_from(range(2 * len(e1)))
    g.add_edges_from(e1)
    g.add_edges_from(e2)
    return int(nx.number_connected_components(g))


def cross_edges(m: Matching, A: AbstractSet[int], B: AbstractSet[int]) -> int:
    """Number of matching edges with one endpoint in A and the other in B."""
    if set(A) & set(B):
        raise PreconditionError(f"A and B must be disjoint, both contain {sorted(set(A) & set(B))}")
    count = 0
    for a, b in m:
        if (a in A and b in B) or (a in B and b in A):
            count += 1
    return count


def difference_vector(v: Sequence[int] | np.ndarray, base: Base, i: int) -> List[int]:
    """v_{sigma_i}: the k-th coordinate is v[sigma_i(2k-1)] - v[sigma_i(2k)]."""
    values = [int(x) for x in np.asarray(v).tolist()]
    if len(values) != base.n:
        raise DimensionMismatchError(f"vector of length {len(values)} against a base on n={base.n}")
    if not 0 <= i < base.n:
        raise PreconditionError(f"row index {i} out of range for n={base.n}")
    return [values[a] - values[b] for a, b in base.pairs(i)]


def level_set_stats(v: Sequence[int] | np.ndarray) -> Tuple[int, int]:
    """(size of the largest level set, size of the support)."""
    values = np.asarray(v).tolist()
    if not values:
        return 0, 0
    largest = max(Counter(values).values())
    support = sum(1 for x in values if x != 0)
    return int(largest), int(support)
