"""Johnson graphs G(n, r, s): independence numbers, r(l) and Turan-type bound checks."""

from .bounds import (
    BoundReport,
    PeelingTrace,
    distance_bound_leading,
    peel_certify,
    peeling_sum,
    t4_bound_leading,
    turan_applies,
    turan_bound,
)
from .census import Case, Checkmark, CensusReport, census, enumerate_checkmarks, exchange_audit, neighbor_count_in
from .combinatorics import GraphParams, Vertex, binomial, intersection_size, rank, unrank
from .errors import DomainError, JohnsonTuranError, SizingError
from .extremal import ExtremalResult, r_of_l_exact, r_of_l_local_search, sweep
from .graph import VertexSet, adjacent, induced_edge_count, neighbors, total_counts
from .independence import (
    IndependenceResult,
    alpha_exact,
    frankl_asymptotic,
    greedy_maximal_independent_set,
    max_independent_set,
)

__version__ = "0.1.0"
