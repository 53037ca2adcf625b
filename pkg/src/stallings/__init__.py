"""Stallings core graphs of free-group subgroups, their quotient DAGs, and the
fixed-point statistics of word maps on symmetric groups."""

from .algebraic import PrimitivityReport, critical_count_for_power, primitivity_rank, primitivity_report
from .core_graph import (
    CoreGraph,
    Morphism,
    build_core_graph,
    canonical_key,
    contains,
    find_morphism,
    handle_number,
    image_subgraph,
    merge_and_fold,
    rank,
    trivial_graph,
    wedge_of_loops,
)
from .factor import FactorReport, NotContainedError, complementary_generator_count, is_free_factor, is_primitive
from .fringe import DEFAULT_NODE_CAP, FringeCapExceeded, FringeDag, distance, enumerate_fringe, nodes_by_rank
from .sampler import (
    EstimateReport,
    Permutation,
    average_fixed_points_mc,
    evaluate_word,
    exhaustive_probability,
    monte_carlo_probability,
)
from .series import (
    PhiReport,
    TruncatedSeries,
    average_fixed_points,
    lower_rank_contribution,
    phi_closed_form,
    phi_series,
    valid_from,
)
from .upsilon import UpsilonGraph, build_upsilon, component_count, verify_correspondence
from .words import GeneratingSet, Word, parse_generating_set, parse_word

__version__ = "0.1.0"
