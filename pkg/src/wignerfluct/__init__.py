"""Global fluctuations of Wigner-type random matrices.

Exact limiting (and finite-dimension) joint cumulants of traces of powers,
the annular/partitioned-permutation combinatorics behind them, and a Monte
Carlo harness for checking both against sampled matrices.
"""

from .annular import (
    NC,
    NC_NONCONNECTING,
    NEITHER,
    classify_relative,
    enumerate_nc2,
    enumerate_nc2nc,
    gamma_of,
    is_cutting,
    is_loop_block,
    is_noncrossing_disc,
    is_noncrossing_partition,
    through_strings,
)
from .betapoly import BetaPoly
from .errors import CapabilityError
from .graphs import (
    LabeledDigraph,
    admits_ncpp,
    bipartite_g_tau,
    block_bipartite,
    build_t,
    edge_classes,
    limit_conditions,
    obstruction_set,
    orientation_balance,
    pi_bar,
    quotient,
)
from .moments import (
    finite_n_moment,
    fluctuation_moment,
    free_cumulant,
    free_cumulants,
    k_tau_pi,
    moment_oracle,
    pseudo_cumulant,
)
from .montecarlo import (
    EntryLaw,
    beta_assignment,
    beta_of,
    empirical_fluctuation,
    parse_law,
    plugin_joint_cumulant,
    sample,
)
from .partitioned import (
    ZERO,
    PartitionedPermutation,
    enumerate_ps_nc,
    enumerate_ps_nc2,
    enumerate_ps_nc21,
    enumerate_ps_nc2_loopfree,
    is_loop_free,
    is_maximal,
    is_nc_partitioned_perm,
    loop_pairs,
    pp_length,
    pp_product,
    product_membership,
    related_blocks,
)
from .permutations import Permutation, enumerate_permutations, restrict
from .setpartitions import (
    SetPartition,
    bell_number,
    enumerate_pairings,
    enumerate_partitions,
)
from .unionfind import UnionFind

__version__ = "0.1.0"

__all__ = [
    "BetaPoly",
    "CapabilityError",
    "EntryLaw",
    "LabeledDigraph",
    "NC",
    "NC_NONCONNECTING",
    "NEITHER",
    "PartitionedPermutation",
    "Permutation",
    "SetPartition",
    "UnionFind",
    "ZERO",
    "admits_ncpp",
    "bell_number",
    "beta_assignment",
    "beta_of",
    "bipartite_g_tau",
    "block_bipartite",
    "build_t",
    "classify_relative",
    "edge_classes",
    "empirical_fluctuation",
    "enumerate_nc2",
    "enumerate_nc2nc",
    "enumerate_pairings",
    "enumerate_partitions",
    "enumerate_permutations",
    "enumerate_ps_nc",
    "enumerate_ps_nc2",
    "enumerate_ps_nc21",
    "enumerate_ps_nc2_loopfree",
    "finite_n_moment",
    "fluctuation_moment",
    "free_cumulant",
    "free_cumulants",
    "gamma_of",
    "is_cutting",
    "is_loop_block",
    "is_loop_free",
    "is_maximal",
    "is_nc_partitioned_perm",
    "is_noncrossing_disc",
    "is_noncrossing_partition",
    "k_tau_pi",
    "limit_conditions",
    "loop_pairs",
    "moment_oracle",
    "obstruction_set",
    "orientation_balance",
    "parse_law",
    "pi_bar",
    "plugin_joint_cumulant",
    "pp_length",
    "pp_product",
    "product_membership",
    "pseudo_cumulant",
    "quotient",
    "related_blocks",
    "restrict",
    "sample",
    "through_strings",
]
