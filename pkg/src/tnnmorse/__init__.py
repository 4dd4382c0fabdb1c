"""Combinatorics of cell posets for nonnegative flag varieties: Coxeter
systems, Bruhat order, rightmost subexpressions, reflection-order
EL-labelings, the cell poset Q^J with its cover types, discrete Morse
matchings with goodness certificates, and GF(2) homology checks.
"""

from .bruhat import (
    BruhatInterval,
    HassePoset,
    bruhat_leq,
    check_gamma_reduced,
    covers,
    find_deletion_pairs,
    interval,
    is_thin,
    leq_matrix,
    rightmost_positions,
)
from .cells import (
    TYPE_BOTTOM,
    TYPE_SHRINK_W,
    TYPE_SHRINK_X,
    CellIndex,
    QPoset,
    boundary_poset,
    cell_from_pair,
    closure_poset,
    enumerate_cells,
    make_cell,
    partition_by_w,
    q_leq,
    q_poset,
)
from .coxeter import (
    DEFAULT_GROUP_CAP,
    CoxeterSystem,
    GroupElement,
    ParabolicData,
    Reflection,
    Word,
    coxeter_system,
)
from .errors import TnnMorseError
from .homology import (
    DEFAULT_SIMPLEX_CAP,
    BettiProfile,
    OrderComplex,
    gf2_betti,
    order_complex,
)
from .morse import (
    MorseMatching,
    MorseSummary,
    chari_matching,
    goodness_report,
    match_boundary,
    match_closure,
    match_sx,
    morse_summary,
    order_independence_check,
    sx_pairs,
    sx_poset,
    verify_acyclic,
)
from .shelling import (
    ELLabeling,
    ReflectionOrder,
    dyer_labeling,
    is_reflection_order,
    last_set,
    matching_reflection_order,
    realizing_word,
    reflection_order_from_word,
    reverse_order,
    verify_el,
)
from .subexpr import (
    Subexpression,
    brute_force_rightmost,
    is_good_pair,
    positive_subexpression,
    satisfies_ascent_property,
)
from .verify import CheckResult, Report, run_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # coxeter
    "CoxeterSystem", "GroupElement", "ParabolicData", "Reflection", "Word",
    "coxeter_system", "DEFAULT_GROUP_CAP",
    # bruhat
    "BruhatInterval", "HassePoset", "bruhat_leq", "check_gamma_reduced",
    "covers", "find_deletion_pairs", "interval", "is_thin", "leq_matrix",
    "rightmost_positions",
    # subexpr
    "Subexpression", "brute_force_rightmost", "is_good_pair",
    "positive_subexpression", "satisfies_ascent_property",
    # shelling
    "ELLabeling", "ReflectionOrder", "dyer_labeling", "is_reflection_order",
    "last_set", "matching_reflection_order", "realizing_word",
    "reflection_order_from_word", "reverse_order", "verify_el",
    # cells
    "CellIndex", "QPoset", "TYPE_BOTTOM", "TYPE_SHRINK_W", "TYPE_SHRINK_X",
    "boundary_poset", "cell_from_pair", "closure_poset", "enumerate_cells",
    "make_cell", "partition_by_w", "q_leq", "q_poset",
    # morse
    "MorseMatching", "MorseSummary", "chari_matching", "goodness_report",
    "match_boundary", "match_closure", "match_sx", "morse_summary",
    "order_independence_check", "sx_pairs", "sx_poset", "verify_acyclic",
    # homology
    "BettiProfile", "OrderComplex", "DEFAULT_SIMPLEX_CAP", "gf2_betti",
    "order_complex",
    # verify
    "CheckResult", "Report", "run_suite",
    # errors
    "TnnMorseError",
]
