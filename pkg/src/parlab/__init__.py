"""Privacy-approximation ratios of two-party communication protocols.

Exact-arithmetic tools for building outcome matrices, running protocols as
decision trees, taking the tilings they induce, and measuring how much more
than the output those tilings reveal.
"""

from .problems import ProblemSpec, ProblemError
from .tiling import (
    FunctionTable,
    Partition,
    Rect,
    Region,
    Tiling,
    build_table,
    i_ideal_partition,
    i_induced_tiling,
    i_partition,
    ideal_partition,
    is_monochromatic,
    is_partition,
    is_tiling,
    refines,
)
from .protocols import (
    Protocol,
    ProtocolError,
    appendix_a_protocols,
    bisection_auction,
    bisection_protocol,
    bounded_bisection_auction,
    c_bisection_auction,
    communication_complexity,
    english_auction,
    induced_tiling,
    is_protocol_inducible,
    run,
    sealed_bid,
    tpg_reference_protocol,
    validate_protocol,
)
from .par import (
    Distribution,
    ParReport,
    avg_objective_par,
    avg_par_wrt,
    avg_subjective_par,
    generalized_par,
    is_perfectly_private,
    par_report,
    worst_case_objective_par,
    worst_case_par_wrt,
    worst_case_subjective_par,
)
from .formulas import formula

__version__ = "0.1.0"

__all__ = [
    "Distribution",
    "FunctionTable",
    "ParReport",
    "Partition",
    "ProblemError",
    "ProblemSpec",
    "Protocol",
    "ProtocolError",
    "Rect",
    "Region",
    "Tiling",
    "appendix_a_protocols",
    "avg_objective_par",
    "avg_par_wrt",
    "avg_subjective_par",
    "bisection_auction",
    "bisection_protocol",
    "bounded_bisection_auction",
    "build_table",
    "c_bisection_auction",
    "communication_complexity",
    "english_auction",
    "formula",
    "generalized_par",
    "i_ideal_partition",
    "i_induced_tiling",
    "i_partition",
    "ideal_partition",
    "induced_tiling",
    "is_monochromatic",
    "is_partition",
    "is_perfectly_private",
    "is_protocol_inducible",
    "is_tiling",
    "par_report",
    "refines",
    "run",
    "sealed_bid",
    "tpg_reference_protocol",
    "validate_protocol",
    "worst_case_objective_par",
    "worst_case_par_wrt",
    "worst_case_subjective_par",
]
