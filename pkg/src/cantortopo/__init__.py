"""Decidable topology on the Cantor space {0,1}^N.

Closed sets are safety automata, regular sets are Emerson-Lei automata,
continuous maps are letter-to-word transducers (or finite-stage tables).
"""

from .closed import (
    AmbientViolation,
    BudgetExceeded,
    SafetyAutomaton,
    cb_derivative,
    member,
    perfect_kernel,
)
from .decomposition import DecompositionResult, DecompositionStatus, kernel_decompose
from .finite_map import FiniteStageMap, TableError, table_check_nowhere_open, table_check_open
from .hset import (
    ConstructionObstructed,
    DConstruction,
    HFamily,
    check_h_conditions,
    construct_d,
    generate_h,
    verify_d,
)
from .omega import RegSet, SizeLimitError, closure, combine, is_empty_omega, member_lasso
from .oracle import compare_all_depths, compare_with_engine, oracle_eval
from .resolvability import ResolvabilityVerdict, Status, check_resolvable, derivative
from .spec_format import Model, ParseError, SemanticError, bundled_model, parse_spec
from .transducers import (
    NonProductive,
    Transducer,
    check_nowhere_open,
    check_open,
    eval_point,
    image_closed,
    is_injective,
    preimage_closed,
)
from .words import ClopenSet, Cylinder, Point

__version__ = "0.1.0"
