"""Regular cost functions over finite words.

Stabilisation monoids, computation trees, recognisers, sharp-expression
witnesses, min/max and inf/sup-projection closures, and decision
procedures for boundedness, divergence and domination.
"""
from .algebra import (
    Morphism,
    StabilisationMonoid,
    check_morphism,
    downward_close,
    idempotents,
    pi_eval,
    product_monoid,
    pullback_ideal,
    upward_close,
    validate_axioms,
)
from .computation import (
    CompTree,
    Mode,
    achievable_values,
    construct,
    ramsey_factorise_smooth,
    semantic_value,
    sm_normalise,
    validate_tree,
)
from .errors import (
    AlphabetMismatch,
    CapacityError,
    CostFnError,
    FormulaError,
    LoadError,
    OracleScopeError,
    StructureError,
)
from .green import analyze_j, is_j_smooth, omega_data
from .projection import coideal_powerset, ideal_powerset, inf_project, sup_project
from .recogniser import (
    Decision,
    Recogniser,
    decide_bounded_over,
    decide_boundedness,
    decide_divergence,
    decide_domination,
    joint,
    max_rec,
    min_rec,
    precompose,
)
from .sharpexpr import (
    Concat,
    Empty,
    Letter,
    OmegaSharp,
    canonical_computation,
    sharp_closure,
    unfold,
    value,
)

__version__ = "0.1.0"
