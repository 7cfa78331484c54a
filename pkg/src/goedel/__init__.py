"""Exact rational semantics, decision procedures, interpolant search, and
countermodel synthesis for first-order Goedel logic with and without the
Delta operator."""

from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Const,
    Delta,
    Exists,
    Forall,
    Formula,
    Implies,
    Or,
    ParseError,
    Signature,
    SyntaxInvariantError,
    Var,
    constants_of,
    delta_neg,
    enumerate_closed_formulas,
    formula_sort_key,
    fresh_constants,
    fresh_variables,
    generalize_constant,
    iff,
    is_g_formula,
    language_of,
    neg,
    parse_formula,
    parse_theory,
    pretty,
    substitute,
)
from .semantics import (
    ONE,
    ZERO,
    Valuation,
    as_truth_value,
    assignment_valuation,
    evaluate,
    models,
    valuation_from_dict,
    valuation_from_json,
    valuation_to_dict,
    valuation_to_json,
)
from .decision import (
    CompletenessReport,
    EntailmentVerdict,
    NonPropositionalError,
    SearchBudgetExceeded,
    canonical_chain,
    classify_completeness,
    enumerate_assignments,
    fo_check_bounded,
    is_tautology,
    one_entails,
    prop_atoms,
    satisfiable,
)
# chain (de)serializers stay module-qualified: lindenbaum and linorder
# both name them chain_to_dict/chain_from_dict for their own chain kinds
from .lindenbaum import (
    ChainError,
    CompleteTheoryOracle,
    LindChain,
    LindClass,
    build_chain,
    class_op,
)
from .linorder import (
    AmalgamResult,
    BoundedChain,
    LinHom,
    OrderError,
    amalgam_to_dict,
    amalgam_to_dot,
    amalgamate,
    embed_into_unit,
    linear_extension,
    validate_lin_hom,
)
from .interpolation import (
    CloneBudgetError,
    CloneTable,
    CommonLanguageError,
    PipelineTrace,
    PreconditionError,
    SeparabilityCertificate,
    SeparableTheories,
    abstract_constants,
    clone_closure,
    countermodel_synthesize,
    find_separator,
    henkin_extend,
    interpolate,
    separates,
)
from .suites import (
    ItemReport,
    SuiteReport,
    constants_suite,
    eqd_suite,
    property_suite,
)
from .cli import RunConfig, lemma_suites, run_command

__version__ = "0.1.0"

__all__ = [
    "BOT",
    "TOP",
    "And",
    "Atom",
    "Const",
    "Delta",
    "Exists",
    "Forall",
    "Formula",
    "Implies",
    "Or",
    "ParseError",
    "Signature",
    "SyntaxInvariantError",
    "Var",
    "constants_of",
    "delta_neg",
    "enumerate_closed_formulas",
    "formula_sort_key",
    "fresh_constants",
    "fresh_variables",
    "generalize_constant",
    "iff",
    "is_g_formula",
    "language_of",
    "neg",
    "parse_formula",
    "parse_theory",
    "pretty",
    "substitute",
    "ONE",
    "ZERO",
    "Valuation",
    "as_truth_value",
    "assignment_valuation",
    "evaluate",
    "models",
    "valuation_from_dict",
    "valuation_from_json",
    "valuation_to_dict",
    "valuation_to_json",
    "CompletenessReport",
    "EntailmentVerdict",
    "NonPropositionalError",
    "SearchBudgetExceeded",
    "canonical_chain",
    "classify_completeness",
    "enumerate_assignments",
    "fo_check_bounded",
    "is_tautology",
    "one_entails",
    "prop_atoms",
    "satisfiable",
    "ChainError",
    "CompleteTheoryOracle",
    "LindChain",
    "LindClass",
    "build_chain",
    "class_op",
    "AmalgamResult",
    "BoundedChain",
    "LinHom",
    "OrderError",
    "amalgam_to_dict",
    "amalgam_to_dot",
    "amalgamate",
    "embed_into_unit",
    "linear_extension",
    "validate_lin_hom",
    "CloneBudgetError",
    "CloneTable",
    "CommonLanguageError",
    "PipelineTrace",
    "PreconditionError",
    "SeparabilityCertificate",
    "SeparableTheories",
    "abstract_constants",
    "clone_closure",
    "countermodel_synthesize",
    "find_separator",
    "henkin_extend",
    "interpolate",
    "separates",
    "ItemReport",
    "SuiteReport",
    "constants_suite",
    "eqd_suite",
    "property_suite",
    "RunConfig",
    "lemma_suites",
    "run_command",
]
