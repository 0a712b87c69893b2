from .terms import (
    TERM_IDS,
    TERM_NAMES,
    TERM_PARAMS,
    HeuristicTerm,
    SpecValidationError,
    eval_term,
)
from .vfspec import (
    ORIGIN_MUTATED,
    ORIGIN_ROLLED_BACK,
    ORIGIN_SEED,
    ProgramSpec,
    ValueFunctionSpec,
    canonical_specs,
    eval_spec,
    named_spec,
    spec_kind,
)
from .external import (
    EvaluatorProtocolError,
    EvaluatorTimeout,
    EvaluatorValueError,
    ExternalEvaluatorClient,
    ExternalEvaluatorError,
    ExternalEvaluatorHandle,
    eval_external,
)

__all__ = [
    "TERM_IDS",
    "TERM_NAMES",
    "TERM_PARAMS",
    "HeuristicTerm",
    "SpecValidationError",
    "eval_term",
    "ORIGIN_MUTATED",
    "ORIGIN_ROLLED_BACK",
    "ORIGIN_SEED",
    "ProgramSpec",
    "ValueFunctionSpec",
    "canonical_specs",
    "eval_spec",
    "named_spec",
    "spec_kind",
    "EvaluatorProtocolError",
    "EvaluatorTimeout",
    "EvaluatorValueError",
    "ExternalEvaluatorClient",
    "ExternalEvaluatorError",
    "ExternalEvaluatorHandle",
    "eval_external",
]
