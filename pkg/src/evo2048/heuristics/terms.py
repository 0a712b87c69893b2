"""Heuristic term vocabulary.

Ten board features, each mapping a Board into [0, 1]. The vocabulary is
closed: value functions may only reweight, drop, or re-parameterize
these terms, which keeps evolved specs declarative and auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..engine import kernels
from ..engine.board import Board
from ..engine import _pure

# name -> kernel term id (order matters; the kernels index by id)
TERM_IDS = {
    "empty_ratio": _pure.TERM_EMPTY_RATIO,
    "highest_ratio": _pure.TERM_HIGHEST_RATIO,
    "corner_bonus": _pure.TERM_CORNER_BONUS,
    "corner_proximity": _pure.TERM_CORNER_PROXIMITY,
    "bottom_row_ratio": _pure.TERM_BOTTOM_ROW_RATIO,
    "merge_value_ratio": _pure.TERM_MERGE_VALUE_RATIO,
    "merge_ratio": _pure.TERM_MERGE_RATIO,
    "monotonicity_score": _pure.TERM_MONOTONICITY,
    "snake_ratio": _pure.TERM_SNAKE_RATIO,
    "smoothness_ratio": _pure.TERM_SMOOTHNESS,
}

TERM_NAMES = tuple(TERM_IDS)

# Terms accepting parameters, with their defaults. Anything else must
# keep params empty.
TERM_PARAMS: dict[str, dict[str, float]] = {
    "corner_proximity": {"br_weight": 0.7, "other_weight": 0.3},
    "monotonicity_score": {"row_weight": 0.5, "col_weight": 0.5},
}


class SpecValidationError(ValueError):
    """Unknown term, bad parameter, or malformed weight."""


@dataclass(frozen=True)
class HeuristicTerm:
    """One vocabulary term, optionally re-parameterized."""

    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in TERM_IDS:
            raise SpecValidationError(f"unknown term {self.name!r}")
        allowed = TERM_PARAMS.get(self.name, {})
        for key, value in self.params.items():
            if key not in allowed:
                raise SpecValidationError(
                    f"term {self.name!r} takes no parameter {key!r}"
                )
            if not isinstance(value, (int, float)) or value != value:
                raise SpecValidationError(
                    f"parameter {key!r} of {self.name!r} must be a finite number"
                )

    @property
    def term_id(self) -> int:
        return TERM_IDS[self.name]

    def is_default(self) -> bool:
        """True when every parameter is at its default value."""
        defaults = TERM_PARAMS.get(self.name, {})
        return all(self.params.get(k, v) == v for k, v in defaults.items())

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.params.items()))))


def eval_term(term: HeuristicTerm | str, board: Board) -> float:
    """Value of one term on a board, in [0, 1]."""
    if isinstance(term, str):
        term = HeuristicTerm(term)
    if term.is_default():
        return kernels.eval_term_id(board.packed, term.term_id)
    # parameterized paths are pure-Python; only default-parameter terms
    # run on the compiled backend
    if term.name == "corner_proximity":
        return _pure.term_corner_proximity(
            board.packed,
            br_weight=term.params.get("br_weight", 0.7),
            other_weight=term.params.get("other_weight", 0.3),
        )
    if term.name == "monotonicity_score":
        return _pure.term_monotonicity(
            board.packed,
            row_weight=term.params.get("row_weight", 0.5),
            col_weight=term.params.get("col_weight", 0.5),
        )
    raise SpecValidationError(f"term {term.name!r} cannot take parameters")
