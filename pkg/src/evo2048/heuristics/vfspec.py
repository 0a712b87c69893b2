"""Declarative value-function specs: weighted term bundles with lineage.

A ValueFunctionSpec is the unit the evolution loop mutates, evaluates,
rolls back to, and persists. Specs are versioned by id and form a
lineage forest rooted at seed specs.

ProgramSpec covers the opt-in pathway where a mutation produces
arbitrary evaluator code instead of a term reweighting; such specs are
executed out-of-process through the external-evaluator protocol and
never imported into this process.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..engine.board import Board
from ..engine import kernels
from .terms import HeuristicTerm, SpecValidationError, TERM_PARAMS

ORIGIN_SEED = "seed"
ORIGIN_MUTATED = "mutated"
ORIGIN_ROLLED_BACK = "rolled_back"
ORIGINS = (ORIGIN_SEED, ORIGIN_MUTATED, ORIGIN_ROLLED_BACK)


@dataclass(frozen=True)
class ValueFunctionSpec:
    id: str
    terms: tuple  # of (HeuristicTerm, float weight)
    lineage: str | None = None
    origin: str = ORIGIN_SEED
    created_cycle: int = 0

    def __post_init__(self):
        if self.origin not in ORIGINS:
            raise SpecValidationError(f"unknown origin {self.origin!r}")
        if not self.terms:
            raise SpecValidationError("spec has no terms")
        names = [t.name for t, _ in self.terms]
        if len(set(names)) != len(names):
            raise SpecValidationError("duplicate term names in spec")
        positive = 0
        for term, weight in self.terms:
            if not isinstance(term, HeuristicTerm):
                raise SpecValidationError("terms must be HeuristicTerm instances")
            if not (weight == weight and weight >= 0.0):
                raise SpecValidationError(
                    f"weight of {term.name!r} must be nonnegative, got {weight!r}"
                )
            if weight > 0.0:
                positive += 1
        if positive == 0:
            raise SpecValidationError("spec needs at least one positive weight")

    # -- evaluation ---------------------------------------------------------

    def kernel_arrays(self) -> tuple[tuple[int, ...], tuple[float, ...]] | None:
        """(term_ids, weights) when every term is default-parameter, else
        None; lets search run the whole evaluation inside the kernels."""
        if all(term.is_default() for term, _ in self.terms):
            return (
                tuple(term.term_id for term, _ in self.terms),
                tuple(weight for _, weight in self.terms),
            )
        return None

    def evaluate(self, board: Board) -> float:
        arrays = self.kernel_arrays()
        if arrays is not None:
            return kernels.eval_weighted(board.packed, arrays[0], arrays[1])
        from .terms import eval_term

        acc = 0.0
        for term, weight in self.terms:
            acc += weight * eval_term(term, board)
        return acc

    def __call__(self, board: Board) -> float:
        return self.evaluate(board)

    # -- persistence --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "lineage": self.lineage,
            "origin": self.origin,
            "created_cycle": self.created_cycle,
            "terms": [
                {"name": term.name, "weight": weight, "params": dict(term.params)}
                for term, weight in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ValueFunctionSpec":
        try:
            terms = tuple(
                (HeuristicTerm(t["name"], dict(t.get("params") or {})), float(t["weight"]))
                for t in data["terms"]
            )
            return cls(
                id=str(data["id"]),
                terms=terms,
                lineage=data.get("lineage"),
                origin=data.get("origin", ORIGIN_SEED),
                created_cycle=int(data.get("created_cycle", 0)),
            )
        except (KeyError, TypeError) as exc:
            raise SpecValidationError(f"malformed spec document: {exc}") from exc

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "ValueFunctionSpec":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SpecValidationError(f"{path}: bad JSON: {exc}") from exc
        return cls.from_json_dict(data)

    def weight_of(self, name: str) -> float:
        for term, weight in self.terms:
            if term.name == name:
                return weight
        return 0.0

    def content_hash(self) -> str:
        payload = json.dumps(
            [
                {"name": t.name, "weight": w, "params": sorted(t.params.items())}
                for t, w in self.terms
            ],
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:8]


@dataclass(frozen=True)
class ProgramSpec:
    """Evaluator expressed as source code, run out-of-process only."""

    id: str
    source: str
    lineage: str | None = None
    origin: str = ORIGIN_MUTATED
    created_cycle: int = 0

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": "program",
            "lineage": self.lineage,
            "origin": self.origin,
            "created_cycle": self.created_cycle,
            "program_file": f"programs/{self.id}.py",
        }

    def content_hash(self) -> str:
        return hashlib.sha256(self.source.encode()).hexdigest()[:8]


def spec_kind(data: dict) -> str:
    return data.get("kind", "declarative")


def eval_spec(spec: ValueFunctionSpec, board: Board) -> float:
    """Weighted sum of the spec's terms on a board."""
    return spec.evaluate(board)


def _spec(id_, pairs, origin=ORIGIN_SEED):
    return ValueFunctionSpec(
        id=id_,
        terms=tuple((HeuristicTerm(name), weight) for name, weight in pairs),
        lineage=None,
        origin=origin,
        created_cycle=0,
    )


def canonical_specs() -> tuple[ValueFunctionSpec, ValueFunctionSpec]:
    """The two reference weight vectors (each sums to 1.00).

    pre10 favours corner anchoring and the bottom row; post10 swaps in
    corner proximity, smoothness and the snake ordering.
    """
    pre10 = _spec(
        "canonical-pre10",
        [
            ("empty_ratio", 0.35),
            ("highest_ratio", 0.20),
            ("corner_bonus", 0.15),
            ("bottom_row_ratio", 0.10),
            ("merge_value_ratio", 0.10),
            ("merge_ratio", 0.05),
            ("monotonicity_score", 0.05),
        ],
    )
    post10 = _spec(
        "canonical-post10",
        [
            ("empty_ratio", 0.30),
            ("highest_ratio", 0.20),
            ("corner_proximity", 0.15),
            ("merge_ratio", 0.10),
            ("smoothness_ratio", 0.10),
            ("snake_ratio", 0.15),
        ],
    )
    return pre10, post10


def named_spec(name: str) -> ValueFunctionSpec:
    """Resolve 'pre10'/'post10' shorthands."""
    pre10, post10 = canonical_specs()
    if name == "pre10":
        return pre10
    if name == "post10":
        return post10
    raise SpecValidationError(f"unknown canonical spec {name!r}")
