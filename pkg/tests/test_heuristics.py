"""Heuristic terms and value-function specs against the naive reference."""

import json
import math

import pytest

import oracles
from curated_boards import CURATED_BOARDS
from evo2048.engine.board import Board
from evo2048.heuristics import (
    TERM_NAMES,
    HeuristicTerm,
    SpecValidationError,
    ValueFunctionSpec,
    canonical_specs,
    eval_spec,
    eval_term,
    named_spec,
)
from evo2048.rng import Xoshiro256StarStar


def board_of(values):
    return Board.from_tiles(values)


# ---------------------------------------------------------------------------
# Term-by-term differential against the reference


@pytest.mark.parametrize("name", TERM_NAMES)
def test_term_matches_reference_on_random_boards(name):
    rng = Xoshiro256StarStar(hash(name) & 0xFFFF | 0x5000)
    oracle = oracles.ORACLE_TERMS[name]
    for _ in range(1500):
        grid = oracles.random_grid(rng, max_exponent=15, fill=0.6)
        got = eval_term(name, board_of(oracles.grid_values(grid)))
        want = oracle(grid)
        assert abs(got - want) <= 1e-12, (name, grid)
        assert 0.0 <= got <= 1.0


@pytest.mark.parametrize("name", TERM_NAMES)
def test_term_on_empty_and_full(name):
    empty = board_of([0] * 16)
    full = board_of([2] * 16)
    assert 0.0 <= eval_term(name, empty) <= 1.0
    assert 0.0 <= eval_term(name, full) <= 1.0
    if name == "empty_ratio":
        assert eval_term(name, empty) == 1.0
        assert eval_term(name, full) == 0.0


def test_selected_term_values_by_hand():
    # single pair of 2s: one adjacent pair out of 24 slots
    b = board_of([0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0])
    assert eval_term("merge_ratio", b) == pytest.approx(1 / 24, abs=1e-12)
    # its merged value ratio: pair value 2 over 2*total 8
    assert eval_term("merge_value_ratio", b) == pytest.approx(0.25, abs=1e-12)
    # highest tile 2048 anywhere saturates highest_ratio
    assert eval_term("highest_ratio", board_of([2048] + [0] * 15)) == 1.0
    # highest at bottom-right corner
    b2 = board_of([0] * 15 + [2048])
    assert eval_term("corner_bonus", b2) == 1.0
    assert eval_term("corner_proximity", b2) == pytest.approx(
        0.7 * 1.0 + 0.3 * 0.5, abs=1e-12
    )
    # highest at top-left: bottom-right proximity is zero, other corner exact
    b3 = board_of([2048] + [0] * 15)
    assert eval_term("corner_proximity", b3) == pytest.approx(0.3, abs=1e-12)
    # all fours: every neighbour pair equal -> smoothness saturates
    assert eval_term("smoothness_ratio", board_of([4] * 16)) == 1.0
    # snake run along the bottom row from the corner: 3 of 15 pairs
    b4 = board_of([0] * 12 + [8, 16, 32, 64])
    assert eval_term("snake_ratio", b4) == pytest.approx(3 / 15, abs=1e-12)


def test_monotonicity_components():
    # bottom row descending left->right counts; right column empty above
    desc = board_of([0] * 12 + [64, 32, 16, 8])
    assert eval_term("monotonicity_score", desc) == 1.0  # row + col (len-1 col)
    # bottom row zigzag breaks the row half; right col [0,0,0,8] holds
    zig = board_of([0] * 12 + [8, 64, 16, 32])
    assert eval_term("monotonicity_score", zig) == 0.5
    # right column increasing downward scores the column half
    col = board_of([0, 0, 0, 2, 0, 0, 0, 4, 0, 0, 0, 8, 2, 4, 32, 16])
    assert eval_term("monotonicity_score", col) == pytest.approx(0.5)
    # empty board scores nothing
    assert eval_term("monotonicity_score", board_of([0] * 16)) == 0.0


def test_term_params_override():
    b = board_of([0] * 15 + [2048])
    t = HeuristicTerm("corner_proximity", {"br_weight": 1.0, "other_weight": 0.0})
    assert eval_term(t, b) == pytest.approx(1.0, abs=1e-12)
    t2 = HeuristicTerm("monotonicity_score", {"row_weight": 1.0, "col_weight": 0.0})
    desc = board_of([0] * 12 + [64, 32, 16, 8])
    assert eval_term(t2, desc) == 1.0


def test_unknown_term_and_bad_params_rejected():
    with pytest.raises(SpecValidationError):
        HeuristicTerm("tile_karma")
    with pytest.raises(SpecValidationError):
        HeuristicTerm("empty_ratio", {"gain": 2.0})
    with pytest.raises(SpecValidationError):
        HeuristicTerm("corner_proximity", {"br_weight": float("nan")})


# ---------------------------------------------------------------------------
# Spec evaluation: curated frozen values


@pytest.mark.parametrize("name", sorted(CURATED_BOARDS))
def test_eval_spec_curated_pre10(name):
    values, pre_expect, _ = CURATED_BOARDS[name]
    pre10, _ = canonical_specs()
    assert eval_spec(pre10, board_of(values)) == pytest.approx(pre_expect, abs=1e-9)


@pytest.mark.parametrize("name", sorted(CURATED_BOARDS))
def test_eval_spec_curated_post10(name):
    values, _, post_expect = CURATED_BOARDS[name]
    _, post10 = canonical_specs()
    assert eval_spec(post10, board_of(values)) == pytest.approx(post_expect, abs=1e-9)


def test_eval_spec_identity_composition():
    spec = ValueFunctionSpec(
        id="just-empty", terms=((HeuristicTerm("empty_ratio"), 1.0),)
    )
    b = board_of([2, 4] + [0] * 14)
    assert eval_spec(spec, b) == eval_term("empty_ratio", b)


def test_eval_spec_matches_termwise_sum_random():
    pre10, post10 = canonical_specs()
    rng = Xoshiro256StarStar(4141)
    for _ in range(300):
        grid = oracles.random_grid(rng, fill=0.5)
        b = board_of(oracles.grid_values(grid))
        for spec in (pre10, post10):
            by_terms = sum(w * eval_term(t, b) for t, w in spec.terms)
            assert eval_spec(spec, b) == pytest.approx(by_terms, abs=1e-12)


# ---------------------------------------------------------------------------
# Canonical specs and validation


def test_canonical_weights_sum_to_one():
    pre10, post10 = canonical_specs()
    assert math.fsum(w for _, w in pre10.terms) == pytest.approx(1.0, abs=1e-12)
    assert math.fsum(w for _, w in post10.terms) == pytest.approx(1.0, abs=1e-12)


def test_canonical_term_membership():
    pre10, post10 = canonical_specs()
    pre_names = {t.name for t, _ in pre10.terms}
    post_names = {t.name for t, _ in post10.terms}
    assert "smoothness_ratio" not in pre_names
    assert "snake_ratio" not in pre_names
    assert "corner_bonus" not in post_names
    assert "smoothness_ratio" in post_names
    assert pre10.weight_of("empty_ratio") == 0.35
    assert post10.weight_of("empty_ratio") == 0.30
    assert post10.weight_of("snake_ratio") == 0.15


def test_named_spec_shorthands():
    assert named_spec("pre10").id == "canonical-pre10"
    assert named_spec("post10").id == "canonical-post10"
    with pytest.raises(SpecValidationError):
        named_spec("mid10")


def test_spec_validation_rules():
    t = HeuristicTerm("empty_ratio")
    with pytest.raises(SpecValidationError):
        ValueFunctionSpec(id="none", terms=())
    with pytest.raises(SpecValidationError):
        ValueFunctionSpec(id="neg", terms=((t, -0.1),))
    with pytest.raises(SpecValidationError):
        ValueFunctionSpec(id="zero", terms=((t, 0.0),))
    with pytest.raises(SpecValidationError):
        ValueFunctionSpec(
            id="dup", terms=((t, 0.5), (HeuristicTerm("empty_ratio"), 0.5))
        )
    with pytest.raises(SpecValidationError):
        ValueFunctionSpec(id="badorigin", terms=((t, 1.0),), origin="oops")


def test_spec_json_round_trip(tmp_path):
    spec = ValueFunctionSpec(
        id="rt-1",
        terms=(
            (HeuristicTerm("empty_ratio"), 0.5503817281714),
            (HeuristicTerm("corner_proximity", {"br_weight": 0.9, "other_weight": 0.1}), 0.4496182718286),
        ),
        lineage="canonical-pre10",
        origin="mutated",
        created_cycle=7,
    )
    path = tmp_path / "spec.json"
    spec.save(path)
    loaded = ValueFunctionSpec.load(path)
    assert loaded == spec
    # weights survive exactly (repr round-trip)
    assert loaded.terms[0][1] == spec.terms[0][1]
    doc = json.loads(path.read_text())
    assert doc["id"] == "rt-1" and doc["origin"] == "mutated"


def test_kernel_arrays_only_for_default_params():
    pre10, _ = canonical_specs()
    assert pre10.kernel_arrays() is not None
    custom = ValueFunctionSpec(
        id="c",
        terms=((HeuristicTerm("corner_proximity", {"br_weight": 0.8}), 1.0),),
    )
    assert custom.kernel_arrays() is None
    b = board_of([0] * 15 + [2048])
    assert custom.evaluate(b) == pytest.approx(0.8 * 1.0 + 0.3 * 0.5, abs=1e-12)


def test_content_hash_tracks_weights():
    pre10, post10 = canonical_specs()
    assert pre10.content_hash() != post10.content_hash()
    again, _ = canonical_specs()
    assert pre10.content_hash() == again.content_hash()
