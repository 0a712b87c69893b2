"""Playout-based move selection ("limited MCTS").

One-ply expansion: each legal slide is tried, then scored by Monte Carlo
playouts of fixed depth. A playout spawns a tile, rolls out moves with a
cheap policy, and values the end position as

    lam * g / (g + 1000) + (1 - lam) * evaluator(final board)

where g is the score gained from the root slide onward. The move with
the highest mean playout value wins; ties break in MoveDir order
(Up < Down < Left < Right).

Every playout runs on its own RNG substream ``derive(base, dir, i)``
with one base seed drawn per select_move call, so results are identical
no matter how playouts are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .engine import kernels
from .engine.board import Board, MoveDir
from .engine.game import GameRecord, play_game, playout_rng
from .heuristics.external import ExternalEvaluatorHandle
from .heuristics.vfspec import ValueFunctionSpec
from .rng import Xoshiro256StarStar, derive

ROLLOUT_POLICIES = ("uniform_random", "greedy_1ply")

_POLICY_CODES = {
    "uniform_random": kernels.POLICY_UNIFORM,
    "greedy_1ply": kernels.POLICY_GREEDY,
}

SCORE_NORM = 1000.0


class SearchError(Exception):
    pass


@dataclass(frozen=True)
class SearchConfig:
    playouts_per_move: int = 50
    playout_depth: int = 10
    rollout_policy: str = "uniform_random"
    leaf_mix: float = 0.5  # lam: weight of normalized score gain
    rng_seed: int = 0

    def __post_init__(self):
        if self.playouts_per_move < 1:
            raise SearchError("playouts_per_move must be >= 1")
        if self.playout_depth < 1:
            raise SearchError("playout_depth must be >= 1")
        if self.rollout_policy not in ROLLOUT_POLICIES:
            raise SearchError(
                f"rollout_policy must be one of {ROLLOUT_POLICIES}, "
                f"got {self.rollout_policy!r}"
            )
        if not 0.0 <= self.leaf_mix <= 1.0:
            raise SearchError("leaf_mix must be within [0, 1]")


@dataclass(frozen=True)
class MoveEvaluation:
    dir: MoveDir
    mean_value: float
    playouts: int
    mean_score_delta: float


Evaluator = Callable[[Board], float]


def as_callable(evaluator) -> Evaluator:
    """Normalize spec/handle/callable evaluator forms to Board -> float."""
    if isinstance(evaluator, ValueFunctionSpec):
        return evaluator.evaluate
    if isinstance(evaluator, ExternalEvaluatorHandle):
        client = evaluator.client()
        return lambda board: client.evaluate(board)
    if callable(evaluator):
        return evaluator
    raise SearchError(f"unusable evaluator {evaluator!r}")


def select_move(
    board: Board,
    evaluator,
    cfg: SearchConfig,
    rng: Xoshiro256StarStar,
) -> tuple[MoveDir, list[MoveEvaluation]]:
    """Pick a move for a non-terminal board; returns per-move statistics."""
    if kernels.legal_mask(board.packed) == 0:
        raise SearchError("select_move on a terminal board")
    base_seed = rng.next_u64()
    policy_code = _POLICY_CODES[cfg.rollout_policy]

    arrays = (
        evaluator.kernel_arrays()
        if isinstance(evaluator, ValueFunctionSpec)
        else None
    )
    if arrays is not None:
        rows = kernels.search_eval(
            board.packed,
            cfg.playouts_per_move,
            cfg.playout_depth,
            policy_code,
            cfg.leaf_mix,
            arrays[0],
            arrays[1],
            base_seed,
        )
    else:
        rows = _search_eval_generic(
            board.packed,
            cfg.playouts_per_move,
            cfg.playout_depth,
            policy_code,
            cfg.leaf_mix,
            as_callable(evaluator),
            base_seed,
        )

    evaluations = [
        MoveEvaluation(
            dir=MoveDir(d),
            mean_value=mean_value,
            playouts=cfg.playouts_per_move,
            mean_score_delta=mean_gain,
        )
        for d, mean_value, mean_gain in rows
    ]
    best = evaluations[0]
    for ev in evaluations[1:]:
        if ev.mean_value > best.mean_value:
            best = ev
    return best.dir, evaluations


def _search_eval_generic(
    packed: int,
    playouts: int,
    depth: int,
    policy_code: int,
    lam: float,
    leaf: Evaluator,
    base_seed: int,
) -> list[tuple[int, float, float]]:
    """Python mirror of the kernel search loop for arbitrary evaluators.

    Must follow the exact same draw and accumulation order as the kernel
    path so that a spec evaluated through either path gives identical
    floats.
    """
    rows = []
    for d in range(4):
        after, root_score, moved = kernels.slide(packed, d)
        if not moved:
            continue
        total_value = 0.0
        total_gain = 0.0
        for i in range(playouts):
            sub_seed = derive(base_seed, d, i)
            final, rollout_gain = kernels.playout(after, depth, policy_code, sub_seed)
            g = root_score + rollout_gain
            total_gain += g
            total_value += lam * (g / (g + SCORE_NORM)) + (1.0 - lam) * leaf(
                Board(final)
            )
        rows.append((d, total_value / playouts, total_gain / playouts))
    return rows


def make_search_policy(
    evaluator, cfg: SearchConfig, rng: Xoshiro256StarStar
) -> Callable[[Board], MoveDir]:
    def policy(board: Board) -> MoveDir:
        move, _ = select_move(board, evaluator, cfg, rng)
        return move

    return policy


def play_mcts_game(spec_or_handle, cfg: SearchConfig, seed: int) -> GameRecord:
    """One full game with search-selected moves.

    Game spawns and search playouts use separate streams derived from
    the seed, so a stored record replays without re-running the search.
    """
    rng = playout_rng(seed)
    policy = make_search_policy(spec_or_handle, cfg, rng)
    return play_game(policy, seed)
