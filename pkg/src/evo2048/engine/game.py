"""Game mechanics: slides, spawns, terminal detection, full seeded games.

A game owns one spawn RNG stream derived from its 64-bit seed; search
playouts draw from a separate stream (see ``evo2048.search``), so a
recorded game replays exactly regardless of how moves were chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from ..rng import Xoshiro256StarStar, derive
from . import kernels
from .board import Board, MoveDir

# Substream tags under one game seed.
STREAM_SPAWNS = 0
STREAM_PLAYOUTS = 1

SPAWN_TWO_PROB = 0.9


class EngineError(Exception):
    """Base class for engine failures."""


class FullBoardError(EngineError):
    """Spawn requested on a board with no empty cell."""


class IllegalMoveError(EngineError):
    """A policy returned a move that does not change the board."""

    def __init__(self, board: Board, move: MoveDir):
        self.board = board
        self.move = move
        super().__init__(
            f"illegal move {move.label!r} on board:\n{board.render()}"
        )


@dataclass(frozen=True)
class SpawnEvent:
    """One random tile arrival: cell index 0..15, exponent 1 (tile 2) or 2."""

    cell: int
    exponent: int


@dataclass(frozen=True)
class GameStep:
    move: MoveDir
    spawn: SpawnEvent
    score_delta: int


@dataclass
class GameRecord:
    """Seeded, replayable trace of one finished game."""

    seed: int
    initial_board: Board
    steps: list[GameStep]
    final_score: int
    highest_tile: int
    terminal: bool

    @property
    def n_moves(self) -> int:
        return len(self.steps)

    @cached_property
    def final_board(self) -> Board:
        """Board after folding all stored steps (no RNG; spawns are stored)."""
        packed = self.initial_board.packed
        for i, step in enumerate(self.steps):
            packed, _, moved = kernels.slide(packed, int(step.move))
            if not moved:
                raise ValueError(f"step {i}: stored move does not change the board")
            packed = kernels.set_cell(packed, step.spawn.cell, step.spawn.exponent)
        return Board(packed)


def slide(board: Board, direction: MoveDir) -> tuple[Board, int, bool]:
    """Slide without spawning; returns (board, score_delta, moved)."""
    packed, score, moved = kernels.slide(board.packed, int(direction))
    return Board(packed), score, moved


def legal_moves(board: Board) -> set[MoveDir]:
    mask = kernels.legal_mask(board.packed)
    return {d for d in MoveDir if mask & (1 << d)}


def legal_moves_ordered(board: Board) -> list[MoveDir]:
    mask = kernels.legal_mask(board.packed)
    return [d for d in MoveDir if mask & (1 << d)]


def is_terminal(board: Board) -> bool:
    return kernels.legal_mask(board.packed) == 0


def spawn(board: Board, rng: Xoshiro256StarStar) -> tuple[Board, SpawnEvent]:
    """Spawn one tile: uniform empty cell, then exponent 1 at 90% else 2."""
    empties = kernels.count_empty(board.packed)
    if empties == 0:
        raise FullBoardError("cannot spawn on a full board")
    cell = kernels.kth_empty(board.packed, rng.randbelow(empties))
    exponent = 1 if rng.random() < SPAWN_TWO_PROB else 2
    return Board(kernels.set_cell(board.packed, cell, exponent)), SpawnEvent(
        cell, exponent
    )


def spawn_rng(seed: int) -> Xoshiro256StarStar:
    """The spawn stream for a game seed."""
    return Xoshiro256StarStar(derive(seed, STREAM_SPAWNS))


def playout_rng(seed: int) -> Xoshiro256StarStar:
    """The search-playout stream for a game seed."""
    return Xoshiro256StarStar(derive(seed, STREAM_PLAYOUTS))


def initial_board(rng: Xoshiro256StarStar) -> Board:
    """Standard opening: two spawned tiles on an empty board."""
    board = Board()
    board, _ = spawn(board, rng)
    board, _ = spawn(board, rng)
    return board


def play_game(policy: Callable[[Board], MoveDir], seed: int) -> GameRecord:
    """Play one full game; the policy picks a legal move per position.

    Raises IllegalMoveError (with the offending board and move) if the
    policy returns a direction that does not change the board.
    """
    rng = spawn_rng(seed)
    start = initial_board(rng)
    board = start
    steps: list[GameStep] = []
    score = 0
    while not is_terminal(board):
        move = policy(board)
        packed, delta, moved = kernels.slide(board.packed, int(move))
        if not moved:
            raise IllegalMoveError(board, move)
        score += delta
        board, event = spawn(Board(packed), rng)
        steps.append(GameStep(move, event, delta))
    record = GameRecord(
        seed=seed,
        initial_board=start,
        steps=steps,
        final_score=score,
        highest_tile=board.highest_tile(),
        terminal=True,
    )
    record.__dict__["final_board"] = board  # prime the cache; already known
    return record


def first_legal_policy(board: Board) -> MoveDir:
    """Always the first legal direction in MoveDir order."""
    mask = kernels.legal_mask(board.packed)
    for d in MoveDir:
        if mask & (1 << d):
            return d
    raise EngineError("no legal move on a terminal board")


def make_random_policy(seed: int) -> Callable[[Board], MoveDir]:
    """Uniformly random legal move, from a private stream."""
    rng = Xoshiro256StarStar(seed)

    def policy(board: Board) -> MoveDir:
        moves = legal_moves_ordered(board)
        if not moves:
            raise EngineError("no legal move on a terminal board")
        return moves[rng.randbelow(len(moves))]

    return policy


def play_random_games(n: int, master_seed: int) -> list[GameRecord]:
    """Seeded random-policy games; the random-play scoring baseline."""
    records = []
    for i in range(n):
        game_seed = derive(master_seed, 100, i)
        policy = make_random_policy(derive(game_seed, 101))
        records.append(play_game(policy, game_seed))
    return records
