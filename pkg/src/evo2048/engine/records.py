"""Game record serialization (JSONL) and seed-driven replay verification.

One JSON object per line; integers and short strings only, so a
round-trip is bit-exact. Schema per record:

    {"seed": int,
     "initial_board": [16 exponents, row-major],
     "steps": [{"dir": "up|down|left|right",
                "spawn_cell": 0..15, "spawn_exp": 1|2,
                "score_delta": int}, ...],
     "final_score": int, "highest_tile": int, "terminal": bool}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator

from . import kernels
from .board import Board, MoveDir
from .game import (
    GameRecord,
    GameStep,
    SpawnEvent,
    initial_board,
    is_terminal,
    spawn,
    spawn_rng,
)


class RecordError(Exception):
    """Malformed record file or JSON payload."""


class ReplayDivergence(Exception):
    """Re-simulation from the seed disagrees with the stored record."""

    def __init__(self, step_index: int, detail: str):
        self.step_index = step_index
        self.detail = detail
        super().__init__(f"step {step_index}: {detail}")


def record_to_dict(record: GameRecord) -> dict:
    return {
        "seed": record.seed,
        "initial_board": list(record.initial_board.exponents()),
        "steps": [
            {
                "dir": step.move.label,
                "spawn_cell": step.spawn.cell,
                "spawn_exp": step.spawn.exponent,
                "score_delta": step.score_delta,
            }
            for step in record.steps
        ],
        "final_score": record.final_score,
        "highest_tile": record.highest_tile,
        "terminal": record.terminal,
    }


def record_from_dict(data: dict) -> GameRecord:
    try:
        steps = [
            GameStep(
                MoveDir.parse(s["dir"]),
                SpawnEvent(int(s["spawn_cell"]), int(s["spawn_exp"])),
                int(s["score_delta"]),
            )
            for s in data["steps"]
        ]
        record = GameRecord(
            seed=int(data["seed"]),
            initial_board=Board.from_exponents(data["initial_board"]),
            steps=steps,
            final_score=int(data["final_score"]),
            highest_tile=int(data["highest_tile"]),
            terminal=bool(data["terminal"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise RecordError(f"malformed game record: {exc}") from exc
    return record


def write_records(path: str | Path, records: Iterable[GameRecord]) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record_to_dict(record), separators=(",", ":")))
            fh.write("\n")


def read_records(path: str | Path) -> list[GameRecord]:
    return list(iter_records(path))


def iter_records(path: str | Path) -> Iterator[GameRecord]:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordError(f"{path}:{lineno}: bad JSON: {exc}") from exc
            yield record_from_dict(data)


def replay(record: GameRecord) -> list[Board]:
    """Re-simulate a record from its seed and verify every stored field.

    Returns the board after every step (including the initial board at
    index 0). Raises ReplayDivergence at the first mismatch: wrong
    initial board, illegal stored move, score delta, spawn event, final
    score, highest tile, or a non-terminal final position.
    """
    rng = spawn_rng(record.seed)
    board = initial_board(rng)
    if board != record.initial_board:
        raise ReplayDivergence(
            0,
            "initial board mismatch: derived %r, stored %r"
            % (board.exponents(), record.initial_board.exponents()),
        )
    boards = [board]
    score = 0
    for i, step in enumerate(record.steps):
        packed, delta, moved = kernels.slide(board.packed, int(step.move))
        if not moved:
            raise ReplayDivergence(i, f"stored move {step.move.label!r} is illegal")
        if delta != step.score_delta:
            raise ReplayDivergence(
                i, f"score delta {delta} != stored {step.score_delta}"
            )
        board, event = spawn(Board(packed), rng)
        if event != step.spawn:
            raise ReplayDivergence(i, f"spawn {event} != stored {step.spawn}")
        score += delta
        boards.append(board)
    if score != record.final_score:
        raise ReplayDivergence(
            len(record.steps), f"final score {score} != stored {record.final_score}"
        )
    if board.highest_tile() != record.highest_tile:
        raise ReplayDivergence(
            len(record.steps),
            f"highest tile {board.highest_tile()} != stored {record.highest_tile}",
        )
    if record.terminal and not is_terminal(board):
        raise ReplayDivergence(len(record.steps), "stored game is not terminal")
    return boards


def verify(record: GameRecord) -> None:
    """Replay and discard the boards; raises ReplayDivergence on mismatch."""
    replay(record)
