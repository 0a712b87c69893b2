from .board import Board, MoveDir
from .game import (
    EngineError,
    FullBoardError,
    GameRecord,
    GameStep,
    IllegalMoveError,
    SpawnEvent,
    first_legal_policy,
    initial_board,
    is_terminal,
    legal_moves,
    legal_moves_ordered,
    make_random_policy,
    play_game,
    play_random_games,
    playout_rng,
    slide,
    spawn,
    spawn_rng,
)
from .records import (
    RecordError,
    ReplayDivergence,
    iter_records,
    read_records,
    record_from_dict,
    record_to_dict,
    replay,
    verify,
    write_records,
)

__all__ = [
    "Board",
    "MoveDir",
    "EngineError",
    "FullBoardError",
    "GameRecord",
    "GameStep",
    "IllegalMoveError",
    "SpawnEvent",
    "first_legal_policy",
    "initial_board",
    "is_terminal",
    "legal_moves",
    "legal_moves_ordered",
    "make_random_policy",
    "play_game",
    "play_random_games",
    "playout_rng",
    "slide",
    "spawn",
    "spawn_rng",
    "RecordError",
    "ReplayDivergence",
    "iter_records",
    "read_records",
    "record_from_dict",
    "record_to_dict",
    "replay",
    "verify",
    "write_records",
]
