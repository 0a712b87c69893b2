"""Pure-Python engine kernels.

This module and the compiled twin (``_fast``) implement the same contract:
packed 64-bit boards (4-bit exponents, cell ``i = 4*row + col`` at bits
``4*i``), directions 0=up 1=down 2=left 3=right, xoshiro256** randomness,
and heuristic term evaluation with a fixed accumulation order.  Results,
including every floating-point value, must be bit-identical between the
two backends; the test suite enforces this.

Hot-loop conventions both backends follow:

* a merged pair scores the value of the created tile; a tile merges at
  most once per slide; two cap-exponent (32768) tiles do not merge;
* a rollout move is slide + spawn; playouts stop early on terminal boards;
* playout value = lam * g/(g + 1000) + (1 - lam) * leaf, g being the score
  gained from the root slide onward;
* per-playout RNG substreams come from ``derive(base_seed, dir, playout)``.
"""

from __future__ import annotations

from functools import lru_cache

from ..rng import MASK64, Xoshiro256StarStar, derive

BACKEND_NAME = "pure"

EXPONENT_CAP = 15
SCORE_NORM = 1000.0
SPAWN_TWO_PROB = 0.9

POLICY_UNIFORM = 0
POLICY_GREEDY = 1

ROW_MASK = 0xFFFF

# Snake path anchored at the bottom-right corner: bottom row right-to-left,
# third row left-to-right, second row right-to-left, top row left-to-right.
SNAKE_PATH = (15, 14, 13, 12, 8, 9, 10, 11, 7, 6, 5, 4, 0, 1, 2, 3)

TERM_EMPTY_RATIO = 0
TERM_HIGHEST_RATIO = 1
TERM_CORNER_BONUS = 2
TERM_CORNER_PROXIMITY = 3
TERM_BOTTOM_ROW_RATIO = 4
TERM_MERGE_VALUE_RATIO = 5
TERM_MERGE_RATIO = 6
TERM_MONOTONICITY = 7
TERM_SNAKE_RATIO = 8
TERM_SMOOTHNESS = 9


# ---------------------------------------------------------------------------
# Row and board mechanics


@lru_cache(maxsize=None)
def _row_left(row: int) -> tuple[int, int, bool]:
    """Slide one 16-bit row toward column 0: (new_row, score, moved)."""
    cells = [(row >> (4 * i)) & 0xF for i in range(4)]
    tight = [e for e in cells if e]
    out = []
    score = 0
    i = 0
    while i < len(tight):
        if i + 1 < len(tight) and tight[i] == tight[i + 1] and tight[i] < EXPONENT_CAP:
            e = tight[i] + 1
            out.append(e)
            score += 1 << e
            i += 2
        else:
            out.append(tight[i])
            i += 1
    new = 0
    for i, e in enumerate(out):
        new |= e << (4 * i)
    return new, score, new != row


@lru_cache(maxsize=None)
def _reflect_row(row: int) -> int:
    return (
        (row & 0x000F) << 12
        | (row & 0x00F0) << 4
        | (row & 0x0F00) >> 4
        | (row & 0xF000) >> 12
    )


@lru_cache(maxsize=None)
def _row_right(row: int) -> tuple[int, int, bool]:
    new, score, moved = _row_left(_reflect_row(row))
    return _reflect_row(new), score, moved


def transpose(board: int) -> int:
    """Swap rows and columns of a packed board.

    Two-stage nibble transpose: swap within 2x2 blocks (shift 12), then
    swap the off-diagonal 2x2 blocks (shift 24).
    """
    a1 = board & 0xF0F00F0FF0F00F0F
    a2 = board & 0x0000F0F00000F0F0
    a3 = board & 0x0F0F00000F0F0000
    a = a1 | ((a2 << 12) & MASK64) | (a3 >> 12)
    b1 = a & 0xFF00FF0000FF00FF
    b2 = a & 0x00FF00FF00000000
    b3 = a & 0x00000000FF00FF00
    return b1 | (b2 >> 24) | ((b3 << 24) & MASK64)


def _slide_rows(board: int, row_fn) -> tuple[int, int]:
    new = 0
    score = 0
    for r in range(4):
        row = (board >> (16 * r)) & ROW_MASK
        nrow, sc, _ = row_fn(row)
        new |= nrow << (16 * r)
        score += sc
    return new, score


def slide(board: int, direction: int) -> tuple[int, int, bool]:
    """Apply one slide; returns (new_board, score_delta, moved)."""
    if direction == 2:  # left
        new, score = _slide_rows(board, _row_left)
    elif direction == 3:  # right
        new, score = _slide_rows(board, _row_right)
    elif direction == 0:  # up
        t, score = _slide_rows(transpose(board), _row_left)
        new = transpose(t)
    elif direction == 1:  # down
        t, score = _slide_rows(transpose(board), _row_right)
        new = transpose(t)
    else:
        raise ValueError(f"direction must be 0..3, got {direction}")
    return new, score, new != board


def legal_mask(board: int) -> int:
    """Bit d set iff sliding toward direction d changes the board."""
    mask = 0
    for d in range(4):
        if slide(board, d)[2]:
            mask |= 1 << d
    return mask


def count_empty(board: int) -> int:
    n = 0
    for i in range(16):
        if (board >> (4 * i)) & 0xF == 0:
            n += 1
    return n


def max_exponent(board: int) -> int:
    m = 0
    for i in range(16):
        e = (board >> (4 * i)) & 0xF
        if e > m:
            m = e
    return m


def kth_empty(board: int, k: int) -> int:
    """Cell index of the k-th empty cell in scan order (k from 0)."""
    for i in range(16):
        if (board >> (4 * i)) & 0xF == 0:
            if k == 0:
                return i
            k -= 1
    raise ValueError("fewer empty cells than k")


def set_cell(board: int, cell: int, exponent: int) -> int:
    return board | (exponent << (4 * cell))


def spawn_random(board: int, rng: Xoshiro256StarStar) -> tuple[int, int, int]:
    """Spawn one tile: uniform empty cell, exponent 1 at 90% else 2.

    Draw order is fixed (cell index, then exponent); replay depends on it.
    Returns (new_board, cell, exponent).
    """
    empties = count_empty(board)
    if empties == 0:
        raise ValueError("cannot spawn on a full board")
    cell = kth_empty(board, rng.randbelow(empties))
    exponent = 1 if rng.random() < SPAWN_TWO_PROB else 2
    return set_cell(board, cell, exponent), cell, exponent


# ---------------------------------------------------------------------------
# Heuristic terms
#
# Every term maps a board into [0, 1].  Pair scans and float accumulation
# follow a fixed order (row-major, right neighbour before down neighbour)
# so both backends round identically.


def _exps(board: int) -> list[int]:
    return [(board >> (4 * i)) & 0xF for i in range(16)]


def _max_cell(exps: list[int]) -> tuple[int, int]:
    """(max exponent, first cell index holding it in row-major order)."""
    best = 0
    idx = 0
    for i in range(16):
        if exps[i] > best:
            best = exps[i]
            idx = i
    return best, idx


def term_empty_ratio(board: int) -> float:
    return count_empty(board) / 16.0


def term_highest_ratio(board: int) -> float:
    e = max_exponent(board)
    return 1.0 if e >= 11 else e / 11.0


def term_corner_bonus(board: int) -> float:
    exps = _exps(board)
    e, idx = _max_cell(exps)
    if e == 0:
        return 0.0
    r, c = idx >> 2, idx & 3
    if r == 3 and (c == 0 or c == 3):
        return 1.0
    if r == 0 and (c == 0 or c == 3):
        return 0.5
    if r == 3:
        return 0.25
    return 0.0


def term_corner_proximity(
    board: int, br_weight: float = 0.7, other_weight: float = 0.3
) -> float:
    exps = _exps(board)
    e, idx = _max_cell(exps)
    if e == 0:
        return 0.0
    r, c = idx >> 2, idx & 3
    br = 1.0 - ((3 - r) + (3 - c)) / 6.0
    other = 0.0
    for cr, cc in ((0, 0), (0, 3), (3, 0)):
        prox = 1.0 - (abs(r - cr) + abs(c - cc)) / 6.0
        if prox > other:
            other = prox
    return br_weight * br + other_weight * other


def term_bottom_row_ratio(board: int) -> float:
    exps = _exps(board)
    total = 0
    bottom = 0
    for i in range(16):
        if exps[i]:
            v = 1 << exps[i]
            total += v
            if i >= 12:
                bottom += v
    if total == 0:
        return 0.0
    return bottom / total


def term_merge_value_ratio(board: int) -> float:
    exps = _exps(board)
    total = 0
    pair_value = 0
    for i in range(16):
        if exps[i]:
            total += 1 << exps[i]
    for r in range(4):
        for c in range(4):
            e = exps[4 * r + c]
            if e == 0:
                continue
            if c < 3 and exps[4 * r + c + 1] == e:
                pair_value += 1 << e
            if r < 3 and exps[4 * r + c + 4] == e:
                pair_value += 1 << e
    if total == 0:
        return 0.0
    return pair_value / (2.0 * total)


def term_merge_ratio(board: int) -> float:
    exps = _exps(board)
    pairs = 0
    for r in range(4):
        for c in range(4):
            e = exps[4 * r + c]
            if e == 0:
                continue
            if c < 3 and exps[4 * r + c + 1] == e:
                pairs += 1
            if r < 3 and exps[4 * r + c + 4] == e:
                pairs += 1
    return pairs / 24.0


def _monotone_line(values: list[int], nondecreasing_only: bool) -> bool:
    """Monotonicity of the nonzero subsequence; empty lines never score."""
    seq = [v for v in values if v]
    if not seq:
        return False
    nondec = all(seq[i] <= seq[i + 1] for i in range(len(seq) - 1))
    if nondecreasing_only:
        return nondec
    noninc = all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))
    return nondec or noninc


def term_monotonicity(
    board: int, row_weight: float = 0.5, col_weight: float = 0.5
) -> float:
    exps = _exps(board)
    score = 0.0
    if _monotone_line(exps[12:16], nondecreasing_only=False):
        score += row_weight
    right_col = [exps[3], exps[7], exps[11], exps[15]]
    if _monotone_line(right_col, nondecreasing_only=True):
        score += col_weight
    return score if score <= 1.0 else 1.0


def term_snake_ratio(board: int) -> float:
    exps = _exps(board)
    score = 0
    for i in range(15):
        a = exps[SNAKE_PATH[i]]
        b = exps[SNAKE_PATH[i + 1]]
        if a and b and a >= b:
            score += 1
    return score / 15.0


def term_smoothness(board: int) -> float:
    exps = _exps(board)
    acc = 0.0
    for r in range(4):
        for c in range(4):
            e = exps[4 * r + c]
            if e == 0:
                continue
            if c < 3 and exps[4 * r + c + 1]:
                acc += 1.0 / (1.0 + abs(e - exps[4 * r + c + 1]))
            if r < 3 and exps[4 * r + c + 4]:
                acc += 1.0 / (1.0 + abs(e - exps[4 * r + c + 4]))
    return acc / 24.0


_TERM_FUNCS = (
    term_empty_ratio,
    term_highest_ratio,
    term_corner_bonus,
    term_corner_proximity,
    term_bottom_row_ratio,
    term_merge_value_ratio,
    term_merge_ratio,
    term_monotonicity,
    term_snake_ratio,
    term_smoothness,
)


def eval_term_id(board: int, term_id: int) -> float:
    return _TERM_FUNCS[term_id](board)


def eval_weighted(board: int, term_ids, weights) -> float:
    """Weighted sum of terms, accumulated in the given order."""
    acc = 0.0
    for tid, w in zip(term_ids, weights):
        acc += w * _TERM_FUNCS[tid](board)
    return acc


# ---------------------------------------------------------------------------
# Playouts


def _rollout_choice(board: int, policy: int, rng: Xoshiro256StarStar):
    """Pick a rollout move; returns (dir, new_board, score) or None."""
    moves = []
    for d in range(4):
        nb, sc, moved = slide(board, d)
        if moved:
            moves.append((d, nb, sc))
    if not moves:
        return None
    if policy == POLICY_GREEDY:
        best = moves[0]
        for m in moves[1:]:
            if m[2] > best[2]:
                best = m
        return best
    return moves[rng.randbelow(len(moves))]


def playout(board: int, depth: int, policy: int, seed: int) -> tuple[int, int]:
    """Spawn into an afterstate, then roll out up to ``depth`` moves.

    Returns (final_board, score_gained).  The caller adds the root slide's
    score; this covers the spawn and the rollout moves only.
    """
    rng = Xoshiro256StarStar(seed)
    board, _, _ = spawn_random(board, rng)
    gain = 0
    for _ in range(depth):
        choice = _rollout_choice(board, policy, rng)
        if choice is None:
            break
        _, board, sc = choice
        gain += sc
        board, _, _ = spawn_random(board, rng)
    return board, gain


def search_eval(
    board: int,
    playouts: int,
    depth: int,
    policy: int,
    lam: float,
    term_ids,
    weights,
    base_seed: int,
) -> list[tuple[int, float, float]]:
    """Evaluate every legal direction by averaged playouts.

    Returns [(dir, mean_value, mean_score_gain)] for legal dirs in
    direction order.  mean_score_gain includes the root slide's score.
    """
    term_ids = tuple(term_ids)
    weights = tuple(weights)
    out = []
    for d in range(4):
        after, root_score, moved = slide(board, d)
        if not moved:
            continue
        total_v = 0.0
        total_g = 0
        for i in range(playouts):
            sub = derive(base_seed, d, i)
            final, gain = playout(after, depth, policy, sub)
            g = root_score + gain
            leaf = eval_weighted(final, term_ids, weights)
            total_v += lam * (g / (g + SCORE_NORM)) + (1.0 - lam) * leaf
            total_g += g
        out.append((d, total_v / playouts, total_g / playouts))
    return out


def rng_u64_sequence(seed: int, n: int) -> list[int]:
    """First n raw outputs of the generator; used for backend cross-checks."""
    rng = Xoshiro256StarStar(seed)
    return [rng.next_u64() for _ in range(n)]
