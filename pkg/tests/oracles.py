"""Independent reference implementations used only by the test suite.

Everything here works on plain 4x4 grids of tile values (0 or powers of
two), written naively from the documented rules — no bit tricks, no
shared code with the package. The suite checks the packed-board kernels
against these.
"""

from __future__ import annotations

import math

CAP_TILE = 32768  # two cap tiles never merge (4-bit exponent ceiling)

Grid = list[list[int]]


def empty_grid() -> Grid:
    return [[0] * 4 for _ in range(4)]


def grid_from_values(values: list[int]) -> Grid:
    assert len(values) == 16
    return [values[4 * r : 4 * r + 4] for r in range(4)]


def grid_values(grid: Grid) -> list[int]:
    return [grid[r][c] for r in range(4) for c in range(4)]


# ---------------------------------------------------------------------------
# Slide mechanics


def slide_row_left(row: list[int]) -> tuple[list[int], int]:
    """Naive single-row slide: compact, merge adjacent equal pairs once."""
    tiles = [v for v in row if v]
    out: list[int] = []
    score = 0
    i = 0
    while i < len(tiles):
        if i + 1 < len(tiles) and tiles[i] == tiles[i + 1] and tiles[i] != CAP_TILE:
            out.append(tiles[i] * 2)
            score += tiles[i] * 2
            i += 2
        else:
            out.append(tiles[i])
            i += 1
    return out + [0] * (4 - len(out)), score


def _transpose(grid: Grid) -> Grid:
    return [list(col) for col in zip(*grid)]


def slide_grid(grid: Grid, direction: int) -> tuple[Grid, int, bool]:
    """Directions: 0=up 1=down 2=left 3=right. Returns (grid, score, moved)."""
    if direction == 2:
        rows = [slide_row_left(r) for r in grid]
        new = [r for r, _ in rows]
    elif direction == 3:
        rows = [slide_row_left(list(reversed(r))) for r in grid]
        new = [list(reversed(r)) for r, _ in rows]
    elif direction == 0:
        t = _transpose(grid)
        rows = [slide_row_left(r) for r in t]
        new = _transpose([r for r, _ in rows])
    elif direction == 1:
        t = _transpose(grid)
        rows = [slide_row_left(list(reversed(r))) for r in t]
        new = _transpose([list(reversed(r)) for r, _ in rows])
    else:
        raise ValueError(direction)
    score = sum(s for _, s in rows)
    return new, score, new != grid


def legal_directions(grid: Grid) -> list[int]:
    return [d for d in range(4) if slide_grid(grid, d)[2]]


# ---------------------------------------------------------------------------
# Heuristic terms (value-grid transcription of the documented definitions)


def _positions(grid: Grid):
    for r in range(4):
        for c in range(4):
            yield r, c, grid[r][c]


def _max_tile_pos(grid: Grid) -> tuple[int, tuple[int, int]]:
    """Highest value with the first row-major position holding it."""
    best, pos = 0, (0, 0)
    for r, c, v in _positions(grid):
        if v > best:
            best, pos = v, (r, c)
    return best, pos


def o_empty_ratio(grid: Grid) -> float:
    return sum(1 for _, _, v in _positions(grid) if v == 0) / 16.0


def o_highest_ratio(grid: Grid) -> float:
    best, _ = _max_tile_pos(grid)
    if best == 0:
        return 0.0
    return min(math.log2(best) / 11.0, 1.0)


def o_corner_bonus(grid: Grid) -> float:
    best, (r, c) = _max_tile_pos(grid)
    if best == 0:
        return 0.0
    if (r, c) in ((3, 0), (3, 3)):
        return 1.0
    if (r, c) in ((0, 0), (0, 3)):
        return 0.5
    if r == 3:
        return 0.25
    return 0.0


def o_corner_proximity(grid: Grid, brw: float = 0.7, otw: float = 0.3) -> float:
    best, (r, c) = _max_tile_pos(grid)
    if best == 0:
        return 0.0
    br = 1.0 - ((3 - r) + (3 - c)) / 6.0
    other = max(
        1.0 - (abs(r - cr) + abs(c - cc)) / 6.0 for cr, cc in [(0, 0), (0, 3), (3, 0)]
    )
    return brw * br + otw * other


def o_bottom_row_ratio(grid: Grid) -> float:
    total = sum(v for _, _, v in _positions(grid))
    if total == 0:
        return 0.0
    return sum(grid[3]) / total


def _adjacent_pairs(grid: Grid):
    """All horizontal and vertical neighbour pairs, row-major order."""
    for r in range(4):
        for c in range(4):
            if c < 3:
                yield grid[r][c], grid[r][c + 1]
            if r < 3:
                yield grid[r][c], grid[r + 1][c]


def o_merge_value_ratio(grid: Grid) -> float:
    total = sum(v for _, _, v in _positions(grid))
    if total == 0:
        return 0.0
    paired = sum(a for a, b in _adjacent_pairs(grid) if a and a == b)
    return paired / (2.0 * total)


def o_merge_ratio(grid: Grid) -> float:
    return sum(1 for a, b in _adjacent_pairs(grid) if a and a == b) / 24.0


def _monotone(vals: list[int], both_ways: bool) -> bool:
    seq = [v for v in vals if v]
    if not seq:
        return False
    up = all(seq[i] <= seq[i + 1] for i in range(len(seq) - 1))
    if both_ways:
        down = all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))
        return up or down
    return up


def o_monotonicity(grid: Grid, rw: float = 0.5, cw: float = 0.5) -> float:
    score = 0.0
    if _monotone(grid[3], both_ways=True):
        score += rw
    if _monotone([grid[r][3] for r in range(4)], both_ways=False):
        score += cw
    return min(score, 1.0)


SNAKE_CELLS = [
    (3, 3), (3, 2), (3, 1), (3, 0),
    (2, 0), (2, 1), (2, 2), (2, 3),
    (1, 3), (1, 2), (1, 1), (1, 0),
    (0, 0), (0, 1), (0, 2), (0, 3),
]


def o_snake_ratio(grid: Grid) -> float:
    hits = 0
    for (r1, c1), (r2, c2) in zip(SNAKE_CELLS, SNAKE_CELLS[1:]):
        a, b = grid[r1][c1], grid[r2][c2]
        if a and b and a >= b:
            hits += 1
    return hits / 15.0


def o_smoothness(grid: Grid) -> float:
    acc = 0.0
    for a, b in _adjacent_pairs(grid):
        if a and b:
            acc += 1.0 / (1.0 + abs(math.log2(a) - math.log2(b)))
    return acc / 24.0


ORACLE_TERMS = {
    "empty_ratio": o_empty_ratio,
    "highest_ratio": o_highest_ratio,
    "corner_bonus": o_corner_bonus,
    "corner_proximity": o_corner_proximity,
    "bottom_row_ratio": o_bottom_row_ratio,
    "merge_value_ratio": o_merge_value_ratio,
    "merge_ratio": o_merge_ratio,
    "monotonicity_score": o_monotonicity,
    "snake_ratio": o_snake_ratio,
    "smoothness_ratio": o_smoothness,
}


def o_eval(weighted_terms: list[tuple[str, float]], grid: Grid) -> float:
    return sum(w * ORACLE_TERMS[name](grid) for name, w in weighted_terms)


def random_grid(rng, max_exponent: int = 15, fill: float = 0.5) -> Grid:
    """Random board for differential tests; rng is any object with
    ``random()`` and ``randbelow(n)``."""
    grid = empty_grid()
    for r in range(4):
        for c in range(4):
            if rng.random() < fill:
                grid[r][c] = 1 << (1 + rng.randbelow(max_exponent))
    return grid
