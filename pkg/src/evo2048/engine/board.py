"""Board representation and move directions.

A board is a 4x4 grid of tile exponents (0 = empty cell, e >= 1 means the
tile 2**e), packed 4 bits per cell into a single 64-bit integer.  Cell
``i = 4*row + col`` occupies bits ``[4*i, 4*i + 4)``; rows are indexed 0
(top) to 3 (bottom) and columns 0 (left) to 3 (right), so (3, 3) is the
bottom-right corner.

The nibble packing caps exponents at 15 (tile 32768).  Two 32768 tiles do
not merge; that configuration is unreachable in ordinary play and far
beyond the strength of anything in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

EXPONENT_CAP = 15
GRID_CELLS = 16


class MoveDir(IntEnum):
    """The four slide directions, in the fixed tie-breaking order."""

    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3

    @classmethod
    def parse(cls, text: str) -> "MoveDir":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown move direction: {text!r}") from None

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Board:
    """Immutable 4x4 board; ``packed`` holds all 16 cell exponents."""

    packed: int = 0

    @classmethod
    def from_exponents(cls, exponents) -> "Board":
        cells = list(exponents)
        if len(cells) != GRID_CELLS:
            raise ValueError(f"expected {GRID_CELLS} cells, got {len(cells)}")
        packed = 0
        for i, e in enumerate(cells):
            if not 0 <= e <= EXPONENT_CAP:
                raise ValueError(f"cell {i}: exponent {e} outside [0, {EXPONENT_CAP}]")
            packed |= e << (4 * i)
        return cls(packed)

    @classmethod
    def from_tiles(cls, tiles) -> "Board":
        exps = []
        for i, v in enumerate(tiles):
            if v == 0:
                exps.append(0)
            elif v >= 2 and v & (v - 1) == 0:
                exps.append(v.bit_length() - 1)
            else:
                raise ValueError(f"cell {i}: {v} is not 0 or a power of two >= 2")
        return cls.from_exponents(exps)

    @classmethod
    def from_rows(cls, rows) -> "Board":
        """Build from four rows of tile values, top row first."""
        flat = [v for row in rows for v in row]
        return cls.from_tiles(flat)

    def exponents(self) -> tuple[int, ...]:
        p = self.packed
        return tuple((p >> (4 * i)) & 0xF for i in range(GRID_CELLS))

    def tiles(self) -> tuple[int, ...]:
        return tuple(0 if e == 0 else 1 << e for e in self.exponents())

    def rows(self) -> list[list[int]]:
        t = self.tiles()
        return [list(t[4 * r : 4 * r + 4]) for r in range(4)]

    def cell(self, row: int, col: int) -> int:
        """Tile value at (row, col); 0 when empty."""
        e = (self.packed >> (4 * (4 * row + col))) & 0xF
        return 0 if e == 0 else 1 << e

    def cell_exponent(self, row: int, col: int) -> int:
        """Raw 4-bit exponent at (row, col); 0 when empty."""
        return (self.packed >> (4 * (4 * row + col))) & 0xF

    def count_empty(self) -> int:
        return sum(1 for e in self.exponents() if e == 0)

    def max_exponent(self) -> int:
        return max(self.exponents())

    def highest_tile(self) -> int:
        e = self.max_exponent()
        return 0 if e == 0 else 1 << e

    def total_value(self) -> int:
        return sum(self.tiles())

    def render(self) -> str:
        """Fixed-width text grid; '.' marks an empty cell."""
        lines = []
        for r in range(4):
            cells = []
            for c in range(4):
                v = self.cell(r, c)
                cells.append(("." if v == 0 else str(v)).rjust(6))
            lines.append(" ".join(cells))
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()
