"""
2x2 block patterns and their categories.

A pattern is the block's four pixels in row-major order (p00 p01 p10 p11),
written as a 4-character string: "0111" is a top row of "01" and a bottom
row of "11". The integer code packs the same string as a 4-bit number
(p00 is the most significant bit), so "0111" has code 7.
"""

from enum import Enum
from typing import NamedTuple

import numpy as np


class Category(Enum):
    PURE_WHITE = "PureWhite"
    PURE_BLACK = "PureBlack"
    A = "A"   # two black pixels, carries 3 bits
    B = "B"   # one or three black pixels, carries 2 bits


class Pattern(NamedTuple):
    p00: int
    p01: int
    p10: int
    p11: int

    @classmethod
    def from_string(cls, text):
        if len(text) != 4 or any(ch not in '01' for ch in text):
            raise ValueError(f"Pattern string must be 4 characters of 0/1, got {text!r}")
        return cls(*(int(ch) for ch in text))

    @classmethod
    def from_code(cls, code):
        if not 0 <= code <= 15:
            raise ValueError(f"Pattern code must be in 0..15, got {code}")
        return cls((code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1, code & 1)

    @property
    def code(self):
        return (self.p00 << 3) | (self.p01 << 2) | (self.p10 << 1) | self.p11

    @property
    def black_count(self):
        return 4 - (self.p00 + self.p01 + self.p10 + self.p11)

    def __str__(self):
        return f"{self.p00}{self.p01}{self.p10}{self.p11}"


ALL_PATTERNS = tuple(Pattern.from_code(code) for code in range(16))

# Lookup arrays indexed by pattern code
BLACK_COUNT = np.array([p.black_count for p in ALL_PATTERNS], dtype=np.uint8)


def classify(pattern):
    """Category of a block by its black-pixel count."""
    black = pattern.black_count
    if black == 0:
        return Category.PURE_WHITE
    if black == 4:
        return Category.PURE_BLACK
    if black == 2:
        return Category.A
    return Category.B
