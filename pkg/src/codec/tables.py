"""
Block code tables.

Table I maps a 3-bit group to a pattern with 1 or 3 black pixels; it is
written into blocks that hold 2 black pixels (category A).
Table II maps a 2-bit group to a pattern with exactly 2 black pixels; it is
written into blocks that hold 1 or 3 black pixels (category B).

Bit groups are read left to right, most significant bit first: "011" is 3.

Correction: the published Table I sends 101 to "1001", which has two black
pixels and is already Table II's pattern for 11. That would make an
extracted "1001" ambiguous and break the odd/even split the extractor uses
to tell 3-bit blocks from 2-bit blocks. Row 101 therefore maps to "1011",
the only odd-count pattern the published table leaves unused.
"""

import numpy as np

from src.blockgrid.pattern import Pattern, ALL_PATTERNS
from src.utils.errors import NotInTableError

CORRECTED_ROW = 0b101
PUBLISHED_CORRECTED_PATTERN = "1001"


def _table(rows):
    return {int(bits, 2): Pattern.from_string(pattern) for bits, pattern in rows}


TABLE_ONE = _table([
    ("000", "0001"),
    ("001", "0010"),
    ("010", "0100"),
    ("011", "0111"),
    ("100", "1000"),
    ("101", "1011"),   # corrected, published as 1001
    ("110", "1101"),
    ("111", "1110"),
])

TABLE_TWO = _table([
    ("00", "0011"),
    ("01", "0101"),
    ("10", "0110"),
    ("11", "1001"),
])

_REVERSE_ONE = {pattern: bits for bits, pattern in TABLE_ONE.items()}
_REVERSE_TWO = {pattern: bits for bits, pattern in TABLE_TWO.items()}


class CodeTables:
    """The two bidirectional bit-group <-> pattern mappings."""

    def __init__(self, table1, table2):
        self.table1 = dict(table1)
        self.table2 = dict(table2)
        self._check()

    def _check(self):
        odd = {p for p in ALL_PATTERNS if p.black_count in (1, 3)}
        two = {p for p in ALL_PATTERNS if p.black_count == 2}
        range1 = set(self.table1.values())
        range2 = set(self.table2.values())

        checks = [
            (sorted(self.table1) == list(range(8)), "table I must cover 000..111"),
            (sorted(self.table2) == list(range(4)), "table II must cover 00..11"),
            (range1 == odd, "table I must map onto all 8 odd-count patterns"),
            (range2 <= two and len(range2) == 4, "table II must map onto 4 two-black patterns"),
            (not (range1 & range2), "code tables must not share patterns"),
        ]
        for ok, message in checks:
            if not ok:
                raise ValueError(message)

    def unused_two_black(self):
        """Two-black patterns no table produces; seeing one while decoding means corruption."""
        return sorted((p for p in ALL_PATTERNS if p.black_count == 2 and p not in self.table2.values()),
                      key=lambda p: p.code)


CODE_TABLES = CodeTables(TABLE_ONE, TABLE_TWO)


def _check_group(bits, width):
    if not isinstance(bits, (int, np.integer)) or not 0 <= bits < (1 << width):
        raise ValueError(f"Expected a {width}-bit group (0..{(1 << width) - 1}), got {bits!r}")


def encode3(bits):
    _check_group(bits, 3)
    return TABLE_ONE[int(bits)]


def decode3(pattern):
    try:
        return _REVERSE_ONE[pattern]
    except KeyError:
        raise NotInTableError(f"Pattern '{pattern}' is not in code table I")


def encode2(bits):
    _check_group(bits, 2)
    return TABLE_TWO[int(bits)]


def decode2(pattern):
    try:
        return _REVERSE_TWO[pattern]
    except KeyError:
        raise NotInTableError(f"Pattern '{pattern}' is not in code table II")


# Vectorized forms: encoders indexed by bit group, decoders by pattern code (-1 = absent)
ENCODE3_LUT = np.array([TABLE_ONE[v].code for v in range(8)], dtype=np.uint8)
ENCODE2_LUT = np.array([TABLE_TWO[v].code for v in range(4)], dtype=np.uint8)
DECODE3_LUT = np.full(16, -1, dtype=np.int8)
DECODE2_LUT = np.full(16, -1, dtype=np.int8)
for _pattern, _bits in _REVERSE_ONE.items():
    DECODE3_LUT[_pattern.code] = _bits
for _pattern, _bits in _REVERSE_TWO.items():
    DECODE2_LUT[_pattern.code] = _bits


def render_tables():
    """Both tables as printable text, with the corrected row marked."""
    lines = ["Code table I (2-black host block -> 1 or 3 black)",
             "  bits  pattern"]
    for bits, pattern in TABLE_ONE.items():
        note = f"   * corrected (published: {PUBLISHED_CORRECTED_PATTERN})" if bits == CORRECTED_ROW else ""
        lines.append(f"  {bits:03b}   {pattern}{note}")
    lines += ["", "Code table II (1- or 3-black host block -> 2 black)",
              "  bits  pattern"]
    for bits, pattern in TABLE_TWO.items():
        lines.append(f"  {bits:02b}    {pattern}")
    lines += ["", "Never produced (signal corruption): "
              + ", ".join(str(p) for p in CODE_TABLES.unused_two_black())]
    return "\n".join(lines)
