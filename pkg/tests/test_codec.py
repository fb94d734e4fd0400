"""
Tests for the two block code tables.
Every row is checked, plus exhaustive bijectivity and parity separation.
"""

import unittest
import os
import sys

# Add src to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.blockgrid.pattern import Pattern, ALL_PATTERNS
from src.codec.tables import (
    TABLE_ONE, TABLE_TWO, CODE_TABLES, CodeTables, encode3, encode2, decode3, decode2,
    DECODE3_LUT, DECODE2_LUT, ENCODE3_LUT, ENCODE2_LUT, render_tables
)
from src.utils.errors import NotInTableError

TABLE_ONE_ROWS = {
    "000": "0001", "001": "0010", "010": "0100", "011": "0111",
    "100": "1000", "101": "1011", "110": "1101", "111": "1110",
}
TABLE_TWO_ROWS = {"00": "0011", "01": "0101", "10": "0110", "11": "1001"}


class TestTableRows(unittest.TestCase):

    def test_table_one_rows(self):
        for bits, pattern in TABLE_ONE_ROWS.items():
            with self.subTest(bits=bits):
                self.assertEqual(str(encode3(int(bits, 2))), pattern)
                self.assertEqual(decode3(Pattern.from_string(pattern)), int(bits, 2))

    def test_table_two_rows(self):
        for bits, pattern in TABLE_TWO_ROWS.items():
            with self.subTest(bits=bits):
                self.assertEqual(str(encode2(int(bits, 2))), pattern)
                self.assertEqual(decode2(Pattern.from_string(pattern)), int(bits, 2))

    def test_corrected_row(self):
        # The published "1001" would collide with table II's entry for 11
        self.assertEqual(str(encode3(0b101)), "1011")
        self.assertNotIn(Pattern.from_string("1001"), TABLE_ONE.values())

    def test_worked_example(self):
        self.assertEqual(str(encode3(0b011)), "0111")


class TestTableProperties(unittest.TestCase):

    def test_bijective(self):
        self.assertEqual([decode3(encode3(v)) for v in range(8)], list(range(8)))
        self.assertEqual([decode2(encode2(v)) for v in range(4)], list(range(4)))
        self.assertEqual(len(set(TABLE_ONE.values())), 8)
        self.assertEqual(len(set(TABLE_TWO.values())), 4)

    def test_parity_separation(self):
        for p in TABLE_ONE.values():
            self.assertIn(p.black_count, (1, 3))
        for p in TABLE_TWO.values():
            self.assertEqual(p.black_count, 2)
        self.assertFalse(set(TABLE_ONE.values()) & set(TABLE_TWO.values()))

    def test_never_pure(self):
        outputs = set(TABLE_ONE.values()) | set(TABLE_TWO.values())
        self.assertNotIn(Pattern.from_string("0000"), outputs)
        self.assertNotIn(Pattern.from_string("1111"), outputs)

    def test_unused_two_black(self):
        self.assertEqual([str(p) for p in CODE_TABLES.unused_two_black()], ["1010", "1100"])

    def test_colliding_table_rejected(self):
        broken = dict(TABLE_ONE)
        broken[0b101] = Pattern.from_string("1001")
        with self.assertRaises(ValueError):
            CodeTables(broken, TABLE_TWO)


class TestEncodeDecodeErrors(unittest.TestCase):

    def test_decode_not_in_table(self):
        with self.assertRaises(NotInTableError):
            decode2(Pattern.from_string("1010"))
        with self.assertRaises(NotInTableError):
            decode3(Pattern.from_string("0011"))

    def test_encode_range(self):
        for bad in (-1, 8, "011", 1.0):
            with self.assertRaises(ValueError):
                encode3(bad)
        with self.assertRaises(ValueError):
            encode2(4)


class TestLookupTables(unittest.TestCase):

    def test_luts_match_tables(self):
        for p in ALL_PATTERNS:
            in_one = str(p) in TABLE_ONE_ROWS.values()
            in_two = str(p) in TABLE_TWO_ROWS.values()
            self.assertEqual(DECODE3_LUT[p.code] >= 0, in_one, str(p))
            self.assertEqual(DECODE2_LUT[p.code] >= 0, in_two, str(p))
        self.assertEqual([int(c) for c in ENCODE3_LUT], [encode3(v).code for v in range(8)])
        self.assertEqual([int(c) for c in ENCODE2_LUT], [encode2(v).code for v in range(4)])

    def test_render_marks_correction(self):
        text = render_tables()
        self.assertIn("101   1011", text)
        self.assertIn("corrected", text)
        self.assertIn("1010, 1100", text)


if __name__ == '__main__':
    unittest.main()
