"""
Tests for capacity, embedding and extraction.
Covers the worked example, padding, framing, corruption detection and the
locality / eligibility invariants.
"""

import unittest
import os
import sys

import numpy as np

# Add src to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.bitmap.image import BinaryImage, flip_count
from src.bench.corpus import checkerboard, mixed_block_image
from src.blockgrid.grid import block_codes, get_block, set_block, iter_blocks
from src.blockgrid.pattern import Pattern, BLACK_COUNT
from src.engine.bitstream import BitStream, frame_payload, framed_size
from src.engine.stego import (
    capacity, embed_bits, extract_bits, embed_payload, extract_payload,
    blocks_for_bits, framed_blocks_consumed, consumed_block_mask
)
from src.utils.errors import (
    InsufficientCapacityError, CorruptStreamError, NotEnoughDataError,
    HeaderExceedsCapacityError, NotByteAlignedError, ImageTooSmallError
)


def brute_force_capacity(image):
    """Independent oracle: walk every block and add 3 or 2 bits."""
    total = 0
    for _, _, p in iter_blocks(image):
        black = str(p).count("0")
        total += 3 if black == 2 else 2 if black in (1, 3) else 0
    return total


class TestCapacity(unittest.TestCase):

    def test_all_white(self):
        report = capacity(BinaryImage.blank(1024, 768))
        self.assertEqual((report.count_a, report.count_b, report.gross_bits, report.net_bits), (0, 0, 0, 0))
        self.assertEqual(report.count_pure, 196608)

    def test_small_checkerboard(self):
        report = capacity(checkerboard(4, 4))
        self.assertEqual(report.count_a, 4)
        self.assertEqual(report.gross_bits, 12)

    def test_full_size_checkerboard(self):
        self.assertEqual(capacity(checkerboard(1024, 768)).gross_bits, 589824)

    def test_single_b_block(self):
        report = capacity(BinaryImage.from_rows(["00", "01"]))
        self.assertEqual((report.count_b, report.gross_bits, report.net_bits), (1, 2, 0))

    def test_too_small(self):
        with self.assertRaises(ImageTooSmallError):
            capacity(BinaryImage.blank(1, 5))

    def test_matches_brute_force(self):
        rng = np.random.default_rng(3)
        for density in (0.0, 0.1, 0.5, 0.9, 1.0):
            img = BinaryImage((rng.random((21, 34)) >= density).astype(np.uint8))
            report = capacity(img)
            self.assertEqual(report.gross_bits, brute_force_capacity(img))
            self.assertEqual(report.count_a + report.count_b + report.count_pure, 10 * 17)
            self.assertEqual(report.net_bits, max(0, report.gross_bits - 32))


class TestRawMode(unittest.TestCase):

    def test_worked_example(self):
        stego = embed_bits(BinaryImage.from_rows(["00", "11"]), "011")
        self.assertEqual(str(get_block(stego, 0, 0)), "0111")
        self.assertEqual(extract_bits(stego, 3), "011")

    def test_short_stream_is_zero_padded(self):
        stego = embed_bits(BinaryImage.from_rows(["00", "11"]), "01")
        self.assertEqual(str(get_block(stego, 0, 0)), "0100")
        self.assertEqual(extract_bits(stego, 2), "01")

    def test_pure_block_has_no_room(self):
        with self.assertRaises(InsufficientCapacityError) as ctx:
            embed_bits(BinaryImage.blank(2, 2), "1")
        self.assertEqual((ctx.exception.required, ctx.exception.available), (1, 0))

    def test_category_picks_table(self):
        host = BinaryImage.from_rows(["01", "11"])
        stego = embed_bits(host, "00")
        self.assertEqual(str(get_block(stego, 0, 0)), "0011")
        same = embed_bits(BinaryImage.from_rows(["00", "11"]), "101")
        self.assertEqual(str(get_block(same, 0, 0)), "1011")

    def test_mixed_scan_order(self):
        # Blocks: pure white, A, B, pure black
        host = BinaryImage.from_rows(["11000100", "11110000"])
        stego = embed_bits(host, BitStream.from_string("11110"))
        self.assertEqual([str(p) for _, _, p in iter_blocks(stego)], ["1111", "1110", "0110", "0000"])
        self.assertEqual(extract_bits(stego, 5), "11110")

    def test_extract_corrupt(self):
        stego = BinaryImage.from_rows(["11", "00"])
        with self.assertRaises(CorruptStreamError) as ctx:
            extract_bits(stego, 2)
        self.assertEqual((ctx.exception.block_row, ctx.exception.block_col), (0, 0))
        self.assertEqual(ctx.exception.pattern, "1100")

    def test_extract_not_enough(self):
        with self.assertRaises(NotEnoughDataError):
            extract_bits(BinaryImage.from_rows(["01", "11"]), 4)

    def test_negative_bit_count(self):
        stego = embed_bits(BinaryImage.from_rows(["00", "11"]), "011")
        with self.assertRaises(ValueError):
            extract_bits(stego, -5)
        self.assertEqual(len(extract_bits(stego, 0)), 0)

    def test_empty_stream_leaves_image(self):
        host = BinaryImage.from_rows(["00", "11"])
        self.assertEqual(embed_bits(host, ""), host)

    def test_round_trip_random(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            h, w = rng.integers(2, 40, size=2)
            img = BinaryImage((rng.random((h, w)) >= rng.random()).astype(np.uint8))
            gross = capacity(img).gross_bits
            n = int(rng.integers(0, gross + 1))
            bits = BitStream(rng.integers(0, 2, size=n))
            self.assertEqual(extract_bits(embed_bits(img, bits), n), bits)


class TestFramedMode(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(99)
        self.host = mixed_block_image(64, 48, 0.3, self.rng)

    def test_round_trip(self):
        payload = b"hidden message"
        self.assertEqual(extract_payload(embed_payload(self.host, payload)), payload)

    def test_empty_payload(self):
        stego = embed_payload(self.host, b"")
        self.assertEqual(extract_payload(stego), b"")
        self.assertEqual(extract_bits(stego, 32), "0" * 32)

    def test_header_layout(self):
        stego = embed_payload(self.host, b"\xa5")
        self.assertEqual(extract_bits(stego, 40), frame_payload(b"\xa5"))

    def test_full_net_capacity(self):
        payload = bytes(self.rng.integers(0, 256, size=capacity(self.host).net_bytes, dtype=np.uint8))
        self.assertEqual(extract_payload(embed_payload(self.host, payload)), payload)
        with self.assertRaises(InsufficientCapacityError):
            embed_payload(self.host, payload + b"\x00" * 8)

    def test_deterministic(self):
        self.assertEqual(embed_payload(self.host, b"abc"), embed_payload(self.host, b"abc"))

    def test_never_embedded_image(self):
        with self.assertRaises(NotEnoughDataError):
            extract_payload(BinaryImage.blank(64, 48))

    def test_header_exceeds_capacity(self):
        gross = capacity(self.host).gross_bits
        stego = embed_bits(self.host, BitStream().write(2 * gross, 32))
        with self.assertRaises(HeaderExceedsCapacityError):
            extract_payload(stego)

    def test_not_byte_aligned(self):
        stego = embed_bits(self.host, BitStream().write(5, 32).write(0, 5))
        with self.assertRaises(NotByteAlignedError):
            extract_payload(stego)

    def test_injected_foreign_pattern_detected(self):
        payload = bytes(self.rng.integers(0, 256, size=capacity(self.host).net_bytes, dtype=np.uint8))
        stego = embed_payload(self.host, payload)
        mask = consumed_block_mask(self.host, framed_size(len(payload)))
        positions = np.argwhere(mask)
        for foreign in ("1100", "1010"):
            for row, col in positions[self.rng.choice(len(positions), size=20, replace=False)]:
                broken = set_block(stego, int(row), int(col), Pattern.from_string(foreign))
                with self.subTest(foreign=foreign, block=(row, col)):
                    with self.assertRaises(CorruptStreamError):
                        extract_payload(broken)


class TestInvariants(unittest.TestCase):

    def test_locality_and_eligibility(self):
        rng = np.random.default_rng(2024)
        for _ in range(30):
            h, w = rng.integers(2, 64, size=2)
            host = BinaryImage((rng.random((h, w)) >= rng.random()).astype(np.uint8))
            gross = capacity(host).gross_bits
            if gross < 32:
                continue
            payload = bytes(rng.integers(0, 256, size=int(rng.integers(0, (gross - 32) // 8 + 1)), dtype=np.uint8))
            stego = embed_payload(host, payload)
            nbits = framed_size(len(payload))

            consumed = blocks_for_bits(host, nbits)
            self.assertLessEqual(flip_count(host, stego), 4 * consumed)
            self.assertEqual(framed_blocks_consumed(stego), consumed)

            mask = consumed_block_mask(host, nbits)
            untouched = ~np.kron(mask, np.ones((2, 2), dtype=bool))
            full = np.ones((h, w), dtype=bool)
            full[:untouched.shape[0], :untouched.shape[1]] = untouched
            np.testing.assert_array_equal(host.pixels[full], stego.pixels[full])

            host_black = BLACK_COUNT[block_codes(host)]
            stego_black = BLACK_COUNT[block_codes(stego)]
            host_pure = (host_black == 0) | (host_black == 4)
            stego_pure = (stego_black == 0) | (stego_black == 4)
            np.testing.assert_array_equal(host_pure, stego_pure)

            # Width flip on consumed blocks
            a_blocks = mask & (host_black == 2)
            b_blocks = mask & ~host_pure & (host_black != 2)
            self.assertTrue((stego_black[a_blocks] % 2 == 1).all())
            self.assertTrue((stego_black[b_blocks] == 2).all())


if __name__ == '__main__':
    unittest.main()
