"""
Capacity, embedding and synchronized extraction.

Embedding walks the block grid in scan order. Pure blocks are skipped and
never touched. A 2-black host block (category A) takes the next 3 bits and
is rewritten with its table I pattern (1 or 3 black); a 1- or 3-black host
block (category B) takes 2 bits and becomes its table II pattern (2 black).
The replacement is unconditional, even when the host already shows the
target pattern.

Extraction reads the stego blocks in the same order: odd black count means
3 bits via table I, two black means 2 bits via table II. Because table
patterns are never pure, the extractor skips exactly the blocks the
embedder skipped.
"""

import logging
from dataclasses import dataclass, asdict

import numpy as np

from src.blockgrid.grid import block_codes, write_block_codes, dims_of
from src.blockgrid.pattern import BLACK_COUNT, Pattern
from src.codec.tables import ENCODE3_LUT, ENCODE2_LUT, DECODE3_LUT, DECODE2_LUT
from src.engine.bitstream import BitStream, HEADER_BITS, frame_payload
from src.utils.errors import (
    InsufficientCapacityError, CorruptStreamError, NotEnoughDataError,
    HeaderExceedsCapacityError, NotByteAlignedError
)

logger = logging.getLogger("stego.engine")

# Bits carried per block, indexed by pattern code
_HOST_WIDTH = np.array([{2: 3, 1: 2, 3: 2}.get(int(b), 0) for b in BLACK_COUNT], dtype=np.int64)
_STEGO_WIDTH = np.array([{1: 3, 3: 3, 2: 2}.get(int(b), 0) for b in BLACK_COUNT], dtype=np.int64)


@dataclass(frozen=True)
class CapacityReport:
    count_a: int
    count_b: int
    count_pure: int
    gross_bits: int
    net_bits: int
    header_bits: int = HEADER_BITS

    @property
    def total_blocks(self):
        return self.count_a + self.count_b + self.count_pure

    @property
    def data_blocks(self):
        return self.count_a + self.count_b

    @property
    def net_bytes(self):
        return self.net_bits // 8

    def to_dict(self):
        return asdict(self)

    def to_text(self):
        return "\n".join([
            f"Category A blocks:  {self.count_a}",
            f"Category B blocks:  {self.count_b}",
            f"Pure blocks:        {self.count_pure}",
            f"Gross capacity:     {self.gross_bits} bits",
            f"Net capacity:       {self.net_bits} bits ({self.net_bytes} bytes after {self.header_bits}-bit header)",
        ])


def capacity(image):
    codes = block_codes(image).ravel()
    black = BLACK_COUNT[codes]
    count_a = int(np.count_nonzero(black == 2))
    count_pure = int(np.count_nonzero((black == 0) | (black == 4)))
    count_b = codes.size - count_a - count_pure
    gross = 3 * count_a + 2 * count_b
    return CapacityReport(
        count_a=count_a,
        count_b=count_b,
        count_pure=count_pure,
        gross_bits=gross,
        net_bits=max(0, gross - HEADER_BITS),
    )


class _BlockPlan:
    """Data-carrying blocks of an image in scan order, with their bit widths and offsets."""

    def __init__(self, image, width_lut):
        self.dims = dims_of(image)
        self.codes = block_codes(image).ravel()
        widths = width_lut[self.codes]
        self.index = np.flatnonzero(widths)
        self.widths = widths[self.index]
        self.ends = np.cumsum(self.widths)
        self.starts = self.ends - self.widths

    @property
    def gross_bits(self):
        return int(self.ends[-1]) if self.ends.size else 0

    def blocks_for(self, nbits):
        """Number of leading data blocks needed to hold `nbits`."""
        if nbits <= 0:
            return 0
        return int(np.searchsorted(self.ends, nbits, side='left')) + 1

    def position(self, k):
        flat = int(self.index[k])
        return divmod(flat, self.dims.n)


def _as_bits(bits):
    if isinstance(bits, BitStream):
        return bits.bits
    if isinstance(bits, str):
        return BitStream.from_string(bits).bits
    return BitStream(bits).bits


def embed_bits(image, bits):
    """Raw mode: hide `bits` in the image, no length header."""
    bits = _as_bits(bits)
    nbits = len(bits)
    plan = _BlockPlan(image, _HOST_WIDTH)
    if nbits > plan.gross_bits:
        raise InsufficientCapacityError(nbits, plan.gross_bits)
    if nbits == 0:
        return image

    k = plan.blocks_for(nbits)
    starts = plan.starts[:k]
    widths = plan.widths[:k]

    # Zero-pad the last group, plus two spare bits so index math never overruns
    padded = np.zeros(int(plan.ends[k - 1]) + 2, dtype=np.int64)
    padded[:nbits] = bits

    b0 = padded[starts]
    b1 = padded[starts + 1]
    b2 = padded[starts + 2]
    three = widths == 3
    new_codes = np.where(three,
                         ENCODE3_LUT[(b0 << 2) | (b1 << 1) | b2],
                         ENCODE2_LUT[(b0 << 1) | b1])

    codes = plan.codes.copy()
    codes[plan.index[:k]] = new_codes
    logger.debug(f"Embedded {nbits} bits into {k} blocks ({int(np.count_nonzero(three))} A, "
                 f"{k - int(np.count_nonzero(three))} B)")
    return write_block_codes(image, codes)


def _decode_prefix(plan, nbits):
    """Decode the leading blocks that hold `nbits`; returns a uint8 bit array of exactly nbits."""
    if nbits < 0:
        raise ValueError(f"Bit count must be non-negative, got {nbits}")
    if nbits > plan.gross_bits:
        raise NotEnoughDataError(nbits, plan.gross_bits)
    if nbits == 0:
        return np.zeros(0, dtype=np.uint8)

    k = plan.blocks_for(nbits)
    codes = plan.codes[plan.index[:k]]
    widths = plan.widths[:k]
    starts = plan.starts[:k]
    values = np.where(widths == 3, DECODE3_LUT[codes], DECODE2_LUT[codes]).astype(np.int64)

    bad = np.flatnonzero(values < 0)
    if bad.size:
        first = int(bad[0])
        row, col = plan.position(first)
        raise CorruptStreamError(row, col, str(Pattern.from_code(int(codes[first]))))

    out = np.zeros(int(plan.ends[k - 1]), dtype=np.uint8)
    for j in range(3):
        mask = widths > j
        shift = widths[mask] - 1 - j
        out[starts[mask] + j] = (values[mask] >> shift) & 1
    return out[:nbits]


def extract_bits(stego, nbits):
    """Raw mode: read the first `nbits` hidden bits."""
    plan = _BlockPlan(stego, _STEGO_WIDTH)
    return BitStream(_decode_prefix(plan, nbits))


def embed_payload(image, payload):
    """Framed mode: 32-bit length header followed by the payload bytes."""
    frame = frame_payload(payload)
    try:
        return embed_bits(image, frame)
    except InsufficientCapacityError as e:
        logger.debug(f"Payload of {len(payload)} bytes needs {e.required} bits, host offers {e.available}")
        raise


def _read_header(plan):
    header = _decode_prefix(plan, HEADER_BITS)
    length = 0
    for bit in header.tolist():
        length = (length << 1) | bit
    remaining = plan.gross_bits - HEADER_BITS
    if length > remaining:
        # A foreign two-black block may have been a 3-bit block before damage
        foreign = int(np.count_nonzero(DECODE2_LUT[plan.codes[plan.index]][plan.widths == 2] < 0))
        if length <= remaining + foreign:
            _decode_prefix(plan, plan.gross_bits)
        raise HeaderExceedsCapacityError(
            f"Header declares {length} payload bits but only {remaining} remain in the image"
        )
    return length


def extract_payload(stego):
    plan = _BlockPlan(stego, _STEGO_WIDTH)
    length = _read_header(plan)
    if length % 8:
        raise NotByteAlignedError(f"Header declares {length} bits, not a whole number of bytes")

    bits = _decode_prefix(plan, HEADER_BITS + length)[HEADER_BITS:]
    logger.debug(f"Extracted {length} payload bits from {plan.blocks_for(HEADER_BITS + length)} blocks")
    return np.packbits(bits).tobytes()


def blocks_for_bits(image, nbits):
    """Data blocks (scan order) that carry the first `nbits` of a host image."""
    plan = _BlockPlan(image, _HOST_WIDTH)
    if nbits > plan.gross_bits:
        raise InsufficientCapacityError(nbits, plan.gross_bits)
    return plan.blocks_for(nbits)


def framed_length(stego):
    """Payload bit count declared by the frame header of `stego`."""
    return _read_header(_BlockPlan(stego, _STEGO_WIDTH))


def framed_blocks_consumed(stego):
    """Blocks occupied by the framed payload hidden in `stego`."""
    plan = _BlockPlan(stego, _STEGO_WIDTH)
    return plan.blocks_for(HEADER_BITS + _read_header(plan))


def consumed_block_mask(image, nbits):
    """(m, n) bool mask of the blocks that embedding `nbits` rewrites."""
    plan = _BlockPlan(image, _HOST_WIDTH)
    mask = np.zeros(plan.codes.size, dtype=bool)
    mask[plan.index[:plan.blocks_for(nbits)]] = True
    return mask.reshape(plan.dims.m, plan.dims.n)
