"""
Ordered bit sequence with a read cursor, plus the payload framing.

Frame layout (frozen):
    32-bit unsigned payload length in bits, most significant bit first,
    followed by the payload bytes, each byte most significant bit first.
Blocks carry 3 or 2 bits; when the frame ends inside a block group the
group is zero-padded, and the length header lets the reader drop the pad.
"""

import numpy as np

from src.utils.errors import NotByteAlignedError, PayloadTooLargeError, NotEnoughDataError

HEADER_BITS = 32
MAX_PAYLOAD_BITS = (1 << HEADER_BITS) - 1


class BitStream:
    def __init__(self, bits=()):
        arr = np.array(bits, dtype=np.int64).ravel()
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise ValueError("BitStream values must be 0 or 1")
        self._bits = arr.astype(np.uint8)
        self.cursor = 0

    @classmethod
    def from_bytes(cls, data):
        stream = cls()
        stream._bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))
        return stream

    @classmethod
    def from_string(cls, text):
        """'0110' -> four bits; spaces and underscores are ignored."""
        cleaned = text.replace(' ', '').replace('_', '')
        if any(ch not in '01' for ch in cleaned):
            raise ValueError(f"Bit string may only hold 0/1, got {text!r}")
        return cls([int(ch) for ch in cleaned])

    @property
    def bits(self):
        view = self._bits.view()
        view.flags.writeable = False
        return view

    @property
    def remaining(self):
        return len(self._bits) - self.cursor

    def write(self, value, width):
        """Append `value` as `width` bits, most significant first."""
        if value < 0 or value >= (1 << width):
            raise ValueError(f"{value} does not fit in {width} bits")
        new = np.array([(value >> shift) & 1 for shift in range(width - 1, -1, -1)], dtype=np.uint8)
        self._bits = np.concatenate([self._bits, new])
        return self

    def extend(self, other):
        other_bits = other.bits if isinstance(other, BitStream) else BitStream(other).bits
        self._bits = np.concatenate([self._bits, other_bits])
        return self

    def read(self, width):
        """Consume `width` bits and return them as an unsigned int (MSB first)."""
        if width > self.remaining:
            raise NotEnoughDataError(width, self.remaining)
        value = 0
        for bit in self._bits[self.cursor:self.cursor + width].tolist():
            value = (value << 1) | bit
        self.cursor += width
        return value

    def read_bits(self, count):
        if count > self.remaining:
            raise NotEnoughDataError(count, self.remaining)
        chunk = BitStream()
        chunk._bits = self._bits[self.cursor:self.cursor + count].copy()
        self.cursor += count
        return chunk

    def to_bytes(self):
        if len(self._bits) % 8:
            raise NotByteAlignedError(f"{len(self._bits)} bits is not a whole number of bytes")
        return np.packbits(self._bits).tobytes()

    def __len__(self):
        return len(self._bits)

    def __eq__(self, other):
        if isinstance(other, BitStream):
            return np.array_equal(self._bits, other._bits)
        if isinstance(other, str):
            return str(self) == other
        return NotImplemented

    def __str__(self):
        return ''.join('1' if b else '0' for b in self._bits.tolist())

    def __repr__(self):
        preview = str(self)
        if len(preview) > 40:
            preview = preview[:40] + '...'
        return f"BitStream({len(self)} bits: {preview})"


def frame_payload(payload):
    """Length header + payload bits."""
    payload = bytes(payload)
    nbits = 8 * len(payload)
    if nbits > MAX_PAYLOAD_BITS:
        raise PayloadTooLargeError(f"Payload of {len(payload)} bytes exceeds the {HEADER_BITS}-bit length field")
    return BitStream().write(nbits, HEADER_BITS).extend(BitStream.from_bytes(payload))


def framed_size(payload_len):
    """Bits needed to embed a payload of `payload_len` bytes."""
    return HEADER_BITS + 8 * payload_len
