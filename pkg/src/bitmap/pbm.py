"""
PBM (Netpbm bitmap) reader/writer for P1 (plain) and P4 (raw) files.

PBM stores 1 = black, 0 = white. Internally the package uses
0 = black, 1 = white, so every pixel is inverted on the way in and out.
P4 rows are packed MSB-first and padded to a whole byte; padding bits are
written as 0 and ignored when reading.
"""

import logging
import numpy as np

from src.bitmap.image import BinaryImage
from src.utils.errors import MalformedHeaderError, TruncatedDataError, InvalidTokenError

logger = logging.getLogger("stego.pbm")

WHITESPACE = b' \t\n\r\v\f'
P1_LINE_TOKENS = 35  # keeps plain rows under 70 characters


class _HeaderReader:
    """Cursor over the header: whitespace and '#' comments are skipped between fields."""

    def __init__(self, data):
        self.data = data
        self.pos = 0

    def skip_space_and_comments(self):
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos:self.pos + 1]
            if ch == b'#':
                while self.pos < len(data) and data[self.pos:self.pos + 1] not in (b'\n', b'\r'):
                    self.pos += 1
            elif ch in WHITESPACE:
                self.pos += 1
            else:
                break

    def read_uint(self, field):
        self.skip_space_and_comments()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos:self.pos + 1].isdigit():
            self.pos += 1
        token = self.data[start:self.pos]
        if not token:
            raise MalformedHeaderError(f"PBM header: missing or non-numeric {field}")
        if self.pos < len(self.data) and self.data[self.pos:self.pos + 1] not in WHITESPACE \
                and self.data[self.pos:self.pos + 1] != b'#':
            raise MalformedHeaderError(f"PBM header: bad {field} token")
        value = int(token)
        if value < 1:
            raise MalformedHeaderError(f"PBM header: {field} must be >= 1, got {value}")
        return value


def _parse_header(data):
    if len(data) < 2 or data[:1] != b'P' or data[1:2] not in (b'1', b'4'):
        raise MalformedHeaderError(f"Not a PBM file (magic {data[:2]!r})")
    fmt = 'P' + data[1:2].decode('ascii')
    if len(data) > 2 and data[2:3] not in WHITESPACE and data[2:3] != b'#':
        raise MalformedHeaderError(f"Not a PBM file (magic {data[:3]!r})")

    reader = _HeaderReader(data)
    reader.pos = 2
    width = reader.read_uint('width')
    height = reader.read_uint('height')
    return fmt, width, height, reader.pos


def load_pbm(data):
    """Parse P1 or P4 bytes into a BinaryImage."""
    data = bytes(data)
    fmt, width, height, pos = _parse_header(data)

    if fmt == 'P1':
        # Comments may still trail the dimensions line
        reader = _HeaderReader(data)
        reader.pos = pos
        reader.skip_space_and_comments()
        pbm_bits = _read_plain_raster(data[reader.pos:], width * height)
    else:
        # Exactly one whitespace byte separates the header from the raster
        if pos >= len(data) or data[pos:pos + 1] not in WHITESPACE:
            raise MalformedHeaderError("PBM header: missing separator before P4 raster")
        pbm_bits = _read_raw_raster(data[pos + 1:], width, height)

    logger.debug(f"Loaded {fmt} {width}x{height}")
    # PBM 1 = black -> internal 0 = black
    return BinaryImage._wrap((1 - pbm_bits.reshape(height, width)).astype(np.uint8))


def _read_plain_raster(body, count):
    raw = np.frombuffer(body, dtype=np.uint8)
    is_bit = (raw == ord('0')) | (raw == ord('1'))
    is_space = np.isin(raw, np.frombuffer(WHITESPACE, dtype=np.uint8))

    bits = raw[is_bit]
    bad = np.flatnonzero(~(is_bit | is_space))
    if bad.size:
        # Anything after the last needed pixel is trailing data, not an error
        first_bad = int(bad[0])
        needed_before = int(np.count_nonzero(is_bit[:first_bad]))
        if needed_before < count:
            token = body[first_bad:first_bad + 1]
            raise InvalidTokenError(f"P1 raster: invalid token {token!r} (expected 0 or 1)")
        bits = raw[:first_bad][is_bit[:first_bad]]

    if bits.size < count:
        raise TruncatedDataError(count, int(bits.size))
    return (bits[:count] - ord('0')).astype(np.uint8)


def _read_raw_raster(body, width, height):
    row_bytes = (width + 7) // 8
    needed = row_bytes * height
    if len(body) < needed:
        got_rows = len(body) // row_bytes if row_bytes else 0
        raise TruncatedDataError(width * height, got_rows * width)
    packed = np.frombuffer(body[:needed], dtype=np.uint8).reshape(height, row_bytes)
    return np.unpackbits(packed, axis=1)[:, :width]


def save_pbm(image, fmt='P4'):
    """Serialise a BinaryImage as P1 or P4 bytes."""
    fmt = fmt.upper()
    pbm_bits = (1 - image.pixels).astype(np.uint8)
    header = f"{fmt}\n{image.width} {image.height}\n".encode('ascii')

    if fmt == 'P4':
        return header + np.packbits(pbm_bits, axis=1).tobytes()
    if fmt == 'P1':
        lines = []
        for row in pbm_bits.tolist():
            for start in range(0, len(row), P1_LINE_TOKENS):
                lines.append(' '.join(str(v) for v in row[start:start + P1_LINE_TOKENS]))
        return header + ('\n'.join(lines) + '\n').encode('ascii')
    raise ValueError(f"Unsupported PBM format {fmt!r} (expected P1 or P4)")


def read_pbm_file(path):
    with open(path, 'rb') as f:
        return load_pbm(f.read())
