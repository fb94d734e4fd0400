"""
In-memory binary image.
Pixel convention throughout the package: 0 = black, 1 = white.
"""

import numpy as np

from src.utils.errors import DimensionMismatchError

BLACK = 0
WHITE = 1


class BinaryImage:
    """Immutable rectangular grid of binary pixels, stored row-major as uint8."""

    __slots__ = ('_pixels',)

    def __init__(self, pixels):
        arr = np.array(pixels, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"BinaryImage needs a 2-D pixel grid, got {arr.ndim} dimension(s)")
        height, width = arr.shape
        if width < 1 or height < 1:
            raise ValueError(f"BinaryImage must be at least 1x1, got {width}x{height}")
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise ValueError("BinaryImage pixels must be 0 (black) or 1 (white)")

        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def _wrap(cls, arr):
        """Adopt an already validated uint8 array without copying."""
        image = cls.__new__(cls)
        arr.flags.writeable = False
        image._pixels = arr
        return image

    @classmethod
    def blank(cls, width, height, value=WHITE):
        if value not in (BLACK, WHITE):
            raise ValueError("blank value must be 0 or 1")
        if width < 1 or height < 1:
            raise ValueError(f"BinaryImage must be at least 1x1, got {width}x{height}")
        return cls._wrap(np.full((height, width), value, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows):
        """Build from row strings such as ["0111", "1100"] or nested int lists."""
        parsed = [[int(ch) for ch in row] if isinstance(row, str) else list(row) for row in rows]
        return cls(parsed)

    @property
    def width(self):
        return self._pixels.shape[1]

    @property
    def height(self):
        return self._pixels.shape[0]

    @property
    def dims(self):
        return (self.width, self.height)

    @property
    def pixel_count(self):
        return self._pixels.size

    @property
    def pixels(self):
        """Read-only (height, width) uint8 view."""
        return self._pixels

    def pixel(self, row, col):
        return int(self._pixels[row, col])

    def with_pixel(self, row, col, value):
        if value not in (BLACK, WHITE):
            raise ValueError("pixel value must be 0 or 1")
        arr = self._pixels.copy()
        arr[row, col] = value
        return BinaryImage._wrap(arr)

    def complement(self):
        return BinaryImage._wrap(1 - self._pixels)

    def black_count(self):
        return int(self.pixel_count - np.count_nonzero(self._pixels))

    def rows(self):
        return [''.join(str(v) for v in row) for row in self._pixels.tolist()]

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return self._pixels.shape == other._pixels.shape and np.array_equal(self._pixels, other._pixels)

    def __hash__(self):
        return hash((self._pixels.shape, self._pixels.tobytes()))

    def __repr__(self):
        return f"BinaryImage({self.width}x{self.height}, black={self.black_count()})"


def check_same_dims(a, b):
    if a.dims != b.dims:
        raise DimensionMismatchError(a.dims, b.dims)


def flip_count(a, b):
    """Number of pixel positions where a and b differ."""
    check_same_dims(a, b)
    return int(np.count_nonzero(a.pixels != b.pixels))
