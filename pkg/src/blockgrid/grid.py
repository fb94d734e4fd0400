"""
Partition of a binary image into non-overlapping k x k blocks (k = 2).

The grid has m = floor(height / k) block rows and n = floor(width / k) block
columns. Remainder rows/columns of an odd-sized image belong to no block and
are never read or written. Blocks are visited in row-major scan order
(left to right, top to bottom); embedder and extractor both rely on it.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from src.bitmap.image import BinaryImage
from src.blockgrid.pattern import Pattern, Category, classify, ALL_PATTERNS
from src.utils.errors import ImageTooSmallError, IndexOutOfGridError

BLOCK_SIZE = 2


@dataclass(frozen=True)
class GridDims:
    m: int   # block rows
    n: int   # block columns
    k: int = BLOCK_SIZE

    @property
    def total(self):
        return self.m * self.n


def grid_dims(height, width, k=BLOCK_SIZE):
    if k != BLOCK_SIZE:
        raise ValueError(f"Only {BLOCK_SIZE}x{BLOCK_SIZE} blocks are supported, got k={k}")
    if height < k or width < k:
        raise ImageTooSmallError(f"Image {width}x{height} is smaller than one {k}x{k} block")
    return GridDims(m=height // k, n=width // k, k=k)


def dims_of(image):
    return grid_dims(image.height, image.width)


def _check_index(dims, row, col):
    if not (0 <= row < dims.m and 0 <= col < dims.n):
        raise IndexOutOfGridError(f"Block ({row}, {col}) outside {dims.m}x{dims.n} grid")


def get_block(image, row, col):
    dims = dims_of(image)
    _check_index(dims, row, col)
    px = image.pixels
    r, c = 2 * row, 2 * col
    return Pattern(int(px[r, c]), int(px[r, c + 1]), int(px[r + 1, c]), int(px[r + 1, c + 1]))


def set_block(image, row, col, pattern):
    """Copy of `image` with the addressed block overwritten by `pattern`."""
    dims = dims_of(image)
    _check_index(dims, row, col)
    arr = image.pixels.copy()
    r, c = 2 * row, 2 * col
    arr[r, c], arr[r, c + 1], arr[r + 1, c], arr[r + 1, c + 1] = pattern
    return BinaryImage._wrap(arr)


def iter_blocks(image):
    """Yield (row, col, Pattern) for every block in scan order."""
    dims = dims_of(image)
    for row in range(dims.m):
        for col in range(dims.n):
            yield row, col, get_block(image, row, col)


def block_codes(image):
    """(m, n) uint8 array of pattern codes, p00 as the most significant bit."""
    dims = dims_of(image)
    sub = image.pixels[:2 * dims.m, :2 * dims.n].reshape(dims.m, 2, dims.n, 2)
    return ((sub[:, 0, :, 0] << 3) | (sub[:, 0, :, 1] << 2)
            | (sub[:, 1, :, 0] << 1) | sub[:, 1, :, 1]).astype(np.uint8)


def write_block_codes(image, codes):
    """New image whose grid area holds the given (m, n) codes; remainder pixels are kept."""
    dims = dims_of(image)
    codes = np.asarray(codes, dtype=np.uint8).reshape(dims.m, dims.n)
    sub = np.empty((dims.m, 2, dims.n, 2), dtype=np.uint8)
    sub[:, 0, :, 0] = (codes >> 3) & 1
    sub[:, 0, :, 1] = (codes >> 2) & 1
    sub[:, 1, :, 0] = (codes >> 1) & 1
    sub[:, 1, :, 1] = codes & 1

    arr = image.pixels.copy()
    arr[:2 * dims.m, :2 * dims.n] = sub.reshape(2 * dims.m, 2 * dims.n)
    return BinaryImage._wrap(arr)


CODE_CATEGORY = tuple(classify(p) for p in ALL_PATTERNS)


def census(image):
    """Number of blocks per Category."""
    counts = np.bincount(block_codes(image).ravel(), minlength=16)
    tally = Counter({category: 0 for category in Category})
    for code, count in enumerate(counts.tolist()):
        tally[CODE_CATEGORY[code]] += count
    return dict(tally)
