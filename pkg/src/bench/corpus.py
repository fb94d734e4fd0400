"""
Synthetic host images for benchmarks and capacity experiments.

Real scanned test images are not bundled, so the corpus is generated:
each image has a controlled share of pure (all-white / all-black) blocks,
from busy to mostly blank, which is what drives capacity differences
between hosts of the same size.
"""

import logging
import os

import numpy as np

from src.bitmap.image import BinaryImage
from src.bitmap.pbm import save_pbm
from src.blockgrid.grid import grid_dims, write_block_codes
from src.blockgrid.pattern import BLACK_COUNT
from src.utils.fileio import atomic_write

logger = logging.getLogger("stego.corpus")

# The 14 data-carrying pattern codes (neither 0000 nor 1111)
DATA_CODES = np.array([c for c in range(16) if BLACK_COUNT[c] not in (0, 4)], dtype=np.uint8)

# Pure-block shares of the default corpus, busiest first
DEFAULT_PURE_FRACTIONS = (0.05, 0.25, 0.45, 0.6, 0.75, 0.9)


def checkerboard(width, height):
    """Pixel checkerboard starting black; every 2x2 block reads 0110 (two black pixels)."""
    rows, cols = np.indices((height, width))
    return BinaryImage._wrap(((rows + cols) % 2).astype(np.uint8))


def random_image(width, height, density, rng):
    """Independent pixels, each black with probability `density`."""
    black = rng.random((height, width)) < density
    return BinaryImage._wrap((~black).astype(np.uint8))


def mixed_block_image(width, height, pure_fraction, rng):
    """
    Exactly round(pure_fraction * blocks) pure blocks at random positions,
    the rest drawn uniformly from the 14 data patterns. Remainder pixels are white.
    """
    if not 0.0 <= pure_fraction <= 1.0:
        raise ValueError(f"pure_fraction must be within [0, 1], got {pure_fraction}")
    dims = grid_dims(height, width)
    total = dims.total
    n_pure = int(round(pure_fraction * total))

    codes = DATA_CODES[rng.integers(0, DATA_CODES.size, size=total)]
    pure_at = rng.permutation(total)[:n_pure]
    codes[pure_at] = np.where(rng.random(n_pure) < 0.5, 0b0000, 0b1111)

    blank = BinaryImage.blank(width, height)
    return write_block_codes(blank, codes.reshape(dims.m, dims.n))


def shapes_image(width, height, n_shapes, rng):
    """Filled discs and rectangles on a white page; edges give the mixed blocks."""
    arr = np.ones((height, width), dtype=np.uint8)
    rows, cols = np.indices((height, width))
    for _ in range(n_shapes):
        cy, cx = rng.integers(0, height), rng.integers(0, width)
        size = int(rng.integers(max(2, min(width, height) // 40), max(3, min(width, height) // 6)))
        if rng.random() < 0.5:
            mask = (rows - cy) ** 2 + (cols - cx) ** 2 <= size ** 2
        else:
            mask = (abs(rows - cy) <= size // 2) & (abs(cols - cx) <= size)
        # Alternate ink and holes so shapes overlap into outlines
        arr[mask] = 0 if rng.random() < 0.8 else 1
    return BinaryImage._wrap(arr)


CORPUS_KINDS = ('blocks', 'shapes', 'checkerboard')


def build_corpus(out_dir, count=6, width=1024, height=768, seed=7, fractions=None, kind='blocks'):
    """
    Write `count` P4 hosts and return their paths. The default 'blocks' kind
    runs from low to high pure-block share; 'shapes' draws random ink shapes;
    'checkerboard' repeats the densest possible host.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if kind not in CORPUS_KINDS:
        raise ValueError(f"Unknown corpus kind {kind!r}, expected one of {CORPUS_KINDS}")
    if kind != 'blocks':
        return _build_plain_corpus(out_dir, count, width, height, seed, kind)
    if fractions is None:
        fractions = (DEFAULT_PURE_FRACTIONS if count == len(DEFAULT_PURE_FRACTIONS)
                     else tuple(np.linspace(0.05, 0.9, count)))
    rng = np.random.default_rng(seed)

    paths = []
    for i, fraction in enumerate(fractions, start=1):
        image = mixed_block_image(width, height, float(fraction), rng)
        path = os.path.join(out_dir, f"host_{i:02d}.pbm")
        atomic_write(path, save_pbm(image, 'P4'))
        logger.info(f"Wrote {path} ({width}x{height}, pure share {float(fraction):.2f})")
        paths.append(path)
    return paths


def _build_plain_corpus(out_dir, count, width, height, seed, kind):
    rng = np.random.default_rng(seed)
    paths = []
    for i in range(1, count + 1):
        if kind == 'shapes':
            image = shapes_image(width, height, int(rng.integers(20, 200)), rng)
        else:
            image = checkerboard(width, height)
        path = os.path.join(out_dir, f"{kind}_{i:02d}.pbm")
        atomic_write(path, save_pbm(image, 'P4'))
        logger.info(f"Wrote {path} ({width}x{height}, {kind})")
        paths.append(path)
    return paths
