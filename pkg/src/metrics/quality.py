"""
Distortion metrics for a host/stego pair.

Pixels are scaled to {0, 255} (MAX_I = 255) for MSE and PSNR:
    MSE  = (1 / (W*H)) * sum((I - K)^2)  = flips * 255^2 / (W*H)
    PSNR = 10 * log10(255^2 / MSE)        = 10 * log10((W*H) / flips)
Zero flips gives PSNR = inf. The scaling only affects reported numbers;
capacity, embedding and extraction never see it.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from src.bitmap.image import flip_count, check_same_dims
from src.blockgrid.grid import block_codes
from src.engine.bitstream import HEADER_BITS
from src.engine.stego import (
    CapacityReport, capacity, embed_bits, extract_bits, blocks_for_bits, framed_length
)
from src.utils.errors import StegoError

logger = logging.getLogger("stego.metrics")

MAX_I = 255
REL_TOLERANCE = 1e-9


def mse(original, stego):
    check_same_dims(original, stego)
    diff = original.pixels.astype(np.float64) * MAX_I - stego.pixels.astype(np.float64) * MAX_I
    return float(np.mean(diff * diff))


def psnr_from_mse(mse_value):
    if mse_value == 0:
        return math.inf
    return 10 * math.log10(MAX_I ** 2 / mse_value)


def psnr(original, stego):
    return psnr_from_mse(mse(original, stego))


def psnr_from_flips(flips, pixel_count):
    """Closed form: 10 * log10(pixel_count / flips)."""
    if flips == 0:
        return math.inf
    return 10 * math.log10(pixel_count / flips)


def format_db(value):
    return "inf" if math.isinf(value) else f"{value:.4f}"


@dataclass(frozen=True)
class AnalysisReport:
    flips: int
    mse: float
    psnr_db: float
    capacity: CapacityReport
    blocks_consumed_estimate: int
    pixel_count: int = field(default=0)

    @property
    def psnr_is_infinite(self):
        return math.isinf(self.psnr_db)

    def to_dict(self):
        data = {
            'flips': self.flips,
            'mse': self.mse,
            'psnr_db': format_db(self.psnr_db),
            'pixel_count': self.pixel_count,
            'blocks_consumed_estimate': self.blocks_consumed_estimate,
        }
        data.update({f"capacity_{k}": v for k, v in self.capacity.to_dict().items()})
        return data

    def to_kv(self):
        return "\n".join(f"{key}={value}" for key, value in self.to_dict().items())

    def to_text(self):
        return "\n".join([
            f"Flipped pixels:     {self.flips} of {self.pixel_count}",
            f"MSE:                {self.mse:.6f}",
            f"PSNR:               {format_db(self.psnr_db)} dB",
            f"Blocks consumed:    {self.blocks_consumed_estimate} (estimate)",
            self.capacity.to_text(),
        ])


def _changed_blocks(original, stego):
    return int(np.count_nonzero(block_codes(original) != block_codes(stego)))


def _framed_span(original, stego):
    """
    Blocks spanned by the frame hidden in `stego`, or None when the pair is not
    a framed embedding of `original`. The header is trusted only if re-embedding
    the bits it covers into `original` reproduces `stego` exactly.
    """
    try:
        nbits = HEADER_BITS + framed_length(stego)
        if nbits % 8 or embed_bits(original, extract_bits(stego, nbits)) != stego:
            return None
        return blocks_for_bits(original, nbits)
    except StegoError:
        return None


def analyze(original, stego):
    check_same_dims(original, stego)
    flips = flip_count(original, stego)
    pixel_count = original.pixel_count
    mse_value = mse(original, stego)
    psnr_value = psnr_from_mse(mse_value)

    closed = psnr_from_flips(flips, pixel_count)
    if flips and not math.isclose(psnr_value, closed, rel_tol=REL_TOLERANCE):
        logger.error(f"PSNR paths disagree: via MSE {psnr_value!r}, closed form {closed!r}")

    consumed = _changed_blocks(original, stego)
    framed = _framed_span(original, stego)
    if framed is not None:
        consumed = framed

    return AnalysisReport(
        flips=flips,
        mse=mse_value,
        psnr_db=psnr_value,
        capacity=capacity(original),
        blocks_consumed_estimate=consumed,
        pixel_count=pixel_count,
    )
