"""
Benchmark harness.

For every PBM host in a corpus directory: fill the net capacity with a
seeded pseudorandom payload, time embed and extract (mean over
repetitions, file I/O excluded and measured separately), check the
payload round-trips, and record capacity and PSNR. Images run one after
another so timings are not perturbed by each other.
"""

import glob
import logging
import os
import sys
import time
from dataclasses import dataclass, asdict

import numpy as np
import pandas as pd
import psutil
from tqdm import tqdm

from src.bitmap.image import flip_count
from src.bitmap.pbm import read_pbm_file, save_pbm
from src.engine.stego import capacity, embed_payload, extract_payload, blocks_for_bits
from src.engine.bitstream import framed_size, HEADER_BITS
from src.metrics.quality import psnr, format_db
from src.utils.errors import CorpusError, CapacityError, GridError, StegoError
from src.utils.fileio import atomic_write

logger = logging.getLogger("stego.bench")

COLUMNS = {
    'image_id': 'Image',
    'capacity_bits': 'Capacity (bits)',
    'payload_bytes': 'Payload (bytes)',
    'data_blocks': 'Data blocks',
    'pure_fraction': 'Pure share',
    'hide_ms': 'Hiding time (ms)',
    'extract_ms': 'Extraction time (ms)',
    'load_ms': 'Load (ms)',
    'save_ms': 'Save (ms)',
    'flips': 'Flips',
    'psnr_db': 'PSNR (dB)',
    'repetitions': 'Reps',
}


@dataclass(frozen=True)
class BenchResult:
    image_id: str
    capacity_bits: int
    payload_bytes: int
    data_blocks: int
    pure_fraction: float
    hide_ms: float
    extract_ms: float
    load_ms: float
    save_ms: float
    flips: int
    psnr_db: float
    repetitions: int


def raise_priority():
    """Best effort: bump process priority so timings are less noisy."""
    try:
        p = psutil.Process(os.getpid())
        if hasattr(psutil, 'HIGH_PRIORITY_CLASS'):
            p.nice(psutil.HIGH_PRIORITY_CLASS)
        else:
            p.nice(max(p.nice() - 5, -20))
        logger.info("High priority mode enabled for benchmark")
        return True
    except (psutil.Error, OSError) as e:
        logger.warning(f"Could not set high priority: {e}")
        return False


def find_corpus(corpus_dir):
    if not os.path.isdir(corpus_dir):
        raise CorpusError(f"Corpus directory not found: {corpus_dir}")
    paths = sorted(glob.glob(os.path.join(corpus_dir, '*.pbm')))
    if not paths:
        raise CorpusError(f"No .pbm images in corpus directory {corpus_dir}")
    return paths


def bench_payload(seed, index, nbytes):
    """Pseudorandom payload; the same (seed, index) always gives the same bytes."""
    rng = np.random.default_rng([seed, index])
    return rng.integers(0, 256, size=nbytes, dtype=np.uint8).tobytes()


def _mean_ms(fn, repetitions):
    result = None
    start = time.perf_counter()
    for _ in range(repetitions):
        result = fn()
    return result, (time.perf_counter() - start) * 1000.0 / repetitions


def bench_image(path, index, repetitions, seed, stego_dir=None):
    start = time.perf_counter()
    host = read_pbm_file(path)
    load_ms = (time.perf_counter() - start) * 1000.0

    report = capacity(host)
    if report.gross_bits < HEADER_BITS:
        raise CapacityError(f"{path}: {report.gross_bits} bits cannot hold the {HEADER_BITS}-bit header")
    payload = bench_payload(seed, index, report.net_bytes)

    stego, hide_ms = _mean_ms(lambda: embed_payload(host, payload), repetitions)
    recovered, extract_ms = _mean_ms(lambda: extract_payload(stego), repetitions)
    if recovered != payload:
        raise StegoError(f"{path}: extracted payload differs from the embedded one")

    start = time.perf_counter()
    encoded = save_pbm(stego, 'P4')
    if stego_dir:
        atomic_write(os.path.join(stego_dir, os.path.basename(path)), encoded)
    save_ms = (time.perf_counter() - start) * 1000.0

    return BenchResult(
        image_id=os.path.splitext(os.path.basename(path))[0],
        capacity_bits=report.gross_bits,
        payload_bytes=len(payload),
        data_blocks=blocks_for_bits(host, framed_size(len(payload))),
        pure_fraction=report.count_pure / report.total_blocks,
        hide_ms=hide_ms,
        extract_ms=extract_ms,
        load_ms=load_ms,
        save_ms=save_ms,
        flips=flip_count(host, stego),
        psnr_db=psnr(host, stego),
        repetitions=repetitions,
    )


def run_bench(corpus_dir, repetitions=10, seed=0, stego_dir=None, high_priority=False, progress=True):
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    paths = find_corpus(corpus_dir)
    if high_priority:
        raise_priority()

    logger.info(f"Benchmarking {len(paths)} image(s), {repetitions} repetition(s), seed {seed}")
    results = []
    for index, path in enumerate(tqdm(paths, desc='[*] Benchmarking', file=sys.stderr, disable=not progress)):
        try:
            result = bench_image(path, index, repetitions, seed, stego_dir)
        except (CapacityError, GridError) as e:
            logger.warning(f"Skipping {path}: {e}")
            continue
        logger.debug(f"{result.image_id}: hide {result.hide_ms:.2f} ms, extract {result.extract_ms:.2f} ms")
        results.append(result)
    if not results:
        raise CorpusError(f"No image in {corpus_dir} can hold a framed payload")
    return results


def results_frame(results):
    df = pd.DataFrame([asdict(r) for r in results], columns=list(COLUMNS))
    return df


def render_text(results):
    df = results_frame(results)
    df['pure_fraction'] = df['pure_fraction'].map(lambda v: f"{v:.3f}")
    for col in ('hide_ms', 'extract_ms', 'load_ms', 'save_ms'):
        df[col] = df[col].map(lambda v: f"{v:.2f}")
    df['psnr_db'] = df['psnr_db'].map(format_db)
    return df.rename(columns=COLUMNS).to_string(index=False)


def render_csv(results):
    df = results_frame(results)
    df['psnr_db'] = df['psnr_db'].map(format_db)
    return df.to_csv(index=False)
