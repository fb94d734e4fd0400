"""
Command-line verbs.

stdout carries command results only (text tables or key=value lines);
progress, logs and errors go to stderr. Exit code is 0 only when the
command fully succeeded, and output files are written atomically so a
failed command never leaves a partial file behind.
"""

import argparse
import logging
import sys
from colorama import Fore

from src.bitmap.image import flip_count
from src.bitmap.pbm import read_pbm_file, save_pbm
from src.bench.corpus import build_corpus, CORPUS_KINDS
from src.cli import bench
from src.codec.tables import render_tables
from src.engine.bitstream import framed_size
from src.engine.stego import capacity, embed_payload, extract_payload, blocks_for_bits
from src.metrics.quality import analyze, psnr, format_db
from src.qa_suite import run_qa
from src.utils.config import load_config, DEFAULT_CONFIG_PATH, PBM_FORMATS
from src.utils.errors import StegoError, InsufficientCapacityError
from src.utils.fileio import read_bytes, atomic_write
from src.utils.logger import LogManager, status

logger = logging.getLogger("stego.cli")


def _emit_kv(out, pairs):
    for key, value in pairs.items():
        print(f"{key}={value}", file=out)


def cmd_capacity(args, config, out, err):
    report = capacity(read_pbm_file(args.image))
    if args.format == 'kv':
        _emit_kv(out, report.to_dict())
    else:
        print(report.to_text(), file=out)
    return 0


def cmd_embed(args, config, out, err):
    host = read_pbm_file(args.host)
    payload = read_bytes(args.payload)
    fmt = args.pbm_format or config['pbm']['default_format']

    try:
        stego = embed_payload(host, payload)
    except InsufficientCapacityError as e:
        report = capacity(host)
        status(err, f"ERROR: payload needs {e.required} bits ({len(payload)} bytes + 32-bit header), "
                    f"host offers {e.available} bits (net {report.net_bits} bits = {report.net_bytes} bytes)",
               Fore.RED)
        return 1

    atomic_write(args.out, save_pbm(stego, fmt))
    bits_used = framed_size(len(payload))
    flips = flip_count(host, stego)
    _emit_kv(out, {
        'payload_bytes': len(payload),
        'bits_used': bits_used,
        'blocks_consumed': blocks_for_bits(host, bits_used),
        'flips': flips,
        'psnr_db': format_db(psnr(host, stego)),
    })
    status(err, f"[OK] Stego image written to {args.out}", Fore.GREEN)
    return 0


def cmd_extract(args, config, out, err):
    payload = extract_payload(read_pbm_file(args.stego))
    atomic_write(args.out, payload)
    _emit_kv(out, {'payload_bytes': len(payload)})
    status(err, f"[OK] Payload written to {args.out}", Fore.GREEN)
    return 0


def cmd_analyze(args, config, out, err):
    report = analyze(read_pbm_file(args.original), read_pbm_file(args.stego))
    if args.format == 'kv':
        print(report.to_kv(), file=out)
    else:
        print(report.to_text(), file=out)
    return 0


def cmd_bench(args, config, out, err):
    bench_conf = config['bench']
    reps = args.reps if args.reps is not None else bench_conf['repetitions']
    seed = args.seed if args.seed is not None else bench_conf['seed']

    results = bench.run_bench(
        args.corpus,
        repetitions=reps,
        seed=seed,
        stego_dir=args.stego_dir,
        high_priority=bench_conf.get('high_priority', False),
        progress=not args.no_progress,
    )

    csv_path = args.csv_out or bench_conf.get('csv_path')
    if csv_path:
        atomic_write(csv_path, bench.render_csv(results).encode('utf-8'))
        logger.info(f"Bench CSV written to {csv_path}")

    if args.format == 'csv':
        out.write(bench.render_csv(results))
    else:
        print(bench.render_text(results), file=out)
    return 0


def cmd_corpus(args, config, out, err):
    corpus_conf = config['corpus']
    width = args.width if args.width is not None else corpus_conf['width']
    height = args.height if args.height is not None else corpus_conf['height']
    count = args.count if args.count is not None else corpus_conf['count']
    seed = args.seed if args.seed is not None else corpus_conf['seed']

    paths = build_corpus(args.out, count=count, width=width, height=height, seed=seed, kind=args.kind)
    for path in paths:
        print(path, file=out)
    return 0


def cmd_tables(args, config, out, err):
    print(render_tables(), file=out)
    return 0


def cmd_selftest(args, config, out, err):
    return 0 if run_qa(err) else 1


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog='stego',
        description='Data hiding in binary (PBM) images by 2x2 block pattern coding.'
    )
    parser.add_argument('--config', default=DEFAULT_CONFIG_PATH, help='path to config.json')
    parser.add_argument('--log-level', help='override logging.level (DEBUG, INFO, ...)')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('capacity', help='print the block census and capacity of an image')
    p.add_argument('image')
    p.add_argument('--format', choices=('text', 'kv'), default='text')
    p.set_defaults(handler=cmd_capacity)

    p = sub.add_parser('embed', help='hide a payload file in a host image')
    p.add_argument('--host', required=True)
    p.add_argument('--payload', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--pbm-format', choices=PBM_FORMATS, type=str.upper)
    p.set_defaults(handler=cmd_embed)

    p = sub.add_parser('extract', help='recover the payload from a stego image')
    p.add_argument('--stego', required=True)
    p.add_argument('--out', required=True)
    p.set_defaults(handler=cmd_extract)

    p = sub.add_parser('analyze', help='distortion metrics between host and stego image')
    p.add_argument('--original', required=True)
    p.add_argument('--stego', required=True)
    p.add_argument('--format', choices=('text', 'kv'), default='text')
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser('bench', help='capacity/timing/PSNR table over a corpus of PBM hosts')
    p.add_argument('--corpus', required=True)
    p.add_argument('--reps', type=_positive_int)
    p.add_argument('--seed', type=_non_negative_int)
    p.add_argument('--format', choices=('text', 'csv'), default='text')
    p.add_argument('--csv-out')
    p.add_argument('--stego-dir')
    p.add_argument('--no-progress', action='store_true')
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser('corpus', help='generate synthetic host images')
    p.add_argument('--out', required=True)
    p.add_argument('--count', type=_positive_int)
    p.add_argument('--width', type=_positive_int)
    p.add_argument('--height', type=_positive_int)
    p.add_argument('--seed', type=_non_negative_int)
    p.add_argument('--kind', choices=CORPUS_KINDS, default='blocks')
    p.set_defaults(handler=cmd_corpus)

    p = sub.add_parser('tables', help='print both code tables')
    p.set_defaults(handler=cmd_tables)

    p = sub.add_parser('selftest', help='run the built-in self diagnostic')
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None, stdout=None, stderr=None):
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except StegoError as e:
        status(err, f"Failed to load config: {e}", Fore.RED)
        return 1
    if args.log_level:
        config['logging']['level'] = args.log_level.upper()
    LogManager.configure(config)

    try:
        return args.handler(args, config, out, err)
    except StegoError as e:
        logger.debug(f"{args.command} failed: {type(e).__name__}: {e}")
        status(err, f"ERROR ({type(e).__name__}): {e}", Fore.RED)
        return 1
    except OSError as e:
        status(err, f"ERROR: {e}", Fore.RED)
        return 1
