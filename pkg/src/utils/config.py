"""
Configuration loading.
Defaults are merged with config.json, then environment variables
(optionally from a .env file) override individual keys.
"""

import copy
import json
import logging
import os
from dotenv import load_dotenv

from src.utils.errors import ConfigError

logger = logging.getLogger("stego.config")

DEFAULT_CONFIG_PATH = 'config.json'

DEFAULT_CONFIG = {
    "logging": {
        "level": "INFO",
        "log_file": "logs/stego.log",
        "console": True
    },
    "pbm": {
        "default_format": "P4"
    },
    "bench": {
        "repetitions": 10,
        "seed": 20240601,
        "high_priority": True,
        "csv_path": ""
    },
    "corpus": {
        "width": 1024,
        "height": 768,
        "count": 6,
        "seed": 7
    }
}

PBM_FORMATS = ('P1', 'P4')


def _deep_merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None or raw == '':
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


def load_config(path=DEFAULT_CONFIG_PATH):
    """Load config.json on top of the defaults and apply env overrides."""
    config = copy.deepcopy(DEFAULT_CONFIG)

    if path and os.path.exists(path):
        try:
            with open(path, 'r') as f:
                config = _deep_merge(config, json.load(f))
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config JSON malformed ({path}): {e}")
    else:
        logger.warning(f"Config file not found ({path}), using defaults")

    # Load environment variables from .env file
    load_dotenv()

    if os.environ.get('STEGO_LOG_LEVEL'):
        config['logging']['level'] = os.environ['STEGO_LOG_LEVEL'].upper()
    if os.environ.get('STEGO_LOG_FILE') is not None:
        config['logging']['log_file'] = os.environ['STEGO_LOG_FILE']
    if os.environ.get('STEGO_PBM_FORMAT'):
        config['pbm']['default_format'] = os.environ['STEGO_PBM_FORMAT'].upper()

    seed = _env_int('STEGO_BENCH_SEED')
    if seed is not None:
        config['bench']['seed'] = seed
    reps = _env_int('STEGO_BENCH_REPS')
    if reps is not None:
        config['bench']['repetitions'] = reps

    validate_config(config)
    return config


def validate_config(config):
    fmt = config['pbm'].get('default_format')
    if fmt not in PBM_FORMATS:
        raise ConfigError(f"pbm.default_format must be one of {PBM_FORMATS}, got {fmt!r}")

    reps = config['bench'].get('repetitions')
    if not isinstance(reps, int) or reps < 1:
        raise ConfigError(f"bench.repetitions must be a positive integer, got {reps!r}")

    seed = config['bench'].get('seed')
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"bench.seed must be a non-negative integer, got {seed!r}")

    for key in ('width', 'height', 'count'):
        value = config['corpus'].get(key)
        if not isinstance(value, int) or value < 1:
            raise ConfigError(f"corpus.{key} must be a positive integer, got {value!r}")
    seed = config['corpus'].get('seed')
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"corpus.seed must be a non-negative integer, got {seed!r}")
