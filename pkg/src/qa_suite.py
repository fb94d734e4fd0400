import sys
import numpy as np
from colorama import Fore, Style

from src.blockgrid.pattern import Pattern
from src.codec.tables import CodeTables, TABLE_ONE, TABLE_TWO, encode3, decode3
from src.engine.stego import embed_bits, extract_bits, embed_payload, extract_payload, capacity
from src.bitmap.image import BinaryImage
from src.bitmap.pbm import load_pbm, save_pbm
from src.bench.corpus import mixed_block_image
from src.utils.errors import StegoError


def check_tables():
    # Construction re-validates bijectivity and parity separation
    CodeTables(TABLE_ONE, TABLE_TWO)
    pure = {Pattern.from_string("0000"), Pattern.from_string("1111")}
    produced = set(TABLE_ONE.values()) | set(TABLE_TWO.values())
    return not (pure & produced)


def check_worked_example():
    stego_block = encode3(0b011)
    if str(stego_block) != "0111" or decode3(stego_block) != 0b011:
        return False
    # Single 2-black host block "0011"
    image = BinaryImage.from_rows(["00", "11"])
    stego = embed_bits(image, "011")
    return stego.rows() == ["01", "11"] and str(extract_bits(stego, 3)) == "011"


def check_round_trip():
    rng = np.random.default_rng(2024)
    host = mixed_block_image(64, 48, 0.3, rng)
    payload = rng.integers(0, 256, size=capacity(host).net_bytes, dtype=np.uint8).tobytes()
    stego = load_pbm(save_pbm(embed_payload(host, payload), 'P4'))
    return extract_payload(stego) == payload


CHECKS = [
    ("Code tables consistent", check_tables),
    ("Worked example 011 -> 0111", check_worked_example),
    ("Framed round trip via P4", check_round_trip),
]


def run_qa(stream=None):
    stream = stream or sys.stderr
    print(f"{Fore.CYAN}[*] Running Self-Diagnostic QA Suite...{Style.RESET_ALL}", file=stream)
    issues = []

    for name, check in CHECKS:
        try:
            ok = check()
        except (StegoError, ValueError) as e:
            ok = False
            name = f"{name} ({e})"
        if ok:
            print(f"{Fore.GREEN}    [PASS] {name}{Style.RESET_ALL}", file=stream)
        else:
            issues.append(f"[X] {name}")

    if not issues:
        print(f"{Fore.GREEN}[OK] QA PASSED: Codec Ready.{Style.RESET_ALL}", file=stream)
        return True
    for i in issues:
        print(f"{Fore.RED}{i}{Style.RESET_ALL}", file=stream)
    return False
