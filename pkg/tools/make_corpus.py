"""Regenerate the default benchmark corpus (six 1024x768 P4 hosts) into ./corpus."""

import os
import sys
from colorama import init, Fore, Style

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.bench.corpus import build_corpus
from src.utils.config import load_config

init()


def make_corpus(out_dir='corpus'):
    conf = load_config()['corpus']
    print(f"{Fore.YELLOW}Generating {conf['count']} hosts into {out_dir}...{Style.RESET_ALL}")
    paths = build_corpus(out_dir, count=conf['count'], width=conf['width'],
                         height=conf['height'], seed=conf['seed'])
    for path in paths:
        print(f"  {path}")
    print(f"{Fore.GREEN}Corpus ready.{Style.RESET_ALL}")


if __name__ == "__main__":
    make_corpus(sys.argv[1] if len(sys.argv) > 1 else 'corpus')
