import sys
from colorama import init

from src.cli.commands import main

init()  # Colorama

if __name__ == "__main__":
    sys.exit(main())
