import sys

from duffing_jump.cli import main

if __name__ == "__main__":
    sys.exit(main())
