"""Run the acceptance suite and print one pass/fail line per criterion.

Extra arguments are handed to pytest, e.g. ``-k "c1 or c2"``.
"""
import sys
from pathlib import Path

import pytest

SUITE = Path(__file__).resolve().parents[1] / "tests" / "test_acceptance.py"


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    return pytest.main(["-q", "-p", "no:cacheprovider", str(SUITE), *argv])


if __name__ == "__main__":
    sys.exit(main())
