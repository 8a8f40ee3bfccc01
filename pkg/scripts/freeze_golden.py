"""Regenerate the frozen lambda golden files from the naive expansion.

    python scripts/freeze_golden.py [--max-j 4] [--out src/hyperflow/golden]
"""

import argparse
from pathlib import Path

from hyperflow.oracle import naive_lambda
from hyperflow.poly import to_text

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "hyperflow" / "golden"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-j", type=int, default=4)
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for j in range(1, args.max_j + 1):
        path = args.out / f"lambda_{2 * j + 2}.txt"
        path.write_text(to_text(naive_lambda(j)) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
