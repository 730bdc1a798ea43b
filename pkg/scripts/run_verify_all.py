"""Run every shipped certificate and write them to a JSON file.

    python scripts/run_verify_all.py --out certificates.json --seed 0
"""

import argparse
import sys

from venlab.cli import run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="certificates.json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-iter", type=int, default=64)
    args = ap.parse_args()
    return run(["verify-all", "--json", args.out, "--seed", str(args.seed),
                "--max-iter", str(args.max_iter)])


if __name__ == "__main__":
    sys.exit(main())
