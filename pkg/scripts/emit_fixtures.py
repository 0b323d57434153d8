"""Dump the brute-force oracle's tables (closed sets, levels, partitions, Δ values) as JSON."""
import argparse
from pathlib import Path

from deltaclosure.datasets import BUILTIN
from deltaclosure.oracle import emit_fixtures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", default="toy", choices=["toy", "counterexample"])
    ap.add_argument("--out", type=Path, default=Path("fixtures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / f"{args.dataset}.json"
    data = emit_fixtures(BUILTIN[args.dataset](), path)
    print(f"{path}: {len(data['closed'])} closed sets, {len(data['delta_values'])} itemsets with non-zero Δ")


if __name__ == "__main__":
    main()
