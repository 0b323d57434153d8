"""Write the locally reproducible datasets as FIMI files.

    python3 scripts/build_datasets.py --out data
"""
import argparse
from pathlib import Path

from deltaclosure.context import to_fimi
from deltaclosure.datasets import BUILTIN


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("data"))
    ap.add_argument("names", nargs="*", default=["toy", "car", "nursery", "chess_krk", "led7", "iris"])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.names:
        ctx = BUILTIN[name]()
        path = args.out / f"{name}.dat"
        path.write_text(to_fimi(ctx))
        (args.out / f"{name}.names").write_text("\n".join(ctx.attribute_names) + "\n")
        print(f"{path}: {ctx.n_objects} objects, {ctx.n_attributes} attributes")


if __name__ == "__main__":
    main()
