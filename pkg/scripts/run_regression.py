"""Dataset regression: concept counts, closure index and stage timings per dataset.

Datasets come from ``--data`` (FIMI/CSV files named after the dataset) when
present, otherwise from the built-in generators.  Prints a table and, with
``--out``, writes it as CSV together with each dataset's level distribution SVG.

    python3 scripts/run_regression.py --out results/regression
"""
import argparse
import csv
import time
from pathlib import Path

from deltaclosure.context import load_context
from deltaclosure.datasets import BUILTIN
from deltaclosure.delta import annotate_all, level_distribution
from deltaclosure.report import render_distribution_svg

EXPECTED = {
    # name: (concepts with non-empty extent, closure index)
    "nursery": (115_200, 8),
    "chess_krk": (84_636, None),
    "mushroom": (181_945, None),
    "adult": (359_141, None),
    "car": (None, 6),
    "iris": (None, 4),
    "led7": (None, 7),
}


def load(name, data_dir):
    if data_dir is not None:
        for suffix in (".dat", ".csv"):
            p = data_dir / f"{name}{suffix}"
            if p.exists():
                return load_context(p), str(p)
    if name in BUILTIN:
        return BUILTIN[name](), "generated"
    return None, "missing"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", default=list(EXPECTED))
    ap.add_argument("--data", type=Path)
    ap.add_argument("--out", type=Path)
    ap.add_argument("--bins", type=int, default=10)
    args = ap.parse_args()

    rows = []
    for name in args.names:
        ctx, source = load(name, args.data)
        want_c, want_ci = EXPECTED.get(name, (None, None))
        if ctx is None:
            rows.append(dict(dataset=name, source=source, objects="", attributes="", concepts="", expected_concepts=want_c,
                             ci="", expected_ci=want_ci, concepts_ms="", levels_ms="", delta_ms="", total_s=""))
            print(f"{name:10s} missing")
            continue
        timings = {}
        t0 = time.perf_counter()
        g, s, ann = annotate_all(ctx, timings=timings)
        total = time.perf_counter() - t0
        row = dict(dataset=name, source=source, objects=ctx.n_objects, attributes=ctx.n_attributes,
                   concepts=g.n_nonempty, expected_concepts=want_c, ci=s.closure_index, expected_ci=want_ci,
                   concepts_ms=round(timings["concepts"] * 1000), levels_ms=round(timings["levels"] * 1000),
                   delta_ms=round(timings["delta"] * 1000), total_s=round(total, 2))
        rows.append(row)
        print(f"{name:10s} {ctx.n_objects:6d} x {ctx.n_attributes:3d}  concepts {g.n_nonempty:7d} "
              f"(expected {want_c})  CI {s.closure_index} (expected {want_ci})  {total:.1f} s")
        if args.out is not None:
            args.out.mkdir(parents=True, exist_ok=True)
            svg = render_distribution_svg(level_distribution(ann, n_bins=args.bins), title=name)
            (args.out / f"{name}_distribution.svg").write_text(svg)

    if args.out is not None:
        with open(args.out / "regression.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    main()
