"""Convert a LUCS-KDD DN ``.num`` file to 0-based FIMI, dropping the class items.

LUCS-KDD files number items from 1 and append the class label as the highest
item(s) of each record.  Class items are given either as an explicit count
(``--classes 2`` removes the two largest item ids) or a list of ids.

    python3 scripts/lucs_to_fimi.py mushroom.D90.N8124.C2.num data/mushroom.dat --classes 2
"""
import argparse
from pathlib import Path


def convert(text: str, classes: int = 0, class_ids: set[int] | None = None) -> str:
    records = [[int(t) for t in line.split()] for line in text.splitlines() if line.strip()]
    top = max((max(r) for r in records if r), default=0)
    drop = set(class_ids or ()) | set(range(top - classes + 1, top + 1)) if classes else set(class_ids or ())
    out = []
    for r in records:
        out.append(" ".join(str(i - 1) for i in sorted(set(r)) if i not in drop))
    return "\n".join(out) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("src", type=Path)
    ap.add_argument("dst", type=Path)
    ap.add_argument("--classes", type=int, default=0, help="number of trailing class items to drop")
    ap.add_argument("--class-ids", type=lambda s: {int(t) for t in s.split(",")}, default=None)
    args = ap.parse_args()
    args.dst.parent.mkdir(parents=True, exist_ok=True)
    args.dst.write_text(convert(args.src.read_text(), args.classes, args.class_ids))
    print(f"wrote {args.dst}")


if __name__ == "__main__":
    main()
