"""Count pairs (object, arrow) without a cocartesian lift along D(R) -> R."""
import argparse
from collections import Counter

from diagram_forge.builtins import load_reedy
from diagram_forge.reedy import check_opfibration, d_construction


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("reedy", nargs="*", default=["delta:1", "delta:2", "delta:3", "span_reedy"],
                   help="Reedy selectors (delta:N, discrete:a,b, span_reedy or a JSON path)")
    p.add_argument("--show", type=int, default=3, help="violations to print per category")
    args = p.parse_args()
    for sel in args.reedy:
        R = load_reedy(sel)
        D = d_construction(R)
        report = check_opfibration(D, R)
        pairs = sum(len(R.base.out_of(R.base.target(D.morphisms[D.identity(x)].key[0]))) for x in D.objects)
        by_source = Counter(v.where.split(" over ")[0] for v in report)
        print(f"{sel}: D(R) has {len(D.objects)} objects; {len(report)}/{pairs} pairs lack a cocartesian lift")
        for v in report[: args.show]:
            print(f"  {v}")
        if by_source:
            print("  worst objects: " + ", ".join(f"{k} ({c})" for k, c in by_source.most_common(3)))


if __name__ == "__main__":
    main()
