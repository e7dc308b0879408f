"""Object, morphism and marking counts of frak_d(n), with timings and check results."""
import argparse
import time

from diagram_forge.reedy import check_degree_monotone, check_no_infinite_chains, frak_d, marked_generators


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-level", type=int, default=5)
    args = p.parse_args()
    print("n\tobjects\tnon-id\tmarked\tgenerators\tviolations\tseconds")
    for n in range(args.max_level + 1):
        start = time.perf_counter()
        D = frak_d(n)
        violations = len(check_degree_monotone(D)) + len(check_no_infinite_chains(D))
        marked = sum(1 for f in D.non_identities() if f in D.marked)
        elapsed = time.perf_counter() - start
        print(f"{n}\t{len(D.objects)}\t{len(D.non_identities())}\t{marked}\t"
              f"{len(marked_generators(D))}\t{violations}\t{elapsed:.3f}")


if __name__ == "__main__":
    main()
