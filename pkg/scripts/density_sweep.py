"""Exhaustive small-n Turan density sequences for a few stock families.

For each family the script enumerates all admissible graphs up to --n-max
vertices, records pi_n with an extremal witness count, and writes one TSV
plus one JSON file per family into --out-dir.

    python scripts/density_sweep.py --n-max 5 --out-dir results/
"""

import argparse
import os
import sys

from turanlab import (
    EdgeTypeSet,
    ForbiddenFamily,
    Hypergraph,
    chain_graph,
    complete,
    density_sequence,
)
from turanlab.serialize import bound_to_obj, bound_to_tsv, dumps_canonical

FAMILIES = {
    "triangle": ForbiddenFamily(EdgeTypeSet((2,)), (complete(3, (2,)),)),
    "four_clique": ForbiddenFamily(EdgeTypeSet((2,)), (complete(4, (2,)),)),
    "mixed_pair": ForbiddenFamily(EdgeTypeSet((1, 2)), (complete(2, (1, 2)),)),
    "chain": ForbiddenFamily(EdgeTypeSet((1, 2)), (chain_graph(),)),
    "path3_induced": ForbiddenFamily(
        EdgeTypeSet((2,)), (Hypergraph(3, ((0, 1), (1, 2))),), mode="induced"
    ),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-max", type=int, default=5)
    parser.add_argument("--out-dir", default="density_results")
    parser.add_argument(
        "--family", choices=sorted(FAMILIES), action="append",
        help="restrict to named families (default: all)",
    )
    args = parser.parse_args(argv)

    os.makedirs(args.out_dir, exist_ok=True)
    names = args.family or sorted(FAMILIES)
    for name in names:
        family = FAMILIES[name]

        def progress(count):
            print(f"\r{name}: {count} graphs", end="", file=sys.stderr)

        bound = density_sequence(family, args.n_max, progress=progress)
        print(file=sys.stderr)
        tsv_path = os.path.join(args.out_dir, f"{name}.tsv")
        json_path = os.path.join(args.out_dir, f"{name}.json")
        with open(tsv_path, "w") as fh:
            fh.write(bound_to_tsv(bound))
        with open(json_path, "w") as fh:
            fh.write(dumps_canonical(bound_to_obj(bound)) + "\n")
        last = bound.records[-1]
        print(
            f"{name}: pi_{last.n} = {last.pi_n} "
            f"({last.graphs_enumerated} graphs, {len(last.extremal)} extremal)"
        )
    print(f"wrote {args.out_dir}/", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
