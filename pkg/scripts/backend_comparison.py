#!/usr/bin/env python3
"""Time the solver pipeline against exact subset search on shared instances.

Every drawn automaton is answered by both paths; any length disagreement is
a bug and exits nonzero. Means are per-instance wall-clock seconds.

    python scripts/backend_comparison.py --n-list 6-14 --samples 50
"""

import argparse
import sys

from cswsat.cli import _parse_ns, comparison_csv, compare_backends
from cswsat.solver import backend_from_spec

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-list", dest="ns", type=_parse_ns, default=list(range(6, 15)))
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--backend", default="builtin")
    parser.add_argument("--output", "-o", default=None)
    args = parser.parse_args()

    rows = compare_backends(
        args.ns,
        samples=args.samples,
        seed=args.seed,
        undefined_count=args.k,
        backend=backend_from_spec(args.backend),
    )
    text = comparison_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    bad = [r for r in rows if r.mismatches]
    for r in bad:
        print(f"n={r.n}: {r.mismatches} disagreeing instances", file=sys.stderr)
    sys.exit(3 if bad else 0)
