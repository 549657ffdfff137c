#!/usr/bin/env python3
"""Run the full catalog verification sweep and write a json-lines report.

Example:
    python3 scripts/full_sweep.py --samples 5 --seed 1 --out sweep.jsonl
"""

import argparse
import sys

from qheine import cli, report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=5)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--precision", type=int, default=128)
    parser.add_argument("--tol", type=float, default=1e-20)
    parser.add_argument("--out", default="sweep.jsonl")
    args = parser.parse_args()

    config = cli.RunConfig(
        mode="verify",
        identities=["all"],
        samples=args.samples,
        seed=args.seed,
        precision=args.precision,
        tolerance=args.tol,
    )
    records, exit_code = cli.run_verify(config)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(report.render(records, "json-lines"))
    for record in records:
        if record.get("kind") == "summary":
            print(
                f"{record['identity']:30s} {record['passed']}/{record['cases']} "
                f"worst rel {record['worst_rel_error'][:12]}  "
                f"{record['wall_ms']:.0f} ms"
            )
        elif record.get("kind") == "total":
            print(f"total: {record['passed']}/{record['cases']} passed")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
