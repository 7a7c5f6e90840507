#!/usr/bin/env python3
"""G(n,p) sweep around the connectivity threshold log(n)/n.

Thin wrapper over ``spechom sweep`` with the defaults used for the
acceptance run (n=24, 20 seeds, p from 0.5 to 3 multiples of the threshold).
"""

import argparse

from spechom.cli import main as cli_main


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=24)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--k", default="3")
    ap.add_argument("--multiples", default="0.5,1,1.5,2,2.5,3")
    ap.add_argument("--node-budget", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--format", choices=("csv", "json", "markdown"), default="csv")
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    cmd = ["sweep", "--gen", f"er:n={args.n},p=0.1", "--vary", f"p=log:{args.multiples}",
           "--seeds", str(args.seeds), "--k", args.k, "--seed", str(args.seed),
           "--node-budget", str(args.node_budget), "--jobs", str(args.jobs),
           "--format", args.format]
    if args.out:
        cmd += ["--out", args.out]
    return cli_main(cmd)


if __name__ == "__main__":
    raise SystemExit(main())
