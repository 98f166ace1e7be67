#!/usr/bin/env python3
"""Run the full verification battery over a range of field sizes.

For every valid (n, k) with n in the requested list (k != n/2; the k and
n - k runs are both kept as an extra symmetry check), this invokes the
`verify` subcommand and tabulates the exit status:

  0 match, 2 mismatch, 3 match-except-flagged-errata.

Run: python scripts/run_verify_battery.py [--n 4 6 8] [--out DIR]
Note: each n = 8 run includes the brute-force correlation sweep and takes
about half a minute; the full default battery is a few minutes of work.
"""

import argparse
import sys
import tempfile
import time
from pathlib import Path

from kasamilab.cli import main as cli_main

STATUS = {0: "match", 2: "MISMATCH", 3: "flagged-erratum"}


def run_battery(ns, out_base):
    rows = []
    worst = 0
    for n in ns:
        for k in range(1, n):
            if k == n // 2:
                continue
            outdir = Path(out_base) / f"n{n}k{k}"
            t0 = time.perf_counter()
            code = cli_main(["verify", "--n", str(n), "--k", str(k),
                             "--out", str(outdir)])
            elapsed = time.perf_counter() - t0
            rows.append((n, k, code, elapsed))
            worst = max(worst, code)
            print(f"  verify n={n} k={k}: exit {code} "
                  f"({STATUS.get(code, 'usage-error')}) in {elapsed:.1f}s")
    return rows, worst


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[4, 6, 8])
    parser.add_argument("--out", default=None,
                        help="directory for per-run artifacts (default: temp)")
    args = parser.parse_args(argv)

    out_base = args.out or tempfile.mkdtemp(prefix="verify_battery_")
    print("=" * 64)
    print(f"verification battery: n in {args.n}, artifacts in {out_base}")
    print("=" * 64)
    rows, worst = run_battery(args.n, out_base)

    print("-" * 64)
    matches = sum(1 for *_, c, _e in rows if c == 0)
    flagged = sum(1 for *_, c, _e in rows if c == 3)
    bad = sum(1 for *_, c, _e in rows if c not in (0, 3))
    print(f"{len(rows)} runs: {matches} match, {flagged} flagged-erratum, "
          f"{bad} mismatch/error")
    for n, k, code, _ in rows:
        if code not in (0, 3):
            print(f"  ATTENTION: n={n} k={k} exited {code}")
    # Flagged errata are expected (known misprints in the tabulated forms);
    # only a genuine mismatch or usage error fails the battery.
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
