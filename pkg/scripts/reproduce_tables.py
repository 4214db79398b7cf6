"""Reproduce the builtin study tables on all three hardware sets.

Runs every decision and search program under both clock conventions, prints
per-cell deviations from the reference rows, and reports which convention
matches.  Equivalent to `spinqc tables --sets Ideal,NMR,NMR-Ideal`.

    python3 scripts/reproduce_tables.py [--json] [--out FILE]
"""
import sys

from spinqc.cli import main

if __name__ == "__main__":
    argv = ["tables", "--sets", "Ideal,NMR,NMR-Ideal"] + sys.argv[1:]
    sys.exit(main(argv))
