#!/usr/bin/env python3
"""Monte Carlo check of the integration-by-parts identity behind the objective."""
import sys

from truncsm.cli import main

sys.exit(main([
    "--experiment", "identity-check",
    "--seeds", ",".join(str(s) for s in range(10)),
    "--n", "100000",
    "--out", "results/identity_check.csv",
] + sys.argv[1:]))
