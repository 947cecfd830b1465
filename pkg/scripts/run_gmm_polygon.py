#!/usr/bin/env python3
"""Four-center truncated mixture on the polygon window, full seed sweep."""
import sys

from truncsm.cli import main

sys.exit(main([
    "--experiment", "gmm-polygon",
    "--seeds", ",".join(str(s) for s in range(10)),
    "--n", "10000",
    "--restarts", "10",
    "--particles", "500000",
    "--out", "results/gmm_polygon.csv",
] + sys.argv[1:]))
