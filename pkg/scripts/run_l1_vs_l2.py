#!/usr/bin/env python3
"""L1 vs Euclidean weight metric on the hemi-l1-ball across dimensions."""
import sys

from truncsm.cli import main

sys.exit(main([
    "--experiment", "l1-vs-l2",
    "--seeds", ",".join(str(s) for s in range(50)),
    "--n", "150",
    "--d-grid", "2,4,8",
    "--out", "results/l1_vs_l2.csv",
] + sys.argv[1:]))
