#!/usr/bin/env python3
"""Capped weight sensitivity as the truncation window scales up."""
import sys

from truncsm.cli import main

sys.exit(main([
    "--experiment", "capped-scaling",
    "--seeds", ",".join(str(s) for s in range(20)),
    "--n", "1600",
    "--b-grid", "0.5,1,2,4,16",
    "--cap", "0.1,10,100",
    "--out", "results/capped_scaling.csv",
] + sys.argv[1:]))
