#!/usr/bin/env python3
"""City point-pattern experiment.

With --points-file and --domain-file this runs the real-data two-component
fit (see README for where to fetch the crime data and the city boundary).
Without them it runs the synthetic western-truncation stand-in.
"""
import sys

from truncsm.cli import main

sys.exit(main([
    "--experiment", "chicago",
    "--seeds", ",".join(str(s) for s in range(50)),
    "--n", "1000",
    "--out", "results/chicago.csv",
] + sys.argv[1:]))
