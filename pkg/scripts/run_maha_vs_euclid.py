#!/usr/bin/env python3
"""Euclidean vs Mahalanobis boundary-distance weight on elliptical windows."""
import sys

from truncsm.cli import main

sys.exit(main([
    "--experiment", "maha-vs-euclid",
    "--seeds", ",".join(str(s) for s in range(50)),
    "--n", "250,1000,4000",
    "--sigma", "0.3,0.9",
    "--out", "results/maha_vs_euclid.csv",
] + sys.argv[1:]))
