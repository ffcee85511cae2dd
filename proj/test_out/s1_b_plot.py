#!/usr/bin/env python3
"""Plots s1_b.csv: cost, distance to target and state columns."""
import csv
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = "s1_b.csv"
STATE_COLUMNS = ["theta"]

with open(CSV, newline="") as handle:
    rows = [r for r in csv.DictReader(handle) if not r["t"].startswith("#")]
t = [float(r["t"]) for r in rows]
fig, axes = plt.subplots(3, 1, figsize=(8, 10), sharex=True)
axes[0].plot(t, [float(r["cost"]) for r in rows])
axes[0].set_ylabel("cost")
axes[1].plot(t, [float(r["dist_to_target"]) for r in rows])
axes[1].set_ylabel("distance to target")
for name in STATE_COLUMNS:
    axes[2].plot(t, [float(r[name]) for r in rows], label=name)
axes[2].set_ylabel("state")
axes[2].set_xlabel("t")
axes[2].legend(ncol=4, fontsize=7)
fig.tight_layout()
out = CSV[:-4] + ".png" if CSV.endswith(".csv") else CSV + ".png"
fig.savefig(out, dpi=150)
print("wrote", out)
