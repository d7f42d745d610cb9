#!/usr/bin/env python3
"""Plot BER/FER curves from one or more sweep CSV files.

Usage: python3 docs/plot_sweep.py sweep.csv [more.csv ...] [-o out.png]
"""

import argparse
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    series = defaultdict(list)  # decoder -> [(snr, ber, fer, fer_lo, fer_hi)]
    with open(path, newline="") as f:
        rows = csv.DictReader(r for r in f if not r.startswith("#"))
        for row in rows:
            series[row["decoder"]].append(
                (
                    float(row["snr_db"]),
                    float(row["ber"]),
                    float(row["fer"]),
                    float(row["fer_ci_lo"]),
                    float(row["fer_ci_hi"]),
                )
            )
    for points in series.values():
        points.sort()
    return series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+")
    ap.add_argument("-o", "--out", default="sweep.png")
    args = ap.parse_args()

    fig, (ax_ber, ax_fer) = plt.subplots(1, 2, figsize=(11, 4.5), sharex=True)
    for path in args.csv:
        for decoder, pts in sorted(load(path).items()):
            snr = [p[0] for p in pts]
            label = decoder if len(args.csv) == 1 else f"{path}:{decoder}"
            ax_ber.semilogy(snr, [max(p[1], 1e-7) for p in pts], "o-", label=label)
            ax_fer.semilogy(snr, [max(p[2], 1e-7) for p in pts], "o-", label=label)
            ax_fer.fill_between(
                snr,
                [max(p[3], 1e-7) for p in pts],
                [max(p[4], 1e-7) for p in pts],
                alpha=0.15,
            )
    for ax, title in ((ax_ber, "BER"), (ax_fer, "FER")):
        ax.set_xlabel("SNR (dB)")
        ax.set_title(title)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    sys.exit(main())
