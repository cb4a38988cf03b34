#!/usr/bin/env python3
"""Plot CSV emitted by the silico CLI (equilibrium, asym, simulate).

    silico equilibrium --a 2 --b 0 --family power_law --format csv --output F.csv
    python3 docs/plot_csv.py F.csv --out F.png

The first line of every CSV is "# config: {...}"; it becomes the title.
"""
import argparse
import json

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

PLOTS = {
    ("x", "value", "tail_bound", "terms_used"): ("x", ["value"], "loglog"),
    ("x", "direct", "expansion", "residual"): ("x", ["direct", "expansion"], "loglog"),
    ("t", "x", "total_cells", "total_load", "rhs_norm"): ("t", ["x", "total_cells", "total_load"], "linear"),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("--out", default="plot.png")
    args = ap.parse_args()

    with open(args.csv) as f:
        header = f.readline()
    config = json.loads(header.split(":", 1)[1]) if header.startswith("# config:") else {}
    df = pd.read_csv(args.csv, comment="#")
    key = tuple(df.columns)
    if key not in PLOTS:
        raise SystemExit(f"no plot layout for columns {key}")
    xcol, ycols, scale = PLOTS[key]

    fig, axes = plt.subplots(1, 2 if "residual" in df or "rhs_norm" in df else 1, figsize=(10, 4), squeeze=False)
    ax = axes[0][0]
    for c in ycols:
        ax.plot(df[xcol], df[c], label=c)
    if scale == "loglog":
        ax.set_xscale("log")
    ax.set_xlabel(xcol)
    ax.legend()
    if axes.shape[1] == 2:
        extra = "residual" if "residual" in df else "rhs_norm"
        draw = axes[0][1].loglog if scale == "loglog" else axes[0][1].semilogy
        draw(df[xcol], df[extra].abs(), marker="o")
        axes[0][1].set_xlabel(xcol)
        axes[0][1].set_ylabel(f"|{extra}|")
    fig.suptitle(f"{config.get('verb', '')} {json.dumps(config.get('family', {}))}", fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)


if __name__ == "__main__":
    main()
