"""Deficit along example 2 against both closed-form branches."""
import argparse

import numpy as np

from deficitx import one_way_deficit
from deficitx.families import example2, example2_branch_formulas

from _common import pyplot, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=201)
    ap.add_argument("--out", default="results/example2_sweep")
    args = ap.parse_args()

    rows = []
    for a in np.linspace(0, 1, args.points):
        r = one_way_deficit(example2(a))
        zero, half = example2_branch_formulas(a)
        rows.append((a, r.deficit, zero, half, r.branch.value, r.decision.h0, r.decision.h_pi2_prime))
    write_csv(args.out + ".csv", ("alpha", "deficit", "theta0_formula", "pi2_formula", "branch", "h0", "h_pi2_prime"), rows)
    worst = max(abs(r[1] - min(r[2], r[3])) for r in rows)
    print(f"max |deficit - min(branch formulas)| = {worst:.2e}")

    plt = pyplot()
    if plt is None:
        return
    a = np.array([r[0] for r in rows])
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(a, [r[2] for r in rows], ":", label="theta = 0 branch")
    ax.plot(a, [r[3] for r in rows], ":", label="theta = pi/2 branch")
    ax.plot(a, [r[1] for r in rows], label="deficit")
    ax.axvline(1 / 3, ls="--", color="grey")
    ax.set_xlabel("alpha")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out + ".png", dpi=150)
    print(f"wrote {args.out}.png")


if __name__ == "__main__":
    main()
