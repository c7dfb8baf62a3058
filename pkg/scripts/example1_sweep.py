"""Deficit and curvature criteria along example 1 (Werner-like mixture with |00>)."""
import argparse

import numpy as np

from deficitx import one_way_deficit
from deficitx.families import example1, example1_boundaries, example1_closed_deficit

from _common import pyplot, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=201)
    ap.add_argument("--out", default="results/example1_sweep")
    args = ap.parse_args()

    rows = []
    for q in np.linspace(0, 1, args.points):
        r = one_way_deficit(example1(q))
        closed, _ = example1_closed_deficit(q)
        rows.append((q, r.deficit, closed, r.branch.value, r.decision.h0, r.decision.h_pi2_prime))
    write_csv(args.out + ".csv", ("q", "deficit", "closed_form", "branch", "h0", "h_pi2_prime"), rows)
    lo, hi = example1_boundaries()
    print(f"interior branch on ({lo:.10f}, {hi:.10f})")

    plt = pyplot()
    if plt is None:
        return
    q, d = np.array([r[0] for r in rows]), np.array([r[1] for r in rows])
    h0 = np.array([r[4] for r in rows])
    hp = np.array([r[5] for r in rows])
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(q, np.clip(h0, -10, 10), label="h0")
    ax1.plot(q, hp, label="h_pi2_prime")
    ax1.axhline(0, color="k", lw=0.5)
    ax1.set_xlabel("q")
    ax1.legend()
    ax2.plot(q, d)
    for b in (lo, hi):
        ax2.axvline(b, ls="--", color="grey")
    ax2.set_xlabel("q")
    ax2.set_ylabel("one-way deficit (bits)")
    fig.tight_layout()
    fig.savefig(args.out + ".png", dpi=150)
    print(f"wrote {args.out}.png")


if __name__ == "__main__":
    main()
