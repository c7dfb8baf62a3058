"""Deficit of a fixed X state under local phase damping, in both damping modes."""
import argparse

import numpy as np

from deficitx.channels import MODES, deficit_trajectory, detect_branch_transitions
from deficitx.state import BlochX

from _common import pyplot, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--state", type=float, nargs=5, default=(0.45, 0.32, 0.43, 0.09, 0.15), metavar=("X", "Y", "T1", "T2", "T3"))
    ap.add_argument("--points", type=int, default=101)
    ap.add_argument("--out", default="results/decoherence")
    args = ap.parse_args()

    s = BlochX(*args.state)
    gammas = np.linspace(0, 1, args.points)
    curves = {}
    rows = []
    for mode in MODES:
        traj = deficit_trajectory(s, gammas, mode)
        curves[mode] = traj
        rows += [(mode, p.gamma, p.deficit, p.branch.value, p.h0, p.h_pi2_prime) for p in traj]
        found = detect_branch_transitions(traj, s, mode, tol=1e-10)
        print(f"{mode}: transitions at " + ", ".join(f"{g:.7f}" for g in found))
    write_csv(args.out + ".csv", ("mode", "gamma", "deficit", "branch", "h0", "h_pi2_prime"), rows)

    plt = pyplot()
    if plt is None:
        return
    fig, ax = plt.subplots(figsize=(5, 4))
    for mode, traj in curves.items():
        ax.plot([p.gamma for p in traj], [p.deficit for p in traj], label=mode)
    ax.set_xlabel("gamma")
    ax.set_ylabel("one-way deficit (bits)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out + ".png", dpi=150)
    print(f"wrote {args.out}.png")


if __name__ == "__main__":
    main()
