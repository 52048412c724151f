"""Plot the kite solution curve f = 0 and the pole curve of G4 (needs matplotlib)."""

import argparse

from vortex_atlas import kite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=float, default=3.0)
    ap.add_argument("--out", default="kite_curves.png")
    args = ap.parse_args()
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = kite.curve_samples(bounds=(-args.bound, args.bound))
    fig, ax = plt.subplots(figsize=(6, 6))
    for name, style in (("f-zero-upper", "b."), ("f-zero-lower", "g."), ("pole", "r,")):
        pts = [(r["k"], r["l"]) for r in rows if r["curve"] == name]
        if pts:
            ax.plot(*zip(*pts), style, ms=1, label=name)
    for p in kite.landmarks():
        if abs(p.k) <= args.bound and abs(p.l) <= args.bound:
            ax.annotate(p.name, (p.k, p.l))
    ax.plot([-args.bound, args.bound], [args.bound, -args.bound], "k:", lw=0.5)
    ax.set(xlabel="k", ylabel="l", xlim=(-args.bound, args.bound), ylim=(-args.bound, args.bound))
    ax.legend(loc="lower left")
    fig.savefig(args.out, dpi=150)
    print(args.out)


if __name__ == "__main__":
    main()
