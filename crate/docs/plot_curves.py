"""Plot slice or sweep CSVs written by `bic gauss figure`.

    python docs/plot_curves.py curves/fig3_beta0.1.csv curves/fig3_beta0.9.csv
    python docs/plot_curves.py curves/fig4.csv -o fig4.png
"""

import argparse
import csv

import matplotlib.pyplot as plt


def read(path):
    with open(path) as f:
        rows = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(rows))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("files", nargs="+")
    ap.add_argument("-o", "--out")
    args = ap.parse_args()

    fig, ax = plt.subplots()
    for path in args.files:
        rows = read(path)
        if "R1" in rows[0]:
            r1 = [float(r["R1"]) for r in rows]
            ax.plot(r1, [float(r["R2_outer"]) for r in rows], "--", label=f"{path} outer")
            inner = [(x, float(r["R2_inner"])) for x, r in zip(r1, rows) if r["R2_inner"] != "nan"]
            ax.plot(*zip(*inner), label=f"{path} inner")
            ax.set_xlabel("R1 [bits]")
            ax.set_ylabel("R2 [bits]")
        else:
            a = [float(r["a"]) for r in rows]
            for col in ("Rs1", "Rs2", "Ro"):
                ax.plot(a, [float(r[col]) for r in rows], label=col)
            ax.set_xlabel("a")
            ax.set_ylabel("sum rate [bits]")
    ax.legend(fontsize="small")
    if args.out:
        fig.savefig(args.out, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
