"""Regenerate the committed CSV fixtures under tests/data/.

Run from the repository root:  python3 tools/gen_fixtures.py
The outputs are deterministic; commit them after regenerating.
"""

import csv
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from fpclogit.cli import export_curves  # noqa: E402
from helpers import two_class_curves  # noqa: E402


def write_covariates(path, names, columns, labels):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id"] + list(names))
        for i, label in enumerate(labels):
            writer.writerow([label] + [format(col[i], ".17g") for col in columns])


def synthetic(outdir: Path):
    argvals, x, y = two_class_curves()
    rng = np.random.default_rng(777)
    shift = rng.normal(size=y.size)
    labels = [f"s{i + 1:03d}" for i in range(y.size)]
    outdir.mkdir(parents=True, exist_ok=True)
    export_curves(outdir / "curves.csv", argvals, x, labels)
    write_covariates(outdir / "covariates.csv", ["group", "shift"], [y, shift], labels)


def noise(outdir: Path):
    rng = np.random.default_rng(1)
    n, m = 120, 15
    argvals = np.linspace(0.0, 1.0, m)
    x = np.array(
        [
            rng.normal(0, 0.4) * np.sin(2 * np.pi * argvals)
            + rng.normal(0, 0.4) * np.cos(2 * np.pi * argvals)
            + rng.normal(0, 0.3) * argvals
            + rng.normal(0, 0.1, m)
            for _ in range(n)
        ]
    )
    y = (rng.random(n) < 0.5).astype(float)
    junk = rng.normal(size=n)
    labels = [f"n{i + 1:03d}" for i in range(n)]
    outdir.mkdir(parents=True, exist_ok=True)
    export_curves(outdir / "curves.csv", argvals, x, labels)
    write_covariates(outdir / "covariates.csv", ["resp", "junk"], [y, junk], labels)


if __name__ == "__main__":
    synthetic(ROOT / "tests" / "data" / "synthetic")
    noise(ROOT / "tests" / "data" / "noise")
    print("fixtures written under tests/data/")
