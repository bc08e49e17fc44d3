"""Regenerate the example CSVs in datasets/ and the golden fit report.

Usage: python scripts/make_datasets.py
"""

import csv
from pathlib import Path

import numpy as np

from pillaireg.cli import build_fit_report, to_machine
from pillaireg.data import ColumnSpec, load_csv

ROOT = Path(__file__).resolve().parents[1] / "datasets"


def write(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow([v if isinstance(v, str) else repr(float(v)) for v in r])


def main() -> None:
    ROOT.mkdir(exist_ok=True)
    rng = np.random.default_rng(50_3)
    n, k = 50, 3
    y = rng.standard_normal((n, k))
    dose = 0.4 * y[:, 0] - 0.2 * y[:, 2] + rng.standard_normal(n)
    write(
        ROOT / "synthetic_n50_k3.csv",
        ["sample", "dose", "marker_a", "marker_b", "marker_c"],
        [[f"s{i:02d}", dose[i], *y[i]] for i in range(n)],
    )

    rng = np.random.default_rng(30_1)
    u = rng.standard_normal(30)
    v = 0.6 * u + 0.8 * rng.standard_normal(30)
    write(ROOT / "paired_k1.csv", ["exposure", "response"], [[a, b] for a, b in zip(u, v)])

    rng = np.random.default_rng(200_8)
    y = rng.standard_normal((200, 8)) + 5.0
    x = rng.standard_normal(200)
    write(ROOT / "null_n200_k8.csv", ["x", *[f"y{j}" for j in range(8)]], [[x[i], *y[i]] for i in range(200)])

    ds = load_csv(ROOT / "synthetic_n50_k3.csv", ColumnSpec("dose"))
    (ROOT / "synthetic_n50_k3.fit.json").write_text(to_machine(build_fit_report(ds).to_dict()))


if __name__ == "__main__":
    main()
