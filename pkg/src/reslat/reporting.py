"""Report artifacts for the lambda-equation probe.

Each probed chain gets one row: its ordinal-sum index next to the
verdicts of lambda_1..lambda_4 and the positions where the verdict
disagrees with "index <= n".  Rows are written as CSV and rendered to
a PNG grid so mismatches are visible at a glance.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import product as iproduct
from pathlib import Path
from typing import Optional, Sequence

from . import terms
from .builders import godel, lukasiewicz, ordinal_sum
from .decomposition import sum_decompose
from .finalg import FinAlg

__all__ = [
    "LAMBDA_RANGE",
    "LambdaProbeRow",
    "default_chain_suite",
    "lambda_probe",
    "write_lambda_csv",
    "render_lambda_png",
    "lambda_report",
]

LAMBDA_RANGE = (1, 2, 3, 4)


@dataclass(frozen=True)
class LambdaProbeRow:
    name: str
    size: int
    index: int
    verdicts: tuple[bool, ...]  # lambda_n for n in LAMBDA_RANGE
    mismatches: tuple[int, ...]  # n where (index <= n) != verdicts[n]


def default_chain_suite() -> list[FinAlg]:
    """Lukasiewicz and Godel chains plus all ordinal sums of two or
    three components from {2, L2, L3}."""
    chains = [lukasiewicz(n) for n in (1, 2, 3, 4)]
    chains += [godel(k) for k in (2, 3, 4)]
    parts = {"2": lukasiewicz(1), "L2": lukasiewicz(2), "L3": lukasiewicz(3)}
    for r in (2, 3):
        for combo in iproduct(sorted(parts), repeat=r):
            chains.append(
                ordinal_sum([parts[c] for c in combo], name="+".join(combo))
            )
    return chains


def lambda_probe(chains: Optional[Sequence[FinAlg]] = None) -> list[LambdaProbeRow]:
    if chains is None:
        chains = default_chain_suite()
    rows = []
    for chain in chains:
        idx = sum_decompose(chain).index
        verdicts = tuple(
            bool(terms.satisfies_all(chain, terms.builtin("lambda", n)))
            for n in LAMBDA_RANGE
        )
        mismatches = tuple(
            n
            for n, v in zip(LAMBDA_RANGE, verdicts)
            if (idx <= n) != v
        )
        rows.append(
            LambdaProbeRow(
                name=chain.name or f"chain{chain.size}",
                size=chain.size,
                index=idx,
                verdicts=verdicts,
                mismatches=mismatches,
            )
        )
    return rows


def write_lambda_csv(rows: Sequence[LambdaProbeRow], path, stamp: Optional[str] = None) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if stamp is not None:
            writer.writerow(["generated", stamp])
        writer.writerow(
            ["name", "size", "index"]
            + [f"lambda{n}" for n in LAMBDA_RANGE]
            + ["mismatch_at"]
        )
        for r in rows:
            writer.writerow(
                [r.name, r.size, r.index]
                + [int(v) for v in r.verdicts]
                + [" ".join(map(str, r.mismatches))]
            )


def render_lambda_png(rows: Sequence[LambdaProbeRow], path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n_rows = len(rows)
    n_cols = len(LAMBDA_RANGE)
    fig, ax = plt.subplots(figsize=(2 + n_cols * 0.9, 1 + n_rows * 0.32))
    grid = [[1 if v else 0 for v in r.verdicts] for r in rows]
    ax.imshow(grid, cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    for i, r in enumerate(rows):
        for j, n in enumerate(LAMBDA_RANGE):
            marks = []
            if r.index <= n:
                marks.append(f"idx<={n}")
            if n in r.mismatches:
                marks.append("!")
            ax.text(
                j,
                i,
                " ".join(marks),
                ha="center",
                va="center",
                fontsize=6,
            )
    ax.set_xticks(range(n_cols))
    ax.set_xticklabels([f"$\\lambda_{n}$" for n in LAMBDA_RANGE])
    ax.set_yticks(range(n_rows))
    ax.set_yticklabels([f"{r.name} (index {r.index})" for r in rows], fontsize=7)
    ax.set_title("lambda equations vs ordinal-sum index")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def lambda_report(out_dir, chains: Optional[Sequence[FinAlg]] = None,
                  stamp: Optional[str] = None) -> tuple[Path, Path, list[LambdaProbeRow]]:
    """Write lambda_probe.csv and lambda_probe.png under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = lambda_probe(chains)
    csv_path = out / "lambda_probe.csv"
    png_path = out / "lambda_probe.png"
    write_lambda_csv(rows, csv_path, stamp=stamp)
    render_lambda_png(rows, png_path)
    return csv_path, png_path, rows
