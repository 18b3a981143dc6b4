"""Exhaustive desk-scale survey over all digraphs with small classes.

One streaming pass over the full enumeration, counting how the degree
conditions, the semi-degree thresholds, and actual hamiltonicity relate.
The oracle is cheap at these sizes, so hamiltonicity is computed for every
instance, not sampled.  Counts go to a delimited file; the optional figures
render the same numbers.
"""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass
from typing import IO

from .conditions import check_condition_M, check_half_degrees, check_min_degree
from .digraph import degree, from_arc_bitmask
from .generators import canonical_form
from .hamilton import oracle_cycle


@dataclass(frozen=True)
class SurveyResult:
    a: int
    total: int
    condition_m: int
    condition_m_hamiltonian: int
    min_degree: int
    half_degrees: int
    semi_two: int
    semi_two_non_hamiltonian: int
    tight_classes: int
    hamiltonian: int
    arc_hist: tuple[int, ...]
    arc_hist_m: tuple[int, ...]

    def rows(self) -> list[tuple[str, int]]:
        return [
            ("total", self.total),
            ("hamiltonian", self.hamiltonian),
            ("condition_m", self.condition_m),
            ("condition_m_hamiltonian", self.condition_m_hamiltonian),
            ("min_degree", self.min_degree),
            ("half_degrees", self.half_degrees),
            ("semi_degrees_ge_2", self.semi_two),
            ("semi_degrees_ge_2_non_hamiltonian", self.semi_two_non_hamiltonian),
            ("tight_non_hamiltonian_classes", self.tight_classes),
        ]


DETAIL_FIELDS = ("mask", "arcs", "condition_m", "min_degree", "half_degrees",
                 "semi_two", "hamiltonian")


def survey(a: int, detail: IO[str] | None = None,
           progress: IO[str] | None = None) -> SurveyResult:
    """Scan all 2^(2 a^2) digraphs; a <= 3.

    detail, when given, receives one CSV row per digraph.  progress, when
    given (typically sys.stderr), gets a short line every 2^14 masks.
    """
    if a > 3:
        raise ValueError(f"survey is capped at a <= 3, got {a}")
    total = 1 << 2 * a * a
    n_m = n_m_ham = n_min = n_half = n_semi = n_semi_nonham = n_ham = 0
    arc_hist = [0] * (2 * a * a + 1)
    arc_hist_m = [0] * (2 * a * a + 1)
    tight: set[int] = set()
    writer = None
    if detail is not None:
        writer = csv.writer(detail)
        writer.writerow(DETAIL_FIELDS)
    for mask in range(total):
        d = from_arc_bitmask(a, mask)
        narcs = d.arc_count
        arc_hist[narcs] += 1
        m_ok = check_condition_M(d).satisfied
        min_ok = check_min_degree(d).satisfied
        half_ok = check_half_degrees(d).satisfied
        semi2 = all(min(degree(d, v).out, degree(d, v).in_) >= 2
                    for v in range(d.n))
        ham = oracle_cycle(d) is not None
        n_ham += ham
        if m_ok:
            n_m += 1
            n_m_ham += ham
            arc_hist_m[narcs] += 1
        n_min += min_ok
        n_half += half_ok
        if semi2:
            n_semi += 1
            if not ham:
                n_semi_nonham += 1
                tight.add(canonical_form(d).arc_bitmask())
        if writer is not None:
            writer.writerow((mask, narcs, int(m_ok), int(min_ok),
                             int(half_ok), int(semi2), int(ham)))
        if progress is not None and (mask + 1) % 16384 == 0:
            print(f"scanned {mask + 1}/{total}", file=progress, flush=True)
    return SurveyResult(a, total, n_m, n_m_ham, n_min, n_half, n_semi,
                        n_semi_nonham, len(tight), n_ham,
                        tuple(arc_hist), tuple(arc_hist_m))


def write_survey_csv(result: SurveyResult, out: IO[str]) -> None:
    writer = csv.writer(out)
    writer.writerow(("metric", "count"))
    for metric, count in result.rows():
        writer.writerow((metric, count))


def render_figures(result: SurveyResult, out_dir: str) -> list[str]:
    """Write the survey's two summary figures as PNGs; returns the paths."""
    import os

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(out_dir, exist_ok=True)
    paths = []

    rows = result.rows()
    fig, ax = plt.subplots(figsize=(8, 4.5))
    labels = [m for m, _ in rows]
    counts = [c for _, c in rows]
    ax.barh(range(len(rows)), counts, color="#4878a8")
    ax.set_yticks(range(len(rows)), labels)
    ax.invert_yaxis()
    ax.set_xscale("symlog")
    ax.set_xlabel("count (symlog)")
    ax.set_title(f"survey counts, a = {result.a}")
    for i, c in enumerate(counts):
        ax.annotate(f" {c}", (c, i), va="center", fontsize=8)
    fig.tight_layout()
    path = os.path.join(out_dir, "survey_counts.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    xs = range(len(result.arc_hist))
    ax.bar(xs, result.arc_hist, color="#b0b8c0", label="all digraphs")
    ax.bar(xs, result.arc_hist_m, color="#c05040", label="pair-degree condition")
    ax.set_xlabel("arcs")
    ax.set_ylabel("digraphs")
    ax.set_title(f"arc counts, a = {result.a}")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(out_dir, "survey_arcs.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(path)
    return paths
