"""Figure specifications and CSV schema validation.

Each figure reads one sweep.csv written by the flra CLI. Validation
checks the columns a figure needs and fails loudly, naming the first
missing column.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import pandas as pd

FIGURE_IDS = ("fig3", "fig4", "fig5")

# columns each figure consumes, keyed by figure id
REQUIRED_COLUMNS = {
    "fig3": [
        "axis", "value", "protocol", "feasible", "q_max",
        "e_fl_J", "e_tot_J",
    ],
    "fig4": [
        "axis", "value", "protocol", "feasible", "rho_star", "e_tot_J",
    ],
    "fig5": [
        "axis", "value", "protocol", "feasible", "rho_star", "e_tot_J",
        "n_fresh_packets",
    ],
}

# the sweep axis the figure expects in the CSV's axis column
EXPECTED_AXIS = {"fig3": "rho", "fig4": "n_fl", "fig5": "lambda_fresh"}


class PlotkitError(Exception):
    """Raised for schema or content problems in an input CSV."""


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: which figure, from which CSV, to which file."""

    figure_id: str
    csv_path: str
    out_path: str

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise PlotkitError(
                f"unknown figure id {self.figure_id!r}; "
                f"expected one of {', '.join(FIGURE_IDS)}"
            )


def load_frame(spec: FigureSpec) -> pd.DataFrame:
    """Read and validate the CSV for a figure spec."""
    path = Path(spec.csv_path)
    if not path.exists():
        raise PlotkitError(f"input CSV not found: {path}")
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise PlotkitError(f"input CSV is empty: {path}") from None
    for column in REQUIRED_COLUMNS[spec.figure_id]:
        if column not in frame.columns:
            raise PlotkitError(
                f"{path}: missing column {column!r} required by "
                f"{spec.figure_id}"
            )
    if frame.empty:
        raise PlotkitError(f"{path}: no data rows")
    axis = EXPECTED_AXIS[spec.figure_id]
    got = frame["axis"].unique().tolist()
    if got != [axis]:
        raise PlotkitError(
            f"{path}: {spec.figure_id} needs a sweep over axis={axis!r}, "
            f"found axis values {got}"
        )
    # "true"/"false" strings from the CLI; also accept real booleans
    if frame["feasible"].dtype == object:
        frame["feasible"] = frame["feasible"].map(
            {"true": True, "false": False}
        )
    if frame["feasible"].isna().any():
        raise PlotkitError(f"{path}: feasible column must be true/false")
    return frame
