"""The one CSV schema every experiment row uses.

Exact rationals print as ``p/q`` and reals with 12 significant digits, so a
row is both machine-parseable and lossless for the exact mode.  Missing
cells (for example the ratio of a vacuous instance) stay empty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

CSV_COLUMNS = (
    "instance_id",
    "n",
    "mode",
    "expected_size",
    "ratio",
    "bound",
    "verdict",
    "seed",
    "runtime_ms",
)

CSV_HEADER = ",".join(CSV_COLUMNS)


def fmt_cell(x: object) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def row_line(row: Mapping[str, object]) -> str:
    return ",".join(fmt_cell(row.get(c)) for c in CSV_COLUMNS)
