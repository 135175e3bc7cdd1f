"""Append-only training-curve CSV files.

Rows: run_id, wall_clock_s, step, mean_reward, entropy_mean, entropy_min,
kl, variance_explained, staleness. Header comment lines ("# key = value")
echo the run configuration for auditability.
"""

import csv
import logging
import os

logger = logging.getLogger(__name__)

COLUMNS = [
    "run_id", "wall_clock_s", "step", "mean_reward", "entropy_mean",
    "entropy_min", "kl", "variance_explained", "staleness",
]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


class CurveLogger:
    def __init__(self, path: str, run_id: str, config_echo: dict | None = None):
        self.path = path
        self.run_id = run_id
        self._last_step = None
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            for key in sorted(config_echo or {}):
                fh.write(f"# {key} = {config_echo[key]}\n")
            csv.writer(fh).writerow(COLUMNS)

    def log(self, step: int, metrics: dict) -> None:
        if self._last_step is not None and step < self._last_step:
            logger.warning("non-monotone step %s after %s in %s", step, self._last_step, self.path)
        self._last_step = step
        row = [self.run_id, _fmt(metrics.get("wall_clock_s", 0.0)), step]
        row += [_fmt(metrics.get(c)) for c in COLUMNS[3:]]
        with open(self.path, "a", encoding="utf-8", newline="") as fh:
            csv.writer(fh).writerow(row)


def read_curve(path: str):
    """Returns (config echo dict, list of row dicts with floats where possible)."""
    meta = {}
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header = None
        for line in fh:
            if line.startswith("#"):
                if "=" in line:
                    key, _, value = line[1:].partition("=")
                    meta[key.strip()] = value.strip()
                continue
            cells = next(csv.reader([line]))
            if header is None:
                header = cells
                continue
            row = {}
            for name, cell in zip(header, cells):
                if name == "run_id":
                    row[name] = cell
                elif cell == "":
                    row[name] = None
                else:
                    row[name] = float(cell)
            rows.append(row)
    return meta, rows
