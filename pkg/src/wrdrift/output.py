"""CSV series/report files and the SVG trace plot.

Numbers are written with three decimals.  Files are written to a temporary
sibling and renamed into place.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ReportError
from .experiment import ExperimentReport, LinkSeries

SERIES_COLUMNS = ("time_s", "t_chamber_c", "t_fiber_c", "crtt_ps", "dt_ps")
REPORT_COLUMNS = ("label", "dt_cold_ps", "dt_hot_ps", "dt_delta_ps", "stabilization_time_s")


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def atomic_write(path, data: str | bytes) -> None:
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as fh:
            fh.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def series_csv(series: LinkSeries) -> str:
    cols = np.column_stack(
        (series.t_s, series.t_chamber_c, series.t_fiber_c, series.crtt_ps, series.dt_ps)
    )
    lines = [",".join(SERIES_COLUMNS)]
    lines.extend(",".join(_fmt(v) for v in row) for row in cols.tolist())
    return "\n".join(lines) + "\n"


def write_series_csv(series: LinkSeries, path) -> None:
    atomic_write(path, series_csv(series))


def report_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    writer.writerow(
        [
            report.label,
            _fmt(report.dt_cold_ps),
            _fmt(report.dt_hot_ps),
            _fmt(report.dt_delta_ps),
            _fmt(report.stabilization_time_s),
        ]
    )
    return buf.getvalue()


def write_report(report: ExperimentReport, path) -> None:
    atomic_write(path, report_csv(report))


def read_report(path) -> ExperimentReport:
    """Read a report written by :func:`write_report` (sample counts are not stored)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if len(rows) != 1 or tuple(rows[0]) != REPORT_COLUMNS:
        raise ReportError(f"{path}: expected one report row with columns {','.join(REPORT_COLUMNS)}")
    row = rows[0]
    try:
        return ExperimentReport(
            label=row["label"],
            dt_cold_ps=float(row["dt_cold_ps"]),
            dt_hot_ps=float(row["dt_hot_ps"]),
            dt_delta_ps=float(row["dt_delta_ps"]),
            stabilization_time_s=float(row["stabilization_time_s"]),
            n_cold=0,
            n_hot=0,
        )
    except ValueError as exc:
        raise ReportError(f"{path}: malformed number: {exc}") from None


def emit_plot_svg(series: LinkSeries, path) -> None:
    """Two stacked panels, cRTT and dt against time, each with fiber temperature overlaid."""
    if len(series) == 0:
        raise ReportError("cannot plot an empty series")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    t_min = series.t_s / 60.0
    with matplotlib.rc_context({"svg.hashsalt": "wrdrift", "svg.fonttype": "path"}):
        fig, (ax_rtt, ax_dt) = plt.subplots(2, 1, sharex=True, figsize=(8, 6.5))
        ax_rtt.plot(t_min, (series.crtt_ps - series.crtt_ps[0]) / 1e3, color="tab:blue", lw=0.8)
        ax_rtt.set_ylabel("cRTT - cRTT(0) [ns]")
        ax_dt.plot(t_min, series.dt_ps, color="tab:red", lw=0.8)
        ax_dt.set_ylabel("Δt [ps]")
        ax_dt.set_xlabel("time [min]")
        for ax in (ax_rtt, ax_dt):
            ax.grid(True, alpha=0.3)
            twin = ax.twinx()
            twin.plot(t_min, series.t_fiber_c, color="tab:gray", lw=0.8, ls="--")
            twin.set_ylabel("fiber temperature [°C]", color="tab:gray")
        ax_rtt.set_title(series.label)
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    atomic_write(path, buf.getvalue())
