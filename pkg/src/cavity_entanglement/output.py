"""
Text output: CSV series, gnuplot companion scripts and event tables.

CSV files use a header row, ``\\n`` line endings and ``%.12g`` style numbers,
independent of the locale.
"""

import csv
from typing import IO, List, Optional, Sequence

import numpy as np
from prettytable import PrettyTable

from .events import CAVITIES, ESB, ESD, RESERVOIRS, EventReport, EventTimes
from .oracle import OracleSeries, compare_to_markov


def format_value(value: float, digits: int = 12) -> str:
    """Format with ``digits`` significant digits; negative zero prints as 0."""
    text = format(float(value), f".{digits}g")
    return "0" if text == "-0" else text


def _writer(stream: IO[str]):
    return csv.writer(stream, lineterminator="\n")


def write_sweep_csv(result, stream: IO[str], digits: int = 12) -> None:
    """Header ``t,<series names>`` then one row per grid point."""
    writer = _writer(stream)
    writer.writerow(["t"] + list(result.names))
    for t, row in zip(result.times, result.values):
        writer.writerow([format_value(t, digits)] + [format_value(v, digits) for v in row])


def gnuplot_script(csv_path: str, names: Sequence[str], title: str = "",
                   ylabel: str = "entanglement") -> str:
    """Plot script that reads ``csv_path`` with one curve per series."""
    curves = ", \\\n     ".join(
        f"'{csv_path}' using 1:{i + 2} with lines title '{name}'"
        for i, name in enumerate(names))
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set xlabel 't (1/kappa)'",
        f"set ylabel '{ylabel}'",
    ]
    if title:
        lines.append(f"set title '{title}'")
    lines.append(f"plot {curves}")
    return "\n".join(lines) + "\n"


def _time_or_dash(value: Optional[float], digits: int) -> str:
    return "-" if value is None else format_value(value, digits)


def events_table(reports: Sequence[EventReport], digits: int = 9) -> PrettyTable:
    table = PrettyTable()
    table.field_names = ["event", "partition", "measure", "t_numeric", "t_analytic", "difference"]
    table.align = "r"
    table.align["event"] = "l"
    table.align["partition"] = "l"
    for report in reports:
        table.add_row([
            report.kind,
            report.partition.label(),
            report.measure_kind,
            format_value(report.t_numeric, digits),
            _time_or_dash(report.t_analytic, digits),
            _time_or_dash(report.difference, 3),
        ])
    return table


def events_summary(reports: Sequence[EventReport], reference: Optional[EventTimes],
                   window, simultaneous: bool, digits: int = 9, closed_form: bool = True,
                   ratio_rule: bool = False) -> List[str]:
    """Plain lines printed under the event table.

    ``closed_form`` is False for cutoffs without analytic times; ``ratio_rule``
    marks amplitudes meeting alpha_d/alpha_0 = 2^d, whose measured gap is
    printed when the times do not coincide exactly.
    """
    lines: List[str] = []
    if reference is None:
        if closed_form:
            lines.append("NoESD: the cavity pair decays only asymptotically")
        else:
            lines.append("no closed form for this cutoff: times are numerical only")
    if window is not None:
        lines.append(f"both dead: [{format_value(window[0], digits)}, "
                     f"{format_value(window[1], digits)}]")
    if simultaneous:
        lines.append("simultaneous: ESD and ESB coincide")
    elif ratio_rule:
        gap = _first_gap(reports)
        if gap is not None:
            lines.append(f"ratio rule holds, measured ESD - ESB = {format_value(gap, digits)}")
    if not reports and (reference is not None or not closed_form):
        lines.append("no crossings found on the scan grid")
    return lines


def _first_gap(reports: Sequence[EventReport]) -> Optional[float]:
    deaths = [r.t_numeric for r in reports if r.kind == ESD and r.partition == CAVITIES]
    births = [r.t_numeric for r in reports if r.kind == ESB and r.partition == RESERVOIRS]
    if not deaths or not births:
        return None
    return min(deaths) - min(births)


def write_events_csv(reports: Sequence[EventReport], stream: IO[str], digits: int = 12) -> None:
    writer = _writer(stream)
    writer.writerow(["event", "partition", "measure", "t_numeric", "t_analytic", "difference"])
    for report in reports:
        writer.writerow([
            report.kind,
            report.partition.label(),
            report.measure_kind,
            format_value(report.t_numeric, digits),
            "" if report.t_analytic is None else format_value(report.t_analytic, digits),
            "" if report.difference is None else format_value(report.difference, digits),
        ])


def write_oracle_csv(series: OracleSeries, kappa: float, stream: IO[str],
                     digits: int = 12) -> float:
    """Rows ``t,xi_numeric,xi_markov,abs_dev`` and a closing ``max_dev=`` line."""
    writer = _writer(stream)
    markov = np.exp(-0.5 * kappa * series.times)
    writer.writerow(["t", "xi_numeric", "xi_markov", "abs_dev"])
    for t, xi, ref in zip(series.times, series.xi_n, markov):
        writer.writerow([format_value(t, digits), format_value(xi, digits),
                         format_value(ref, digits), format_value(abs(xi - ref), digits)])
    max_dev = compare_to_markov(series, kappa)
    stream.write(f"max_dev={format_value(max_dev, digits)}\n")
    return max_dev
