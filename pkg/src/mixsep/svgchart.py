"""Self-contained SVG line charts for sweep results.

One chart per grid cell: the sweep value on x, every available [0, 1]
measure as a polyline with a fixed color assignment, y pinned to
[0, 1].  The energy distance is unbounded and has no slot in the color
scheme, so it stays out of the charts (it is in the CSV).
"""

import xml.etree.ElementTree as ET

from .sweep import sweep_axis_label

__all__ = ["SERIES_STYLE", "emit_chart"]

# (row field, legend label, stroke color, dash pattern or None)
SERIES_STYLE = (
    ("distinctness_exact", "exact", "red", None),
    ("distinctness_linear", "linear", "green", None),
    ("distinctness_mc", "mc", "green", "6 3"),
    ("lambda_avg", "lambda_avg", "turquoise", None),
    ("lambda_min", "lambda_min", "blue", None),
)

_WIDTH, _HEIGHT = 640, 420
_PLOT = {"left": 60.0, "right": 460.0, "top": 30.0, "bottom": 370.0}


def _fmt(x):
    return f"{x:.6g}"


def _x_ticks(values):
    if len(values) <= 9:
        return list(values)
    idx = [round(i * (len(values) - 1) / 8) for i in range(9)]
    return [values[i] for i in sorted(set(idx))]


def emit_chart(rows, cell, path):
    """Write one cell's sweep series as an SVG 1.1 line chart.

    ``cell`` is the (cell_a, cell_b) pair to select; pass None when the
    rows already belong to a single cell.  Series with no values at all
    are left out of both the chart and the legend.
    """
    if cell is not None:
        rows = [r for r in rows if (r.cell_a, r.cell_b) == tuple(cell)]
    if not rows:
        raise ValueError("no rows for the requested cell")
    cells = {(r.cell_a, r.cell_b) for r in rows}
    if len(cells) != 1:
        raise ValueError(f"rows span {len(cells)} cells; charts take exactly one")
    rows = sorted(rows, key=lambda r: r.sweep_value)
    family = rows[0].family
    (cell_a, cell_b) = next(iter(cells))

    xs = [r.sweep_value for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    x_span = x_hi - x_lo

    def to_x(v):
        if x_span == 0:
            return 0.5 * (_PLOT["left"] + _PLOT["right"])
        frac = (v - x_lo) / x_span
        return _PLOT["left"] + frac * (_PLOT["right"] - _PLOT["left"])

    def to_y(v):
        return _PLOT["bottom"] - v * (_PLOT["bottom"] - _PLOT["top"])

    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(_WIDTH),
            "height": str(_HEIGHT),
            "viewBox": f"0 0 {_WIDTH} {_HEIGHT}",
        },
    )
    ET.SubElement(
        root,
        "rect",
        {"x": "0", "y": "0", "width": str(_WIDTH), "height": str(_HEIGHT),
         "fill": "white"},
    )
    title = ET.SubElement(
        root,
        "text",
        {"x": str(_PLOT["left"]), "y": "18", "font-family": "sans-serif",
         "font-size": "13"},
    )
    title.text = f"{family}  cell ({cell_a}, {cell_b})"

    axis_attrs = {"stroke": "black", "stroke-width": "1"}
    ET.SubElement(root, "line", {
        "x1": _fmt(_PLOT["left"]), "y1": _fmt(_PLOT["bottom"]),
        "x2": _fmt(_PLOT["right"]), "y2": _fmt(_PLOT["bottom"]), **axis_attrs})
    ET.SubElement(root, "line", {
        "x1": _fmt(_PLOT["left"]), "y1": _fmt(_PLOT["top"]),
        "x2": _fmt(_PLOT["left"]), "y2": _fmt(_PLOT["bottom"]), **axis_attrs})

    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = to_y(frac)
        ET.SubElement(root, "line", {
            "x1": _fmt(_PLOT["left"] - 4), "y1": _fmt(y),
            "x2": _fmt(_PLOT["left"]), "y2": _fmt(y), **axis_attrs})
        label = ET.SubElement(root, "text", {
            "x": _fmt(_PLOT["left"] - 8), "y": _fmt(y + 4),
            "text-anchor": "end", "font-family": "sans-serif",
            "font-size": "11"})
        label.text = _fmt(frac)

    for value in _x_ticks(xs):
        x = to_x(value)
        ET.SubElement(root, "line", {
            "x1": _fmt(x), "y1": _fmt(_PLOT["bottom"]),
            "x2": _fmt(x), "y2": _fmt(_PLOT["bottom"] + 4), **axis_attrs})
        label = ET.SubElement(root, "text", {
            "x": _fmt(x), "y": _fmt(_PLOT["bottom"] + 18),
            "text-anchor": "middle", "font-family": "sans-serif",
            "font-size": "11"})
        label.text = _fmt(value)

    x_label = ET.SubElement(root, "text", {
        "x": _fmt(0.5 * (_PLOT["left"] + _PLOT["right"])),
        "y": str(_HEIGHT - 10), "text-anchor": "middle",
        "font-family": "sans-serif", "font-size": "12"})
    x_label.text = sweep_axis_label(family)
    mid_y = 0.5 * (_PLOT["top"] + _PLOT["bottom"])
    y_label = ET.SubElement(root, "text", {
        "x": "16", "y": _fmt(mid_y), "text-anchor": "middle",
        "font-family": "sans-serif", "font-size": "12",
        "transform": f"rotate(-90 16 {_fmt(mid_y)})"})
    y_label.text = "measure value"

    legend_x = _PLOT["right"] + 20.0
    legend_y = _PLOT["top"] + 10.0
    for field, label, color, dash in SERIES_STYLE:
        points = [
            (to_x(r.sweep_value), to_y(getattr(r, field)))
            for r in rows
            if getattr(r, field) is not None
        ]
        if not points:
            continue
        line_attrs = {
            "fill": "none",
            "stroke": color,
            "stroke-width": "1.5",
            "points": " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points),
        }
        if dash:
            line_attrs["stroke-dasharray"] = dash
        ET.SubElement(root, "polyline", line_attrs)
        for x, y in points:
            ET.SubElement(root, "circle", {
                "cx": _fmt(x), "cy": _fmt(y), "r": "2", "fill": color})

        sample_attrs = {
            "x1": _fmt(legend_x), "y1": _fmt(legend_y),
            "x2": _fmt(legend_x + 26), "y2": _fmt(legend_y),
            "stroke": color, "stroke-width": "1.5"}
        if dash:
            sample_attrs["stroke-dasharray"] = dash
        ET.SubElement(root, "line", sample_attrs)
        text = ET.SubElement(root, "text", {
            "x": _fmt(legend_x + 32), "y": _fmt(legend_y + 4),
            "font-family": "sans-serif", "font-size": "12"})
        text.text = label
        legend_y += 20.0

    try:
        ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)
    except OSError as exc:
        raise OSError(f"cannot write chart to {path}: {exc}") from exc
