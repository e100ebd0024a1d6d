"""Report rendering: criterion CSV tables and SVG cumulative histograms.

All output is deterministic: fixed float formatting, no timestamps, stable
ordering.  The SVG layout is fixed at a 600x400 viewport with a plot area
of x in [50, 590] and y in [30, 360]; bar heights scale linearly with the
cumulative count.
"""

from .errors import MissingHistogram

__all__ = [
    "render_histogram_svg",
    "render_c1_table",
    "render_c2_table",
    "render_probe_table",
]

SVG_WIDTH = 600
SVG_HEIGHT = 400
PLOT_LEFT = 50
PLOT_RIGHT = 590
PLOT_TOP = 30
PLOT_BOTTOM = 360
PLOT_W = PLOT_RIGHT - PLOT_LEFT
PLOT_H = PLOT_BOTTOM - PLOT_TOP


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def render_histogram_svg(report) -> str:
    """Bar chart of a margin histogram: x = epsilon grid, y = number of
    samples whose margin exceeds epsilon."""
    if report.histogram is None:
        raise MissingHistogram(f"report {report.criterion}/{report.encoder_id} has no histogram")
    hist = report.histogram
    grid = list(hist.epsilon_grid)
    counts = list(hist.cumulative_counts)
    k = len(grid)
    slot = PLOT_W / k
    bar_w = 0.8 * slot
    max_count = max(counts) if counts and max(counts) > 0 else 0
    title = f"{report.criterion} margins: {report.encoder_id} on {report.dataset_id}"
    if report.n is not None:
        title += f" (n={report.n})"
    # Exactly one <rect> per bin; the background stays the viewer default.
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<text x="{SVG_WIDTH / 2:.2f}" y="20" text-anchor="middle" font-size="14" '
        f'font-family="sans-serif">{_esc(title)}</text>',
        f'<line x1="{PLOT_LEFT}" y1="{PLOT_BOTTOM}" x2="{PLOT_RIGHT}" y2="{PLOT_BOTTOM}" '
        'stroke="#000000" stroke-width="1"/>',
        f'<line x1="{PLOT_LEFT}" y1="{PLOT_TOP}" x2="{PLOT_LEFT}" y2="{PLOT_BOTTOM}" '
        'stroke="#000000" stroke-width="1"/>',
        f'<text x="{PLOT_LEFT - 6}" y="{PLOT_TOP + 4}" text-anchor="end" font-size="10" '
        f'font-family="sans-serif">{max_count}</text>',
        f'<text x="{PLOT_LEFT - 6}" y="{PLOT_BOTTOM + 4}" text-anchor="end" font-size="10" '
        'font-family="sans-serif">0</text>',
    ]
    for i, (eps, count) in enumerate(zip(grid, counts)):
        height = (count / max_count) * PLOT_H if max_count else 0.0
        x = PLOT_LEFT + i * slot + 0.1 * slot
        y = PLOT_BOTTOM - height
        lines.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" height="{height:.2f}" fill="#4878a8"/>'
        )
        lines.append(
            f'<text x="{x + bar_w / 2:.2f}" y="{PLOT_BOTTOM + 14}" text-anchor="middle" '
            f'font-size="9" font-family="sans-serif">{eps:.2f}</text>'
        )
    lines.append(
        f'<text x="{(PLOT_LEFT + PLOT_RIGHT) / 2:.2f}" y="{SVG_HEIGHT - 8}" text-anchor="middle" '
        'font-size="11" font-family="sans-serif">margin threshold</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _csv_line(cells) -> str:
    out = []
    for cell in cells:
        text = str(cell)
        if any(ch in text for ch in ",\"\n"):
            text = '"' + text.replace('"', '""') + '"'
        out.append(text)
    return ",".join(out)


def render_c1_table(reports, encoders) -> str:
    """Pos./Neg./Diff. rows per dataset, one column per encoder."""
    by_cell = {(r.dataset_id, r.encoder_id): r for r in reports}
    datasets = sorted({r.dataset_id for r in reports})
    lines = [_csv_line(["dataset", "stat"] + list(encoders))]
    for ds in datasets:
        for stat, attr in (("Pos.", "pos_mean"), ("Neg.", "neg_mean"), ("Diff.", "diff")):
            row = [ds, stat]
            for enc in encoders:
                rep = by_cell.get((ds, enc))
                row.append("" if rep is None else f"{getattr(rep, attr):.2f}")
            lines.append(_csv_line(row))
    return "\n".join(lines) + "\n"


def render_c2_table(reports, encoders) -> str:
    """Mean similarity per n and dataset, one column per encoder."""
    by_cell = {(r.dataset_id, r.encoder_id): r for r in reports}
    datasets = sorted({r.dataset_id for r in reports})
    all_n = sorted({int(n) for r in reports for n in (r.per_n_means or {})})
    lines = [_csv_line(["n", "dataset"] + list(encoders))]
    for n in all_n:
        for ds in datasets:
            row = [str(n), ds]
            for enc in encoders:
                rep = by_cell.get((ds, enc))
                mean = (rep.per_n_means or {}).get(str(n)) if rep else None
                row.append("" if mean is None else f"{mean:.3f}")
            lines.append(_csv_line(row))
    return "\n".join(lines) + "\n"


def render_probe_table(results, encoders, tasks) -> str:
    """Accuracy percentage per encoder and task, plus the per-encoder mean."""
    by_cell = {(r.encoder_id, r.task.name): r for r in results}
    lines = [_csv_line(["encoder"] + list(tasks) + ["Avg"])]
    for enc in encoders:
        row = [enc]
        cells = []
        for task in tasks:
            res = by_cell.get((enc, task))
            if res is None:
                row.append("")
            else:
                pct = 100.0 * res.mean_accuracy
                row.append(f"{pct:.2f}")
                cells.append(pct)
        row.append(f"{sum(cells) / len(cells):.2f}" if cells else "")
        lines.append(_csv_line(row))
    return "\n".join(lines) + "\n"
