"""Deterministic SVG emission for experiment figures.

Hand-rolled writer: fixed viewBox ``0 0 1000 1000``, fixed two-decimal
coordinate precision, no timestamps or generated ids, so reruns are
byte-identical.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

VIEW = 1000.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _header() -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {int(VIEW)} {int(VIEW)}">',
        f'<rect x="0" y="0" width="{int(VIEW)}" height="{int(VIEW)}" fill="white"/>',
    ]


def scatter_plane(
    points: Sequence[complex],
    circle_radius: float,
    extent: float,
    title: str = "",
) -> str:
    """Scatter of complex points with a reference circle about the origin.

    The square [-extent, extent]^2 maps onto the viewbox; the real axis is
    horizontal and the imaginary axis points up.
    """
    if extent <= 0:
        raise ValueError("extent must be positive")
    scale = VIEW / (2.0 * extent)

    def to_x(re: float) -> float:
        return (re + extent) * scale

    def to_y(im: float) -> float:
        return (extent - im) * scale

    lines = _header()
    if title:
        lines.append(f'<title>{title}</title>')
    lines.append(
        f'<line x1="0" y1="{_fmt(to_y(0.0))}" x2="{int(VIEW)}" y2="{_fmt(to_y(0.0))}" '
        'stroke="#cccccc" stroke-width="1"/>'
    )
    lines.append(
        f'<line x1="{_fmt(to_x(0.0))}" y1="0" x2="{_fmt(to_x(0.0))}" y2="{int(VIEW)}" '
        'stroke="#cccccc" stroke-width="1"/>'
    )
    lines.append(
        f'<circle cx="{_fmt(to_x(0.0))}" cy="{_fmt(to_y(0.0))}" r="{_fmt(circle_radius * scale)}" '
        'fill="none" stroke="black" stroke-width="2"/>'
    )
    for z in points:
        lines.append(
            f'<circle cx="{_fmt(to_x(z.real))}" cy="{_fmt(to_y(z.imag))}" r="2.00" '
            'fill="#1f4e9c" fill-opacity="0.55"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def histogram_line(
    values: Sequence[float],
    bins: int,
    hi: float,
    density: Callable[[float], float] | None = None,
    title: str = "",
) -> str:
    """Normalized histogram over [0, hi] with an optional density overlay."""
    if hi <= 0 or bins < 1:
        raise ValueError("need a positive range and at least one bin")
    width = hi / bins
    counts = [0] * bins
    total = 0
    for v in values:
        if 0.0 <= v < hi:
            counts[min(int(v / width), bins - 1)] += 1
            total += 1
        elif v == hi:
            counts[bins - 1] += 1
            total += 1
    heights = [c / (max(total, 1) * width) for c in counts]
    peak = max(heights)
    if density is not None:
        peak = max(peak, max(density(i * hi / 256.0) for i in range(257)))
    peak = peak if peak > 0 else 1.0
    margin = 40.0
    span_x = VIEW - 2 * margin
    span_y = VIEW - 2 * margin

    def to_x(v: float) -> float:
        return margin + v / hi * span_x

    def to_y(h: float) -> float:
        return VIEW - margin - h / (1.1 * peak) * span_y

    lines = _header()
    if title:
        lines.append(f'<title>{title}</title>')
    lines.append(
        f'<line x1="{_fmt(margin)}" y1="{_fmt(VIEW - margin)}" x2="{_fmt(VIEW - margin)}" '
        f'y2="{_fmt(VIEW - margin)}" stroke="black" stroke-width="1"/>'
    )
    for b in range(bins):
        x0 = to_x(b * width)
        x1 = to_x((b + 1) * width)
        y = to_y(heights[b])
        lines.append(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y)}" width="{_fmt(x1 - x0)}" '
            f'height="{_fmt(VIEW - margin - y)}" fill="#7aa6d8" stroke="white" stroke-width="0.5"/>'
        )
    if density is not None:
        pts = []
        for i in range(257):
            v = i * hi / 256.0
            pts.append(f"{_fmt(to_x(v))},{_fmt(to_y(density(v)))}")
        lines.append(
            '<polyline fill="none" stroke="#b03030" stroke-width="2" points="' + " ".join(pts) + '"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def is_valid_xml(text: str) -> bool:
    """Cheap well-formedness probe used by the test suite."""
    import xml.etree.ElementTree as ET

    try:
        ET.fromstring(text)
        return True
    except ET.ParseError:
        return False


def save(text: str, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def circle_extent(radius: float) -> float:
    """Default square half-width framing a circle with 25% padding."""
    return 1.25 * radius if radius > 0 else 1.0
