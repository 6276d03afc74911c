"""Minimal dependency-free SVG plotting for the CLI artifacts."""
from __future__ import annotations

from xml.sax.saxutils import escape


def _f(v: float) -> str:
    return f"{v:.3f}"


class Canvas:
    """Data-coordinate canvas with a single pair of linear axes."""

    def __init__(self, xlim, ylim, width=640, height=480, margin=60, title=""):
        self.xlim, self.ylim = xlim, ylim
        self.width, self.height, self.margin = width, height, margin
        self.title = title
        self.items: list[str] = []

    def px(self, x: float) -> float:
        x0, x1 = self.xlim
        return self.margin + (x - x0) / (x1 - x0) * (self.width - 2 * self.margin)

    def py(self, y: float) -> float:
        y0, y1 = self.ylim
        return self.height - self.margin - (y - y0) / (y1 - y0) * (self.height - 2 * self.margin)

    def rect(self, x0, y0, x1, y1, fill, stroke="none"):
        xa, xb = sorted((self.px(x0), self.px(x1)))
        ya, yb = sorted((self.py(y0), self.py(y1)))
        self.items.append(
            f'<rect x="{_f(xa)}" y="{_f(ya)}" width="{_f(xb - xa)}" height="{_f(yb - ya)}" '
            f'fill="{fill}" stroke="{stroke}" clip-path="url(#plot)"/>'
        )

    def polyline(self, xs, ys, stroke="black", width=1.5, dash=None):
        pts = " ".join(f"{_f(self.px(x))},{_f(self.py(y))}" for x, y in zip(xs, ys))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="{width}"{extra} '
            f'clip-path="url(#plot)"/>'
        )

    def circle(self, x, y, r=4, fill="black"):
        self.items.append(f'<circle cx="{_f(self.px(x))}" cy="{_f(self.py(y))}" r="{r}" fill="{fill}"/>')

    def text(self, x_px, y_px, label, anchor="middle", size=12, rotate=None):
        rot = f' transform="rotate({rotate} {_f(x_px)} {_f(y_px)})"' if rotate is not None else ""
        self.items.append(
            f'<text x="{_f(x_px)}" y="{_f(y_px)}" font-size="{size}" font-family="sans-serif" '
            f'text-anchor="{anchor}"{rot}>{escape(label)}</text>'
        )

    def axes(self, xlabel, ylabel, ticks=5):
        m, w, h = self.margin, self.width, self.height
        self.items.append(
            f'<rect x="{m}" y="{m}" width="{w - 2 * m}" height="{h - 2 * m}" fill="none" stroke="black"/>'
        )
        for i in range(ticks + 1):
            xv = self.xlim[0] + i * (self.xlim[1] - self.xlim[0]) / ticks
            yv = self.ylim[0] + i * (self.ylim[1] - self.ylim[0]) / ticks
            self.text(self.px(xv), h - m + 16, f"{xv:.3g}", size=10)
            self.text(m - 6, self.py(yv) + 4, f"{yv:.3g}", anchor="end", size=10)
        self.text(w / 2, h - 14, xlabel)
        self.text(16, h / 2, ylabel, rotate=-90)
        if self.title:
            self.text(w / 2, m / 2, self.title, size=14)

    def render(self, metadata: str = "") -> str:
        meta = f"<metadata>{escape(metadata)}</metadata>\n" if metadata else ""
        m = self.margin
        clip = (f'<defs><clipPath id="plot"><rect x="{m}" y="{m}" width="{self.width - 2 * m}" '
                f'height="{self.height - 2 * m}"/></clipPath></defs>\n')
        body = "\n".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">\n{meta}{clip}'
            f'<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
        )
