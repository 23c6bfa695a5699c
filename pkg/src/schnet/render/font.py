"""A small monospace stroke font.

Glyphs live on a 4 x 6 unit grid (x right, y up, baseline at y=0). The
advance is 4.5 units, so a string of ``n`` characters at text height ``h``
is ``n * 0.75 * h`` wide. Lowercase letters reuse the uppercase strokes.
"""

from __future__ import annotations

GRID_HEIGHT = 6.0
ADVANCE = 4.5
WIDTH_RATIO = ADVANCE / GRID_HEIGHT

_RAW = {
    "A": "0,0 0,4 2,6 4,4 4,0|0,3 4,3",
    "B": "0,0 0,6 3,6 4,5 4,4 3,3 0,3|3,3 4,2 4,1 3,0 0,0",
    "C": "4,1 3,0 1,0 0,1 0,5 1,6 3,6 4,5",
    "D": "0,0 0,6 2,6 4,4 4,2 2,0 0,0",
    "E": "4,0 0,0 0,6 4,6|0,3 3,3",
    "F": "0,0 0,6 4,6|0,3 3,3",
    "G": "4,5 3,6 1,6 0,5 0,1 1,0 3,0 4,1 4,3 2,3",
    "H": "0,0 0,6|4,0 4,6|0,3 4,3",
    "I": "1,0 3,0|2,0 2,6|1,6 3,6",
    "J": "0,1 1,0 3,0 4,1 4,6",
    "K": "0,0 0,6|4,6 0,2|1,3 4,0",
    "L": "0,6 0,0 4,0",
    "M": "0,0 0,6 2,3 4,6 4,0",
    "N": "0,0 0,6 4,0 4,6",
    "O": "1,0 0,1 0,5 1,6 3,6 4,5 4,1 3,0 1,0",
    "P": "0,0 0,6 3,6 4,5 4,4 3,3 0,3",
    "Q": "1,0 0,1 0,5 1,6 3,6 4,5 4,1 3,0 1,0|2,2 4,0",
    "R": "0,0 0,6 3,6 4,5 4,4 3,3 0,3|2,3 4,0",
    "S": "0,1 1,0 3,0 4,1 4,2 3,3 1,3 0,4 0,5 1,6 3,6 4,5",
    "T": "0,6 4,6|2,6 2,0",
    "U": "0,6 0,1 1,0 3,0 4,1 4,6",
    "V": "0,6 2,0 4,6",
    "W": "0,6 1,0 2,3 3,0 4,6",
    "X": "0,0 4,6|0,6 4,0",
    "Y": "0,6 2,3 4,6|2,3 2,0",
    "Z": "0,6 4,6 0,0 4,0",
    "0": "1,0 0,1 0,5 1,6 3,6 4,5 4,1 3,0 1,0|0,1 4,5",
    "1": "1,5 2,6 2,0|1,0 3,0",
    "2": "0,5 1,6 3,6 4,5 4,4 0,0 4,0",
    "3": "0,5 1,6 3,6 4,5 4,4 3,3 4,2 4,1 3,0 1,0 0,1|1,3 3,3",
    "4": "3,0 3,6 0,2 4,2",
    "5": "4,6 0,6 0,3 3,3 4,2 4,1 3,0 0,0",
    "6": "4,5 3,6 1,6 0,5 0,1 1,0 3,0 4,1 4,2 3,3 0,3",
    "7": "0,6 4,6 1,0",
    "8": "1,3 0,4 0,5 1,6 3,6 4,5 4,4 3,3 1,3 0,2 0,1 1,0 3,0 4,1 4,2 3,3",
    "9": "0,1 1,0 3,0 4,1 4,5 3,6 1,6 0,5 0,4 1,3 4,3",
    ".": "2,0 2,0.5",
    ",": "2,1 1,-1",
    ":": "2,1 2,1.5|2,4 2,4.5",
    ";": "2,4 2,4.5|2,1 1,-1",
    "-": "1,3 3,3",
    "+": "0,3 4,3|2,1 2,5",
    "_": "0,0 4,0",
    "=": "0,2 4,2|0,4 4,4",
    "/": "0,0 4,6",
    "\\": "0,6 4,0",
    "(": "3,6 1,4 1,2 3,0",
    ")": "1,6 3,4 3,2 1,0",
    "[": "3,6 1,6 1,0 3,0",
    "]": "1,6 3,6 3,0 1,0",
    "<": "4,5 0,3 4,1",
    ">": "0,5 4,3 0,1",
    "!": "2,6 2,2|2,0 2,0.5",
    "?": "0,5 1,6 3,6 4,5 4,4 2,3 2,2|2,0 2,0.5",
    "'": "2,6 2,4",
    '"': "1,6 1,4|3,6 3,4",
    "*": "0,1 4,5|0,5 4,1|2,0 2,6",
    "#": "1,0 1,6|3,0 3,6|0,2 4,2|0,4 4,4",
    "$": "4,5 3,5.5 1,5.5 0,4.5 0,3.5 1,3 3,3 4,2.5 4,1.5 3,0.5 1,0.5 0,1|2,6 2,0",
    "%": "0,0 4,6|0,6 0,5 1,5 1,6 0,6|3,0 3,1 4,1 4,0 3,0",
    "&": "4,0 1,4 1,5 2,6 3,5 3,4 0,2 0,1 1,0 2,0 4,2",
    "@": "3,2 2,2 2,4 3,4 3,1 4,1 4,5 3,6 1,6 0,5 0,1 1,0 3,0",
    "^": "0,4 2,6 4,4",
    "~": "0,3 1,4 3,2 4,3",
    "|": "2,0 2,6",
    "µ": "0,-1 0,4|0,1 1,0 3,0 4,1 4,4",
    "Ω": "0,0 1,0 1,1 0,3 0,5 1,6 3,6 4,5 4,3 3,1 3,0 4,0",
    " ": "",
}

_BOX = "0,0 4,0 4,6 0,6 0,0"


def _parse(outline: str) -> tuple[tuple[tuple[float, float], ...], ...]:
    strokes = []
    for stroke in outline.split("|"):
        if not stroke:
            continue
        pts = tuple(tuple(float(v) for v in p.split(",")) for p in stroke.split())
        if len(pts) == 1:
            pts = pts + pts
        strokes.append(pts)
    return tuple(strokes)


GLYPHS = {ch: _parse(outline) for ch, outline in _RAW.items()}
_UNKNOWN = _parse(_BOX)


def glyph(ch: str):
    g = GLYPHS.get(ch)
    if g is None:
        g = GLYPHS.get(ch.upper(), _UNKNOWN)
    return g


def text_width(content: str, size: float) -> float:
    return len(content) * WIDTH_RATIO * size


def layout(content: str, size: float):
    """Yield strokes of ``content`` in text-local units scaled to ``size``.

    The local frame has its origin at the bottom-left of the first glyph.
    """
    u = size / GRID_HEIGHT
    for i, ch in enumerate(content):
        ox = i * ADVANCE * u
        for stroke in glyph(ch):
            yield [(ox + gx * u, gy * u) for gx, gy in stroke]
