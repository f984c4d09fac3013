"""Strand diagrams, read from the bottom: one horizontal slice per letter.

Exchanges are plain transversal crossings (no over/under, every generator is
an involution).  On the ring the flattened cut is drawn as dashed gray
verticals at both sides; ``t_i`` sends strand ``i`` out through the left cut
and back in through the right one, ``t_i^-1`` the other way round.  ``z`` is
expanded to ``t1 s1 ... s_{N-1}`` before drawing.

SVG output uses integer coordinates only and carries no ids or timestamps,
so identical input gives byte-identical output.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from typing import Union

from .errors import RenderError
from .ring import WreathElement
from .words import Letter, Presentation, Word

SLOT = 40  # horizontal distance between strands
ROW = 40  # height of one slice
DEFAULT_MAX_LETTERS = 256


def expand_shift(word: Word) -> Word:
    n = word.presentation.n
    zeta = [Letter("t", 1)] + [Letter("s", i) for i in range(1, n)]
    zeta_inv = [l.inverse() for l in reversed(zeta)]
    letters: list[Letter] = []
    for letter in word.letters:
        if letter.kind == "z":
            letters += zeta if letter.exp > 0 else zeta_inv
        else:
            letters.append(letter)
    return Word(word.presentation, tuple(letters))


def _as_word(item: Union[Word, WreathElement]) -> Word:
    if isinstance(item, WreathElement):
        return item.to_word()
    return expand_shift(item)


def _check_size(word: Word, max_letters: int) -> None:
    if len(word) > max_letters:
        raise RenderError(
            f"{len(word)} letters exceed the canvas cap of {max_letters}; "
            "raise the cap to draw longer words"
        )


# -- ASCII -----------------------------------------------------------------


def render_ascii(
    item: Union[Word, WreathElement],
    ring_cut: bool | None = None,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> str:
    word = _as_word(item)
    _check_size(word, max_letters)
    n = word.presentation.n
    cut = word.presentation.is_ring if ring_cut is None else ring_cut
    width = 4 * n + 1
    col = [2 + 4 * k for k in range(n)]  # column of slot k+1

    def blank() -> list[str]:
        row = [" "] * width
        if cut:
            row[0] = row[-1] = ":"
        for c in col:
            row[c] = "|"
        return row

    blocks: list[list[list[str]]] = []  # each block: rows bottom-to-top
    for letter in word.letters:
        low, mid, high = blank(), blank(), blank()
        if letter.kind == "s":
            a, b = col[letter.index - 1], col[letter.index]
            for row in (low, mid, high):
                row[a] = row[b] = " "
            low[a + 1], low[b - 1] = "/", "\\"
            mid[a + 2] = "X"
            high[a + 1], high[b - 1] = "\\", "/"
        else:
            c = col[letter.index - 1]
            # leave towards one cut on the bottom row, come back from the other on top
            first = range(1, c) if letter.exp > 0 else range(c + 1, width - 1)
            second = range(c + 1, width - 1) if letter.exp > 0 else range(1, c)
            for x in first:
                low[x] = "+" if low[x] == "|" else "-"
            for x in second:
                high[x] = "+" if high[x] == "|" else "-"
            low[c] = high[c] = "<" if letter.exp > 0 else ">"
            mid[c] = " "
        blocks.append([low, mid, high])

    rows = [blank()]
    for block in blocks:
        rows += block
        rows.append(blank())
    return "\n".join("".join(r).rstrip() for r in reversed(rows)) + "\n"


# -- SVG -------------------------------------------------------------------


def _x(slot: int) -> int:
    return SLOT * slot


def render_svg(
    item: Union[Word, WreathElement],
    ring_cut: bool | None = None,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> str:
    word = _as_word(item)
    _check_size(word, max_letters)
    n = word.presentation.n
    cut = word.presentation.is_ring if ring_cut is None else ring_cut
    slices = max(len(word), 1)
    width = SLOT * (n + 1)
    height = ROW * slices + ROW
    left_cut, right_cut = SLOT // 2, width - SLOT // 2

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect class="background" x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if cut:
        out.append('<g class="cut" stroke="gray" stroke-width="2" stroke-dasharray="6,4">')
        for x in (left_cut, right_cut):
            out.append(f'<line x1="{x}" y1="{ROW // 2}" x2="{x}" y2="{height - ROW // 2}"/>')
        out.append("</g>")

    def seg(x1, y1, x2, y2) -> str:
        return f'<path class="strand" d="M {x1} {y1} L {x2} {y2}"/>'

    letters = word.letters or (None,)
    for k, letter in enumerate(letters):
        y0 = height - ROW // 2 - ROW * k  # bottom of the slice
        y1 = y0 - ROW
        ym = y0 - ROW // 2
        out.append('<g class="slice" fill="none" stroke="black" stroke-width="3">')
        for slot in range(1, n + 1):
            x = _x(slot)
            if letter is None:
                out.append(seg(x, y0, x, y1))
            elif letter.kind == "s" and slot == letter.index:
                out.append(seg(x, y0, _x(slot + 1), y1))
            elif letter.kind == "s" and slot == letter.index + 1:
                out.append(seg(x, y0, _x(slot - 1), y1))
            elif letter.kind == "t" and slot == letter.index:
                exit_x, enter_x = (left_cut, right_cut) if letter.exp > 0 else (right_cut, left_cut)
                out.append(seg(x, y0, exit_x, ym))
                out.append(seg(enter_x, ym, x, y1))
            else:
                out.append(seg(x, y0, x, y1))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- reading diagrams back ---------------------------------------------------

_PATH = re.compile(r"M (-?\d+) (-?\d+) L (-?\d+) (-?\d+)$")
_NS = "{http://www.w3.org/2000/svg}"


def read_svg(svg: str, family: str = "S") -> Word:
    """Recover the drawn word from the strand geometry of an SVG diagram."""
    try:
        root = ET.fromstring(svg)
    except ET.ParseError as exc:
        raise RenderError(f"not a well-formed SVG document: {exc}") from exc
    width = int(root.get("width"))
    n = width // SLOT - 1
    groups = [g for g in root.iter(_NS + "g")]
    is_ring = any(g.get("class") == "cut" for g in groups)
    left_cut, right_cut = SLOT // 2, width - SLOT // 2
    pres = Presentation(family, n, "ring" if is_ring else "interval")

    slices = []
    for g in groups:
        if g.get("class") != "slice":
            continue
        segs = []
        for p in g.iter(_NS + "path"):
            m = _PATH.match(p.get("d", ""))
            if m is None:
                raise RenderError(f"unreadable strand path {p.get('d')!r}")
            segs.append(tuple(int(v) for v in m.groups()))
        bottom = max(max(s[1], s[3]) for s in segs)
        slices.append((bottom, segs))

    letters: list[Letter] = []
    for _, segs in sorted(slices, key=lambda s: -s[0]):
        slice_letters = []
        for x1, y1, x2, y2 in segs:
            if x1 == x2:
                continue
            if x2 in (left_cut, right_cut) and x1 % SLOT == 0:
                slice_letters.append(Letter("t", x1 // SLOT, 1 if x2 == left_cut else -1))
            elif x1 % SLOT == 0 and x2 % SLOT == 0 and x2 == x1 + SLOT:
                slice_letters.append(Letter("s", x1 // SLOT))
        if len(slice_letters) > 1:
            raise RenderError("slice carries more than one letter")
        letters += slice_letters
    return Word(pres, tuple(letters))
