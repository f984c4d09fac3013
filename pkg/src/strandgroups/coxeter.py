"""Word problem for the interval strand groups S_N, T_N, F_N, W_N.

All four groups are Coxeter groups on ``s_1 .. s_{N-1}`` with Coxeter numbers
in {2, 3, inf}.  The geometric (Tits) representation is faithful and, for these
numbers, has rational entries, so equality of exact matrices decides equality
of elements.

Matrices act on the root space with basis ``alpha_1 .. alpha_{N-1}``; the
matrix of a word is the product of generator matrices in word order.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .errors import (
    BallCapExceeded,
    GeometryError,
    PresentationMismatchError,
    UnsupportedFamilyError,
)
from .words import FAMILIES, Presentation, Word

INF = math.inf

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]

DEFAULT_BALL_CAP = 10**6


@dataclass(frozen=True)
class CoxeterMatrix:
    family: str
    n_gens: int
    entries: Tuple[Tuple[float, ...], ...]

    def m(self, i: int, j: int):
        """Coxeter number of the pair (s_i, s_j), 1-based."""
        return self.entries[i - 1][j - 1]

    def to_json(self) -> list:
        return [[("inf" if x == INF else int(x)) for x in row] for row in self.entries]


def _family_m(family: str, i: int, j: int):
    if i == j:
        return 1
    adjacent = abs(i - j) == 1
    if family == "S":
        return 3 if adjacent else 2
    if family == "T":
        return INF if adjacent else 2
    if family == "F":
        return 3 if adjacent else INF
    return INF


@lru_cache(maxsize=None)
def build_coxeter_matrix(family: str, n: int) -> CoxeterMatrix:
    if family == "B":
        raise UnsupportedFamilyError("family B (braid group) is not a Coxeter-type family")
    if family not in FAMILIES:
        raise UnsupportedFamilyError(f"unknown family {family!r}")
    if n < 2:
        raise ValueError("need n >= 2")
    k = n - 1
    entries = tuple(
        tuple(_family_m(family, i, j) for j in range(1, k + 1)) for i in range(1, k + 1)
    )
    return CoxeterMatrix(family, k, entries)


def bilinear_form(m) -> Fraction:
    """-cos(pi/m) for m in {1, 2, 3, inf}."""
    if m == 1:
        return Fraction(1)
    if m == 2:
        return Fraction(0)
    if m == 3:
        return Fraction(-1, 2)
    if m == INF:
        return Fraction(-1)
    raise ValueError(f"Coxeter number {m} has irrational -cos(pi/m)")


# -- exact matrices -------------------------------------------------------


def identity_matrix(k: int) -> RationalMatrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if r == c else zero for c in range(k)) for r in range(k))


def matmul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def matrix_to_json(m: RationalMatrix) -> list:
    return [[f"{x.numerator}/{x.denominator}" for x in row] for row in m]


def matrix_from_json(data: Sequence[Sequence[str]]) -> RationalMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in data)


@lru_cache(maxsize=None)
def _generator_rows(family: str, n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Row ``i`` of rho(s_i); every other row of rho(s_i) is the identity row."""
    cm = build_coxeter_matrix(family, n)
    k = cm.n_gens
    rows = []
    for i in range(1, k + 1):
        rows.append(
            tuple(
                (Fraction(1) if i == j else Fraction(0)) - 2 * bilinear_form(cm.m(i, j))
                for j in range(1, k + 1)
            )
        )
    return tuple(rows)


def generator_matrix(family: str, n: int, i: int) -> RationalMatrix:
    k = n - 1
    row_i = _generator_rows(family, n)[i - 1]
    ident = identity_matrix(k)
    return tuple(row_i if r == i - 1 else ident[r] for r in range(k))


def _right_multiply(mat: list[list[Fraction]], row_i: Sequence[Fraction], i: int) -> None:
    """In place ``mat <- mat . rho(s_i)``; only column operations against column i."""
    col = i - 1
    for row in mat:
        a = row[col]
        if a:
            for c, g in enumerate(row_i):
                delta = g - (1 if c == col else 0)
                if delta:
                    row[c] += a * delta


def _matrix_of_indices(family: str, n: int, indices: Iterable[int]) -> RationalMatrix:
    gens = _generator_rows(family, n)
    mat = [list(r) for r in identity_matrix(n - 1)]
    for i in indices:
        _right_multiply(mat, gens[i - 1], i)
    return tuple(tuple(r) for r in mat)


def _require_sigma_interval(word: Word) -> None:
    if word.presentation.is_ring or not word.is_sigma_only:
        raise GeometryError(
            f"word {word} must be a sigma-only word of an interval presentation"
        )


def tits_matrix(word: Word) -> RationalMatrix:
    _require_sigma_interval(word)
    p = word.presentation
    return _matrix_of_indices(p.family, p.n, word.sigma_indices())


def elements_equal(u: Word, v: Word) -> bool:
    if u.presentation != v.presentation:
        raise PresentationMismatchError(
            f"words belong to different presentations: {u.presentation} vs {v.presentation}"
        )
    return tits_matrix(u) == tits_matrix(v)


# -- reducedness by move closure -----------------------------------------


def _move_neighbours(word: Tuple[int, ...], cm: CoxeterMatrix):
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if a == b:
            continue
        m = cm.m(a, b)
        if m == 2:
            yield word[:p] + (b, a) + word[p + 2 :]
        elif m == 3 and p + 2 < len(word) and word[p + 2] == a:
            yield word[:p] + (b, a, b) + word[p + 3 :]


def move_orbit(indices: Tuple[int, ...], cm: CoxeterMatrix) -> set:
    """All words reachable by commutation and braid moves (length preserving)."""
    seen = {indices}
    queue = deque([indices])
    while queue:
        w = queue.popleft()
        for nb in _move_neighbours(w, cm):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen


def _has_adjacent_pair(w: Tuple[int, ...]) -> bool:
    return any(w[p] == w[p + 1] for p in range(len(w) - 1))


def is_reduced(word: Word) -> bool:
    """Tits' criterion: reduced iff no word in the move orbit has a repeated letter pair."""
    _require_sigma_interval(word)
    p = word.presentation
    cm = build_coxeter_matrix(p.family, p.n)
    orbit = move_orbit(word.sigma_indices(), cm)
    return not any(_has_adjacent_pair(w) for w in orbit)


# -- normal forms ----------------------------------------------------------


def _is_negative(column: Sequence[Fraction]) -> bool:
    # roots are non-negative or non-positive combinations of simple roots
    return any(x < 0 for x in column)


def _shortlex_from_inverse(family: str, n: int, inv: list[list[Fraction]]) -> Tuple[int, ...]:
    """Consume ``inv = rho(w^-1)`` and return the shortlex-least reduced word of w.

    ``s_i`` is a left descent of ``w`` iff ``w^-1(alpha_i)`` (column i) is negative;
    the least left descent is the first letter of the lexicographically least
    reduced word.
    """
    gens = _generator_rows(family, n)
    k = n - 1
    out = []
    while True:
        for i in range(1, k + 1):
            column = [inv[r][i - 1] for r in range(k)]
            if _is_negative(column):
                out.append(i)
                _right_multiply(inv, gens[i - 1], i)
                break
        else:
            return tuple(out)


def _inverse_matrix_of(family: str, n: int, indices: Sequence[int]) -> list[list[Fraction]]:
    m = _matrix_of_indices(family, n, reversed(indices))
    return [list(r) for r in m]


@dataclass(frozen=True)
class ElementHandle:
    """A strand-group element: shortlex normal word plus its exact matrix."""

    presentation: Presentation
    normal_word: Word = field(compare=False)
    certificate: RationalMatrix

    @property
    def length(self) -> int:
        return len(self.normal_word)

    @property
    def indices(self) -> Tuple[int, ...]:
        return self.normal_word.sigma_indices()

    def __mul__(self, other: "ElementHandle") -> "ElementHandle":
        if other.presentation != self.presentation:
            raise PresentationMismatchError(
                f"cannot multiply elements of {self.presentation} and {other.presentation}"
            )
        return normal_form_shortlex(self.normal_word * other.normal_word)

    def inverse(self) -> "ElementHandle":
        return normal_form_shortlex(self.normal_word.inverse())

    def is_identity(self) -> bool:
        return not self.normal_word.letters

    def __str__(self) -> str:
        return str(self.normal_word)

    def to_json(self) -> dict:
        return {
            "presentation": {"family": self.presentation.family, "n": self.presentation.n},
            "normal_word": str(self.normal_word),
            "certificate": matrix_to_json(self.certificate),
        }


def normal_form_shortlex(word: Word) -> ElementHandle:
    _require_sigma_interval(word)
    p = word.presentation
    inv = _inverse_matrix_of(p.family, p.n, word.sigma_indices())
    normal = _shortlex_from_inverse(p.family, p.n, inv)
    normal_word = Word.from_sigmas(p, normal)
    return ElementHandle(p, normal_word, _matrix_of_indices(p.family, p.n, normal))


def identity_element(presentation: Presentation) -> ElementHandle:
    p = presentation.interval()
    return ElementHandle(p, Word(p), identity_matrix(p.n - 1))


def element_from_indices(presentation: Presentation, indices: Iterable[int]) -> ElementHandle:
    return normal_form_shortlex(Word.from_sigmas(presentation.interval(), indices))


def word_length(word: Word) -> int:
    """Length of the element represented by ``word`` (its reduced length)."""
    return normal_form_shortlex(word).length


def shortlex_key(handle: ElementHandle):
    idx = handle.indices
    return (len(idx), idx)


def cayley_ball(
    presentation: Presentation, radius: int, cap: int = DEFAULT_BALL_CAP
) -> list[Tuple[ElementHandle, int]]:
    """All elements of word length <= radius, sorted shortlex.

    Breadth-first search on the Cayley graph, deduplicated by certificate.
    Raises :class:`BallCapExceeded` once more than ``cap`` elements are found.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    p = presentation.interval()
    k = p.n - 1
    gens = _generator_rows(p.family, p.n)
    start = identity_matrix(k)
    seen = {start: 0}
    frontier = [start]
    for depth in range(1, radius + 1):
        nxt = []
        for mat in frontier:
            for i in range(1, k + 1):
                work = [list(r) for r in mat]
                _right_multiply(work, gens[i - 1], i)
                key = tuple(tuple(r) for r in work)
                if key not in seen:
                    seen[key] = depth
                    nxt.append(key)
                    if len(seen) > cap:
                        raise BallCapExceeded(
                            f"Cayley ball of {p} with radius {radius} exceeds {cap} elements"
                        )
        frontier = nxt
        if not frontier:
            break
    out = []
    for mat, depth in seen.items():
        inv = [list(r) for r in _invert_unimodular(mat)]
        normal = _shortlex_from_inverse(p.family, p.n, inv)
        out.append((ElementHandle(p, Word.from_sigmas(p, normal), mat), depth))
    out.sort(key=lambda pair: shortlex_key(pair[0]))
    return out


def _invert_unimodular(mat: RationalMatrix) -> RationalMatrix:
    """Exact Gauss-Jordan inverse."""
    k = len(mat)
    aug = [list(row) + [Fraction(int(r == c)) for c in range(k)] for r, row in enumerate(mat)]
    for col in range(k):
        pivot = next(r for r in range(col, k) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[k:]) for row in aug)


def ball_size(presentation: Presentation, radius: int, cap: int = DEFAULT_BALL_CAP) -> int:
    return len(cayley_ball(presentation, radius, cap))


__all__ = [
    "INF",
    "CoxeterMatrix",
    "ElementHandle",
    "RationalMatrix",
    "build_coxeter_matrix",
    "bilinear_form",
    "cayley_ball",
    "element_from_indices",
    "elements_equal",
    "generator_matrix",
    "identity_element",
    "identity_matrix",
    "is_reduced",
    "matmul",
    "matrix_from_json",
    "matrix_to_json",
    "move_orbit",
    "normal_form_shortlex",
    "shortlex_key",
    "tits_matrix",
    "word_length",
]
