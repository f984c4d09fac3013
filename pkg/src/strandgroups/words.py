"""Presentations, the word DSL, free reduction and the permutation image.

Words are immutable tuples of :class:`Letter`.  Exchange letters ``s<i>`` are
involutions, so they carry no exponent; translation letters ``t<i>`` and the
shift ``z`` carry an exponent of +1 or -1 and only exist in ring geometry.

Permutations are tuples ``p`` of 1-based images, ``p[j - 1]`` being the image
of ``j``.  Composition follows ``(f o g)(x) = f(g(x))`` and the image map
satisfies ``image(u v) = image(u) o image(v)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

from .errors import (
    GeneratorIndexError,
    GeometryError,
    UnsupportedFamilyError,
    WordSyntaxError,
)

FAMILIES = ("S", "T", "F", "W")
GEOMETRIES = ("interval", "ring")

FAMILY_NAMES = {
    "S": "symmetric group",
    "T": "traid group",
    "F": "fraid group",
    "W": "free (universal) Coxeter group",
}

Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    family: str
    n: int
    geometry: str = "interval"

    def __post_init__(self):
        if self.family == "B":
            raise UnsupportedFamilyError(
                "family B (braid group) is not supported: its generators are not "
                "involutions, so the exact reflection certificate does not apply"
            )
        if self.family not in FAMILIES:
            raise UnsupportedFamilyError(
                f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}"
            )
        if not isinstance(self.n, int) or self.n < 2:
            raise GeneratorIndexError(f"need at least 2 particles, got n={self.n!r}")
        if self.geometry not in GEOMETRIES:
            raise GeometryError(
                f"unknown geometry {self.geometry!r}; expected interval or ring"
            )

    @property
    def is_ring(self) -> bool:
        return self.geometry == "ring"

    @property
    def n_sigma(self) -> int:
        return self.n - 1

    def interval(self) -> "Presentation":
        """The interval presentation of the same family (the strand group)."""
        if not self.is_ring:
            return self
        return Presentation(self.family, self.n, "interval")

    def ring(self) -> "Presentation":
        if self.is_ring:
            return self
        return Presentation(self.family, self.n, "ring")

    def generators(self) -> list["Letter"]:
        gens = [Letter("s", i) for i in range(1, self.n)]
        if self.is_ring:
            gens += [Letter("t", i) for i in range(1, self.n + 1)]
        return gens

    def __str__(self) -> str:
        suffix = "(S1)" if self.is_ring else ""
        return f"{self.family}_{self.n}{suffix}"


@dataclass(frozen=True, order=True)
class Letter:
    kind: str
    index: int = 0
    exp: int = 1

    def __post_init__(self):
        if self.kind not in ("s", "t", "z"):
            raise ValueError(f"unknown letter kind {self.kind!r}")
        if self.kind == "s" and self.exp != 1:
            # involution: normalize
            object.__setattr__(self, "exp", 1)
        elif self.exp not in (1, -1):
            raise ValueError("letter exponent must be +1 or -1")
        if self.kind == "z" and self.index != 0:
            object.__setattr__(self, "index", 0)

    def inverse(self) -> "Letter":
        if self.kind == "s":
            return self
        return Letter(self.kind, self.index, -self.exp)

    def __str__(self) -> str:
        base = "z" if self.kind == "z" else f"{self.kind}{self.index}"
        return base if self.exp == 1 else f"{base}^-1"


def _check_letter(letter: Letter, pres: Presentation) -> None:
    if letter.kind != "s" and not pres.is_ring:
        raise GeometryError(
            f"letter {letter} is only valid in ring geometry (presentation {pres})"
        )
    if letter.kind == "s" and not 1 <= letter.index <= pres.n - 1:
        raise GeneratorIndexError(
            f"exchange index s{letter.index} out of range 1..{pres.n - 1} for {pres}"
        )
    if letter.kind == "t" and not 1 <= letter.index <= pres.n:
        raise GeneratorIndexError(
            f"translation index t{letter.index} out of range 1..{pres.n} for {pres}"
        )


@dataclass(frozen=True)
class Word:
    presentation: Presentation
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for letter in letters:
            _check_letter(letter, self.presentation)

    @classmethod
    def from_sigmas(cls, presentation: Presentation, indices: Iterable[int]) -> "Word":
        return cls(presentation, tuple(Letter("s", i) for i in indices))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        return self.letters[item]

    def __mul__(self, other: "Word") -> "Word":
        if other.presentation != self.presentation:
            from .errors import PresentationMismatchError

            raise PresentationMismatchError(
                f"cannot concatenate words of {self.presentation} and {other.presentation}"
            )
        return Word(self.presentation, self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.presentation, self.letters * k)

    def inverse(self) -> "Word":
        return Word(self.presentation, tuple(l.inverse() for l in reversed(self.letters)))

    @property
    def is_sigma_only(self) -> bool:
        return all(l.kind == "s" for l in self.letters)

    def sigma_indices(self) -> Tuple[int, ...]:
        if not self.is_sigma_only:
            raise GeometryError(f"word {self} contains ring letters")
        return tuple(l.index for l in self.letters)

    def __str__(self) -> str:
        return word_to_text(self)


_TOKEN = re.compile(r"(?:([st])([0-9]+)|(z))(?:\^(-?[0-9]+))?")


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def parse_word(text: str, presentation: Presentation) -> Word:
    """Parse the ASCII word DSL, e.g. ``"t1^-1 z s2^3"``.

    Exponents are expanded into repeated letters; ``s`` letters ignore the sign
    of their exponent since exchanges are involutions.
    """
    letters: list[Letter] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected character {ch!r}", _byte_offset(text, pos))
        kind, idx, z, exp_text = m.groups()
        if idx is not None and int(idx) == 0:
            raise GeneratorIndexError(
                f"generator index must be positive, got {kind}0 "
                f"(byte offset {_byte_offset(text, pos)})"
            )
        exp = 1
        if exp_text is not None:
            exp = int(exp_text)
            if exp == 0:
                raise WordSyntaxError(
                    "exponent must be a nonzero integer", _byte_offset(text, m.start(4))
                )
        end = m.end()
        if end < len(text) and text[end] == "^":
            raise WordSyntaxError("malformed exponent", _byte_offset(text, end))
        if z:
            letter = Letter("z", 0, 1 if exp > 0 else -1)
        else:
            letter = Letter(kind, int(idx), 1 if exp > 0 else -1)
        _check_letter(letter, presentation)
        letters.extend([letter] * abs(exp))
        pos = end
    return Word(presentation, tuple(letters))


def word_to_text(word: Word) -> str:
    return " ".join(str(l) for l in word.letters)


def free_reduce(word: Word) -> Word:
    """Cancel adjacent ``s_i s_i``, ``t_i t_i^-1`` and ``z z^-1`` pairs."""
    stack: list[Letter] = []
    for letter in word.letters:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return Word(word.presentation, tuple(stack))


# -- permutations ----------------------------------------------------------


def identity_permutation(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def transposition(n: int, i: int, j: int) -> Permutation:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


def compose(f: Permutation, g: Permutation) -> Permutation:
    """``f o g``: apply ``g`` first."""
    return tuple(f[x - 1] for x in g)


def invert_permutation(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for j, image in enumerate(p, start=1):
        inv[image - 1] = j
    return tuple(inv)


def cycle_notation(p: Permutation) -> str:
    seen = set()
    cycles = []
    for start in range(1, len(p) + 1):
        if start in seen or p[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start - 1]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x - 1]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def shift_permutation(n: int) -> Permutation:
    """Image of ``s1 s2 ... s_{n-1}``: j -> j+1, n -> 1."""
    return tuple(list(range(2, n + 1)) + [1])


def permutation_image(word: Word) -> Permutation:
    """Homomorphism to S_N: ``s_i`` -> (i i+1), ``t_i`` -> id.

    ``z`` is a defined element (``t1 s1 ... s_{N-1}``), so it maps to the image
    of that product rather than to the identity.
    """
    n = word.presentation.n
    result = identity_permutation(n)
    for letter in word.letters:
        if letter.kind == "s":
            g = transposition(n, letter.index, letter.index + 1)
        elif letter.kind == "t":
            continue
        else:
            g = shift_permutation(n)
            if letter.exp < 0:
                g = invert_permutation(g)
        result = compose(result, g)
    return result


def sigma_word_for_permutation(p: Sequence[int]) -> Tuple[int, ...]:
    """Shortlex-least reduced sigma word whose image is ``p``.

    Greedy on left descents: ``i`` is a left descent of ``w`` iff
    ``w^-1(i) > w^-1(i+1)``.
    """
    inv = list(invert_permutation(tuple(p)))
    out = []
    while True:
        for i in range(1, len(inv)):
            if inv[i - 1] > inv[i]:
                # w -> s_i w  ==> w^-1 -> w^-1 s_i  (swap positions i, i+1)
                inv[i - 1], inv[i] = inv[i], inv[i - 1]
                out.append(i)
                break
        else:
            return tuple(out)
