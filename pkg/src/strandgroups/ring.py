"""Ring groups G(S1) = Z^N x| G as (winding, strand) pairs.

An element ``(t, g)`` is the word ``t_1^{t_1} ... t_N^{t_N}`` followed by the
strand element ``g``.  Strand elements act on windings through their
permutation image: ``g t_j g^-1 = t_{pi(g)(j)}``.  Multiplication is

    (t, g) (t', g') = (t + pi(g).t', g g')

where ``(pi.t')`` moves coordinate ``j`` of ``t'`` to position ``pi(j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

from . import coxeter
from .coxeter import ElementHandle, element_from_indices, identity_element
from .errors import GeometryError, PresentationMismatchError
from .words import (
    Letter,
    Permutation,
    Presentation,
    Word,
    identity_permutation,
    invert_permutation,
    parse_word,
    permutation_image,
)

Winding = Tuple[int, ...]


def act(perm: Permutation, winding: Sequence[int]) -> Winding:
    out = [0] * len(winding)
    for j, value in enumerate(winding, start=1):
        out[perm[j - 1] - 1] = value
    return tuple(out)


@dataclass(frozen=True)
class WreathElement:
    presentation: Presentation
    winding: Winding
    strand: ElementHandle

    def __post_init__(self):
        if not self.presentation.is_ring:
            raise GeometryError(f"wreath elements need ring geometry, got {self.presentation}")
        object.__setattr__(self, "winding", tuple(int(x) for x in self.winding))
        if len(self.winding) != self.presentation.n:
            raise ValueError("winding vector length must equal n")
        if self.strand.presentation != self.presentation.interval():
            raise PresentationMismatchError(
                f"strand element of {self.strand.presentation} in {self.presentation}"
            )

    @property
    def permutation(self) -> Permutation:
        return permutation_image(self.strand.normal_word)

    @property
    def total_winding(self) -> int:
        return sum(self.winding)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return wreath_multiply(self, other)

    def __pow__(self, k: int) -> "WreathElement":
        base = self if k >= 0 else wreath_inverse(self)
        out = identity(self.presentation)
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "WreathElement":
        return wreath_inverse(self)

    def is_identity(self) -> bool:
        return not any(self.winding) and self.strand.is_identity()

    def to_word(self) -> Word:
        """Canonical word: translations in index order, then the strand normal word."""
        letters = []
        for j, w in enumerate(self.winding, start=1):
            letters += [Letter("t", j, 1 if w > 0 else -1)] * abs(w)
        letters += [Letter("s", i) for i in self.strand.indices]
        return Word(self.presentation, tuple(letters))

    def to_json(self) -> dict:
        return {"winding": list(self.winding), "strand": str(self.strand.normal_word)}

    def __str__(self) -> str:
        return f"({list(self.winding)}, {self.strand.normal_word or 'e'})"


def from_json(data: dict, presentation: Presentation) -> WreathElement:
    strand_word = parse_word(data.get("strand", ""), presentation.interval())
    return WreathElement(
        presentation, tuple(data["winding"]), coxeter.normal_form_shortlex(strand_word)
    )


def identity(presentation: Presentation) -> WreathElement:
    p = presentation.ring()
    return WreathElement(p, (0,) * p.n, identity_element(p))


def _check_same(a: WreathElement, b: WreathElement) -> None:
    if a.presentation != b.presentation:
        raise PresentationMismatchError(
            f"elements of {a.presentation} and {b.presentation}"
        )


def wreath_multiply(a: WreathElement, b: WreathElement) -> WreathElement:
    _check_same(a, b)
    moved = act(a.permutation, b.winding)
    winding = tuple(x + y for x, y in zip(a.winding, moved))
    return WreathElement(a.presentation, winding, a.strand * b.strand)


def wreath_inverse(a: WreathElement) -> WreathElement:
    inv_perm = invert_permutation(a.permutation)
    winding = tuple(-x for x in act(inv_perm, a.winding))
    return WreathElement(a.presentation, winding, a.strand.inverse())


def wreath_equal(a: WreathElement, b: WreathElement) -> bool:
    _check_same(a, b)
    return a.winding == b.winding and a.strand == b.strand


def translation(presentation: Presentation, i: int, exp: int = 1) -> WreathElement:
    p = presentation.ring()
    winding = [0] * p.n
    winding[i - 1] = exp
    return WreathElement(p, tuple(winding), identity_element(p))


def sigma(presentation: Presentation, i: int) -> WreathElement:
    p = presentation.ring()
    return WreathElement(p, (0,) * p.n, element_from_indices(p, [i]))


def strand_element(presentation: Presentation, indices: Sequence[int]) -> WreathElement:
    p = presentation.ring()
    return WreathElement(p, (0,) * p.n, element_from_indices(p, indices))


def _shift(presentation: Presentation) -> WreathElement:
    # zeta = t_1 s_1 s_2 ... s_{N-1}
    p = presentation.ring()
    return translation(p, 1) * strand_element(p, range(1, p.n))


def from_word(word: Word) -> WreathElement:
    """Fold a ring word into pair form by left-to-right multiplication."""
    p = word.presentation
    if not p.is_ring:
        raise GeometryError(f"expected a ring-geometry word, got {p}")
    zeta = _shift(p)
    zeta_inv = zeta.inverse()
    winding = [0] * p.n
    sigmas: list[int] = []
    result = identity(p)

    def flush():
        nonlocal result, winding, sigmas
        if any(winding) or sigmas:
            piece = WreathElement(p, tuple(winding), element_from_indices(p, sigmas))
            result = result * piece
        winding, sigmas = [0] * p.n, []

    for letter in word.letters:
        if letter.kind == "s":
            sigmas.append(letter.index)
        elif letter.kind == "t":
            if sigmas:
                flush()
            winding[letter.index - 1] += letter.exp
        else:
            flush()
            result = result * (zeta if letter.exp > 0 else zeta_inv)
    flush()
    return result


def parse_element(text: str, presentation: Presentation) -> WreathElement:
    return from_word(parse_word(text, presentation.ring()))


# -- distinguished elements ----------------------------------------------


def distinguished(presentation: Presentation, which: str) -> WreathElement:
    """``sigma_N``, ``sigma_0`` or ``zeta`` of the ring presentation.

    sigma_N = s_1 s_2 ... s_{N-1} ... s_2 s_1  (first and last exchange through the rest)
    sigma_0 = t_1 sigma_N t_1^-1                (first and last exchange around the back)
    zeta    = t_1 s_1 ... s_{N-1}              (shift of the cyclic order)
    """
    p = presentation.ring()
    n = p.n
    chain = list(range(1, n)) + list(range(n - 2, 0, -1))
    sigma_n = strand_element(p, chain)
    if which in ("sigma_N", "sigma_n"):
        return sigma_n
    if which in ("sigma_0", "sigma0"):
        t1 = translation(p, 1)
        return t1 * sigma_n * t1.inverse()
    if which == "zeta":
        return _shift(p)
    raise ValueError(f"unknown distinguished element {which!r}")


def affine_generator(presentation: Presentation, k: int) -> WreathElement:
    """``sigma_k`` for 0 <= k <= N-1 (k = 0 is the around-the-back exchange)."""
    if k == 0:
        return distinguished(presentation, "sigma_0")
    return sigma(presentation, k)


@dataclass
class RelationCheck:
    text: str
    holds: bool
    witness: Tuple[str, str]

    def to_dict(self) -> dict:
        return {"relation": self.text, "holds": self.holds, "witness": list(self.witness)}


@dataclass
class AffineReport:
    n: int
    family: str = "S"
    relations: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.relations)

    def failures(self) -> list:
        return [r for r in self.relations if not r.holds]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "all_hold": self.all_hold,
            "relations": [r.to_dict() for r in self.relations],
        }


def verify_affine_presentation(n: int, family: str = "S") -> AffineReport:
    """Check the affine symmetric group relations on sigma_0 .. sigma_{N-1} and
    the shift relations for zeta by exact wreath arithmetic.

    For n = 2 the two affine generators generate an infinite dihedral group, so
    only the involution and shift relations are checked.
    """
    p = Presentation(family, n, "ring")
    gens = [affine_generator(p, k) for k in range(n)]
    zeta = distinguished(p, "zeta")
    zeta_inv = zeta.inverse()
    ident = identity(p)
    report = AffineReport(n, family)

    def record(text: str, lhs: WreathElement, rhs: WreathElement) -> None:
        report.relations.append(RelationCheck(text, wreath_equal(lhs, rhs), (str(lhs), str(rhs))))

    for k, g in enumerate(gens):
        record(f"sigma_{k}^2 = 1", g * g, ident)
    if n >= 3:
        for j in range(n):
            for k in range(j + 1, n):
                a, b = gens[j], gens[k]
                if (k - j) % n in (1, n - 1):
                    record(
                        f"sigma_{j} sigma_{k} sigma_{j} = sigma_{k} sigma_{j} sigma_{k}",
                        a * b * a,
                        b * a * b,
                    )
                else:
                    record(f"sigma_{j} sigma_{k} = sigma_{k} sigma_{j}", a * b, b * a)
    for i in range(n):
        record(
            f"zeta sigma_{i} zeta^-1 = sigma_{(i + 1) % n}",
            zeta * gens[i] * zeta_inv,
            gens[(i + 1) % n],
        )
    zeta_n = zeta ** n
    all_t = WreathElement(p, (1,) * n, identity_element(p))
    record(f"zeta^{n} = " + " ".join(f"t{j}" for j in range(1, n + 1)), zeta_n, all_t)
    for k, g in enumerate(gens):
        record(f"zeta^{n} sigma_{k} = sigma_{k} zeta^{n}", zeta_n * g, g * zeta_n)
    return report


# -- subgroup membership ---------------------------------------------------


def is_pure(element: Union[WreathElement, ElementHandle, Word]) -> bool:
    """Kernel of the map to S_N: the strand permutation is the identity."""
    if isinstance(element, WreathElement):
        perm = element.permutation
        n = element.presentation.n
    elif isinstance(element, ElementHandle):
        perm = permutation_image(element.normal_word)
        n = element.presentation.n
    else:
        perm = permutation_image(element)
        n = element.presentation.n
    return perm == identity_permutation(n)


def in_affine_subgroup(element: WreathElement) -> bool:
    """Kernel of the map to Z_zeta (t_i -> 1, s_i -> 0): total winding zero.

    For families T, F, W this is the twisted subgroup defined the same way.
    """
    return element.total_winding == 0


def ring_generators(presentation: Presentation) -> list[WreathElement]:
    p = presentation.ring()
    gens = [sigma(p, i) for i in range(1, p.n)]
    for j in range(1, p.n + 1):
        gens.append(translation(p, j))
        gens.append(translation(p, j, -1))
    return gens


def ring_cayley_ball(
    presentation: Presentation, radius: int, cap: int = coxeter.DEFAULT_BALL_CAP
) -> list[Tuple[WreathElement, int]]:
    """Breadth-first ball over generators s_i, t_j^{+-1}."""
    from .errors import BallCapExceeded

    p = presentation.ring()
    gens = ring_generators(p)
    start = identity(p)
    seen = {start: 0}
    frontier = [start]
    for depth in range(1, radius + 1):
        nxt = []
        for el in frontier:
            for g in gens:
                new = el * g
                if new not in seen:
                    seen[new] = depth
                    nxt.append(new)
                    if len(seen) > cap:
                        raise BallCapExceeded(
                            f"ring Cayley ball of {p} radius {radius} exceeds {cap} elements"
                        )
        frontier = nxt
    return sorted(
        seen.items(),
        key=lambda kv: (kv[1], kv[0].winding, coxeter.shortlex_key(kv[0].strand)),
    )
