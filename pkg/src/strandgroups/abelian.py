"""Abelianization by integer Smith normal form, and abelian characters.

Generators are ordered ``s1 .. s_{N-1}`` then (ring geometry) ``t1 .. tN``.
The shift ``z`` is a defined element and never a column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence, Tuple

from .coxeter import INF, build_coxeter_matrix
from .words import Letter, Presentation, Word

IntMatrix = list[list[int]]


# -- defining relations ------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __str__(self) -> str:
        return f"{self.lhs or '1'} = {self.rhs or '1'}"


def _alternating(i: int, j: int, m: int) -> Tuple[int, ...]:
    return tuple(i if k % 2 == 0 else j for k in range(m))


def defining_relations(presentation: Presentation) -> list[Relation]:
    """Relations as ``lhs = rhs`` pairs, in the order: involutions, Coxeter
    relations of finite order, then the wreath relations of ring geometry."""
    p = presentation
    k = p.n - 1
    cm = build_coxeter_matrix(p.family, p.n)
    rels = []
    for i in range(1, k + 1):
        rels.append(Relation(Word.from_sigmas(p, (i, i)), Word(p)))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            m = cm.m(i, j)
            if m != INF:
                rels.append(
                    Relation(
                        Word.from_sigmas(p, _alternating(i, j, m)),
                        Word.from_sigmas(p, _alternating(j, i, m)),
                    )
                )
    if p.is_ring:
        t = lambda j, e=1: Letter("t", j, e)  # noqa: E731
        s = lambda i: Letter("s", i)  # noqa: E731
        for i in range(1, k + 1):
            for j in range(1, p.n + 1):
                if j == i:
                    rels.append(Relation(Word(p, (t(i), s(i))), Word(p, (s(i), t(i + 1)))))
                elif j != i + 1:
                    rels.append(Relation(Word(p, (t(j), s(i))), Word(p, (s(i), t(j)))))
        for a in range(1, p.n + 1):
            for b in range(a + 1, p.n + 1):
                rels.append(Relation(Word(p, (t(a), t(b))), Word(p, (t(b), t(a)))))
    return rels


def generator_names(presentation: Presentation) -> list[str]:
    return [str(g) for g in presentation.generators()]


def exponent_vector(word: Word) -> list[int]:
    """Abelianized image of a word; ``z`` counts as ``t1 s1 ... s_{N-1}``."""
    p = word.presentation
    k = p.n - 1
    vec = [0] * (k + (p.n if p.is_ring else 0))
    for letter in word.letters:
        if letter.kind == "s":
            vec[letter.index - 1] += 1
        elif letter.kind == "t":
            vec[k + letter.index - 1] += letter.exp
        else:
            vec[k] += letter.exp
            for i in range(k):
                vec[i] += letter.exp
    return vec


@dataclass(frozen=True)
class RelationMatrix:
    generators: Tuple[str, ...]
    rows: Tuple[Tuple[int, ...], ...]

    def as_lists(self) -> IntMatrix:
        return [list(r) for r in self.rows]


def relation_matrix(presentation: Presentation) -> RelationMatrix:
    rows = []
    for rel in defining_relations(presentation):
        row = tuple(
            a - b for a, b in zip(exponent_vector(rel.lhs), exponent_vector(rel.rhs))
        )
        if any(row):
            rows.append(row)
    return RelationMatrix(tuple(generator_names(presentation)), tuple(rows))


# -- Smith normal form ------------------------------------------------------


@dataclass(frozen=True)
class SmithResult:
    diagonal: Tuple[int, ...]
    U: Tuple[Tuple[int, ...], ...]
    V: Tuple[Tuple[int, ...], ...]
    D: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity(n: int) -> IntMatrix:
    return [[int(r == c) for c in range(n)] for r in range(n)]


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    if not cols:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> SmithResult:
    """Exact SNF with unimodular ``U``, ``V`` such that ``U . M . V = D``.

    Pivoting on the entry of least absolute value; the diagonal satisfies
    ``d_1 | d_2 | ...`` with non-negative entries.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for m in (a, V):
            for row in m:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):  # col dst += f * col src
        for m in (a, V):
            for row in m:
                row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[r][c]), r, c) for r in range(t, rows) for c in range(t, cols) if a[r][c]]
        if not nonzero:
            break
        _, r, c = min(nonzero)
        swap_rows(t, r)
        swap_cols(t, c)
        while True:
            done = True
            for r in range(t + 1, rows):
                if a[r][t]:
                    add_row(t, r, -(a[r][t] // a[t][t]))
                    if a[r][t]:
                        done = False
            for c in range(t + 1, cols):
                if a[t][c]:
                    add_col(t, c, -(a[t][c] // a[t][t]))
                    if a[t][c]:
                        done = False
            if not done:
                nonzero = [(abs(a[r][t]), r, t) for r in range(t, rows) if a[r][t]]
                nonzero += [(abs(a[t][c]), t, c) for c in range(t, cols) if a[t][c]]
                _, r, c = min(nonzero)
                swap_rows(t, r)
                swap_cols(t, c)
                continue
            bad = next(
                (
                    (r, c)
                    for r in range(t + 1, rows)
                    for c in range(t + 1, cols)
                    if a[r][c] % a[t][t]
                ),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    freeze = lambda m: tuple(tuple(r) for r in m)  # noqa: E731
    return SmithResult(diag, freeze(U), freeze(V), freeze(a))


# -- abelianization --------------------------------------------------------


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: Tuple[int, ...]

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        counts: dict[int, int] = {}
        for d in self.torsion:
            counts[d] = counts.get(d, 0) + 1
        for d in sorted(counts):
            parts.append(f"Z{d}" if counts[d] == 1 else f"Z{d}^{counts[d]}")
        return " + ".join(parts) if parts else "1"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "group": str(self)}


def abelianization(presentation: Presentation) -> AbelianInvariants:
    rm = relation_matrix(presentation)
    g = len(rm.generators)
    snf = smith_normal_form(rm.as_lists(), ncols=g)
    return AbelianInvariants(g - snf.rank, tuple(d for d in snf.diagonal if d > 1))


# -- characters ------------------------------------------------------------


@dataclass(frozen=True)
class Phase:
    """``exp(2 pi i (root + sum_k free[k] * theta_k))`` with ``root`` in [0, 1)."""

    root: Fraction = Fraction(0)
    free: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "root", Fraction(self.root) % 1)
        object.__setattr__(self, "free", tuple(self.free))

    def __add__(self, other: "Phase") -> "Phase":
        width = max(len(self.free), len(other.free))
        fa = self.free + (0,) * (width - len(self.free))
        fb = other.free + (0,) * (width - len(other.free))
        return Phase(self.root + other.root, tuple(x + y for x, y in zip(fa, fb)))

    def scaled(self, k: int) -> "Phase":
        return Phase(self.root * k, tuple(k * x for x in self.free))

    def normalized(self, width: int) -> "Phase":
        return Phase(self.root, self.free + (0,) * (width - len(self.free)))

    @property
    def is_trivial(self) -> bool:
        return self.root == 0 and not any(self.free)

    def to_json(self) -> dict:
        nonzero = [(k, c) for k, c in enumerate(self.free) if c]
        root = [self.root.numerator, self.root.denominator]
        if not nonzero:
            return {"root_of_unity": root}
        if self.root == 0 and len(nonzero) == 1 and nonzero[0][1] == 1:
            return {"free_param": nonzero[0][0]}
        return {"root_of_unity": root, "free_params": {str(k): c for k, c in nonzero}}

    def __str__(self) -> str:
        bits = []
        if self.root:
            bits.append(f"{self.root.numerator}/{self.root.denominator}")
        for k, c in enumerate(self.free):
            if c:
                bits.append(f"{'' if c == 1 else c}theta{k}")
        return "exp(2pi i (" + " + ".join(bits) + "))" if bits else "1"


@dataclass(frozen=True)
class Character:
    generators: Tuple[str, ...]
    phases: Tuple[Phase, ...]

    def __getitem__(self, name: str) -> Phase:
        return self.phases[self.generators.index(name)]

    def evaluate(self, word: Word) -> Phase:
        vec = exponent_vector(word)
        total = Phase(0, (0,) * max((len(p.free) for p in self.phases), default=0))
        for coeff, phase in zip(vec, self.phases):
            if coeff:
                total = total + phase.scaled(coeff)
        return total

    def to_json(self) -> list:
        return [
            {"generator": g, "phase": ph.to_json()} for g, ph in zip(self.generators, self.phases)
        ]


@dataclass(frozen=True)
class CharacterTable:
    presentation: Presentation
    invariants: AbelianInvariants
    characters: Tuple[Character, ...]

    @property
    def free_rank(self) -> int:
        return self.invariants.free_rank

    def to_json(self) -> dict:
        return {
            "group": str(self.invariants),
            "free_rank": self.free_rank,
            "characters": [c.to_json() for c in self.characters],
        }


def enumerate_characters(presentation: Presentation) -> CharacterTable:
    """All homomorphisms to U(1), as finitely many torsion characters, each
    carrying ``free_rank`` continuous phase parameters.

    With ``U M V = D`` a character ``phi`` kills the relations iff
    ``D (V^-1 phi) = 0 mod 1``; so ``phi = V psi`` with ``psi_k`` a multiple of
    ``1/d_k`` for nonzero ``d_k`` and a free parameter where ``d_k = 0``.
    """
    rm = relation_matrix(presentation)
    g = len(rm.generators)
    snf = smith_normal_form(rm.as_lists(), ncols=g)
    diag = list(snf.diagonal) + [0] * (g - len(snf.diagonal))
    V = [list(r) for r in snf.V]
    free_cols = [k for k in range(g) if diag[k] == 0]
    # orient each free direction so its first nonzero coefficient is positive
    for k in free_cols:
        lead = next(V[r][k] for r in range(g) if V[r][k])
        if lead < 0:
            for r in range(g):
                V[r][k] = -V[r][k]
    torsion_cols = [k for k in range(g) if diag[k] > 1]
    width = len(free_cols)
    chars = []
    for choice in product(*(range(diag[k]) for k in torsion_cols)):
        psi = [Fraction(0)] * g
        for k, a in zip(torsion_cols, choice):
            psi[k] = Fraction(a, diag[k])
        phases = []
        for r in range(g):
            root = sum((V[r][k] * psi[k] for k in range(g)), Fraction(0))
            free = tuple(V[r][k] for k in free_cols)
            phases.append(Phase(root, free).normalized(width))
        chars.append(Character(rm.generators, tuple(phases)))
    inv = AbelianInvariants(width, tuple(d for d in diag if d > 1))
    return CharacterTable(presentation, inv, tuple(chars))


def kills_relations(character: Character, presentation: Presentation) -> bool:
    return all(
        character.evaluate(rel.lhs) == character.evaluate(rel.rhs)
        for rel in defining_relations(presentation)
    )
