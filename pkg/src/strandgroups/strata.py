"""Stratification of N-particle configuration space by coincidence pattern.

A configuration lies in the stratum of the integer partition formed by the
sizes of its groups of coinciding particles.  Everything here is exact:
positions are :class:`fractions.Fraction` and coincidence is equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Optional, Sequence, Tuple

from .errors import GeometryError

Partition = Tuple[int, ...]


def partitions(n: int) -> list[Partition]:
    """All partitions of n, reverse-lexicographic: (4,), (3,1), (2,2), (2,1,1), ..."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def gen(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - part, part):
                yield (part,) + rest

    return list(gen(n, n))


@dataclass(frozen=True)
class StratumInfo:
    partition: Partition
    d: int
    h: int
    codim: int
    stabilizer_order: int
    orbit_size: int

    @property
    def n(self) -> int:
        return sum(self.partition)

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition),
            "d": self.d,
            "components": self.h,
            "codim": self.codim,
            "stabilizer_order": self.stabilizer_order,
            "orbit_size": self.orbit_size,
        }


def stratum_info(partition: Sequence[int], d: int = 1) -> StratumInfo:
    if d < 1:
        raise ValueError("base dimension d must be >= 1")
    parts = tuple(sorted((int(x) for x in partition), reverse=True))
    if not parts or any(x < 1 for x in parts):
        raise ValueError(f"not a partition: {partition!r}")
    n = sum(parts)
    stab = prod(factorial(x) for x in parts)
    h = factorial(n) // stab
    return StratumInfo(
        partition=parts,
        d=d,
        h=h,
        codim=sum((x - 1) * d for x in parts),
        stabilizer_order=stab,
        orbit_size=factorial(n) // stab,
    )


@dataclass(frozen=True)
class Geometry:
    """``interval`` (circumference None) or ``ring`` of the given circumference."""

    kind: str = "interval"
    circumference: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in ("interval", "ring"):
            raise GeometryError(f"unknown geometry {self.kind!r}")
        if self.kind == "ring":
            if self.circumference is None or Fraction(self.circumference) <= 0:
                raise GeometryError("ring geometry needs a positive circumference")
            object.__setattr__(self, "circumference", Fraction(self.circumference))

    @property
    def is_ring(self) -> bool:
        return self.kind == "ring"

    def to_json(self):
        if self.is_ring:
            c = self.circumference
            return {"ring": {"circumference": f"{c.numerator}/{c.denominator}"}}
        return "interval"


INTERVAL = Geometry()


def ring(circumference=1) -> Geometry:
    return Geometry("ring", Fraction(circumference))


def geometry_from_json(data) -> Geometry:
    if data == "interval":
        return INTERVAL
    if isinstance(data, dict) and "interval" in data:
        return INTERVAL
    if isinstance(data, dict) and "ring" in data:
        return ring(parse_rational(data["ring"]["circumference"]))
    raise GeometryError(f"unrecognised geometry {data!r}")


def parse_rational(value) -> Fraction:
    """Exact rational from a ``"p/q"`` string; floats are refused."""
    if isinstance(value, bool) or not isinstance(value, str):
        raise GeometryError(f"numbers must be exact rational strings, got {value!r}")
    try:
        return Fraction(value.strip())
    except ValueError as exc:
        raise GeometryError(f"bad rational {value!r}") from exc


def rational_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Configuration:
    geometry: Geometry
    positions: Tuple[Fraction, ...]

    def __post_init__(self):
        pos = tuple(Fraction(x) for x in self.positions)
        if self.geometry.is_ring:
            c = self.geometry.circumference
            pos = tuple(x % c for x in pos)
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return len(self.positions)

    @classmethod
    def from_json(cls, data: dict) -> "Configuration":
        geom = geometry_from_json(data.get("geometry", "interval"))
        return cls(geom, tuple(parse_rational(x) for x in data["positions"]))


@dataclass(frozen=True)
class Classification:
    partition: Partition
    groups: Tuple[Tuple[int, ...], ...]
    in_delta2: bool
    in_delta3: bool
    in_delta22: bool

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition),
            "groups": [list(g) for g in self.groups],
            "delta2": self.in_delta2,
            "delta3": self.in_delta3,
            "delta22": self.in_delta22,
        }


def coincidence_flags(group_sizes: Sequence[int]) -> Tuple[bool, bool, bool]:
    """(Delta_2, Delta_3, Delta_2,2) membership from the sizes of coinciding groups.

    Delta_2,2 needs two disjoint coinciding pairs; a single group of four or
    more particles already contains two.
    """
    big = [s for s in group_sizes if s >= 2]
    d2 = bool(big)
    d3 = any(s >= 3 for s in big)
    d22 = len(big) >= 2 or any(s >= 4 for s in big)
    return d2, d3, d22


def classify_configuration(config: Configuration) -> Classification:
    """Group particle labels (1-based) by exactly equal position."""
    buckets: dict[Fraction, list[int]] = {}
    for label, x in enumerate(config.positions, start=1):
        buckets.setdefault(x, []).append(label)
    groups = tuple(sorted((tuple(g) for g in buckets.values()), key=lambda g: g[0]))
    sizes = sorted((len(g) for g in groups), reverse=True)
    d2, d3, d22 = coincidence_flags(sizes)
    return Classification(tuple(sizes), groups, d2, d3, d22)


def ordering_sector(config: Configuration) -> Tuple[int, ...]:
    """Label of the connected component of the coincidence-free space.

    Interval: labels in increasing position.  Ring: the cyclic order, rotated
    so that label 1 comes first.
    """
    cls = classify_configuration(config)
    if cls.in_delta2:
        raise GeometryError(
            f"configuration lies on a coincidence locus (groups {cls.groups}); no sector"
        )
    order = tuple(
        label for _, label in sorted((x, i) for i, x in enumerate(config.positions, start=1))
    )
    if not config.geometry.is_ring:
        return order
    k = order.index(1)
    return order[k:] + order[:k]


def sector_count(n: int, geometry: str = "interval") -> int:
    return factorial(n) if geometry == "interval" else factorial(n - 1)
