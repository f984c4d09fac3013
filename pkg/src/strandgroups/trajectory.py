"""Exact event detection and compilation of particle loops into group elements.

Particles move piecewise-linearly with rational breakpoints.  Between
consecutive critical times (breakpoints, coincidences, cut crossings) the
positional order is constant, so a loop is described by what happens at each
critical time.

Ranks.  On the interval particles are ranked by increasing position.  On the
ring they are ranked by decreasing angle measured from the cut at angle 0:
rank 1 sits just clockwise of the cut.  A counterclockwise cut crossing takes
the rank-1 particle to rank N and emits ``z = t1 s1 ... s_{N-1}``; a clockwise
crossing takes rank N to rank 1 and emits ``z^-1``.  In both cases the emitted
letters permute ranks exactly as the particles do, so the label arrangement
after a loop is ``initial o image(word)``.

Simultaneity.  The cut is treated as sitting at angle ``0+``.  At one critical
time the emission order is: clockwise cut crossings (slowest first), then the
coincidence clusters (as the shortlex-least reduced word of the rank
permutation they produce), then counterclockwise cut crossings (fastest first).
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from . import coxeter, ring
from .coxeter import ElementHandle
from .errors import (
    DegenerateTangencyError,
    EndpointMismatchError,
    GeometryError,
    PolicyViolationError,
    TrajectoryError,
)
from .strata import INTERVAL, Geometry, coincidence_flags, geometry_from_json, parse_rational
from .words import (
    Letter,
    Permutation,
    Presentation,
    Word,
    compose,
    identity_permutation,
    invert_permutation,
    shift_permutation,
    sigma_word_for_permutation,
)

POLICIES = ("Q", "Q2", "Q3", "Q22", "Q3_22")

# family each policy's complement space realizes; Q2 kills every exchange
POLICY_FAMILY = {"Q": "S", "Q3": "T", "Q22": "F", "Q3_22": "W"}


# -- trajectories ------------------------------------------------------------


class Path:
    """One particle: strictly increasing breakpoint times, linear in between."""

    def __init__(self, points: Sequence[Tuple[Fraction, Fraction]]):
        if len(points) < 2:
            raise TrajectoryError("each particle needs at least two breakpoints")
        self.times = [Fraction(t) for t, _ in points]
        self.positions = [Fraction(x) for _, x in points]
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise TrajectoryError("breakpoint times must strictly increase")
        self.slopes = [
            (x1 - x0) / (t1 - t0)
            for t0, t1, x0, x1 in zip(self.times, self.times[1:], self.positions, self.positions[1:])
        ]

    @property
    def start(self) -> Fraction:
        return self.times[0]

    @property
    def end(self) -> Fraction:
        return self.times[-1]

    def _segment(self, t: Fraction, right: bool) -> int:
        if right:
            k = bisect.bisect_right(self.times, t) - 1
        else:
            k = bisect.bisect_left(self.times, t) - 1
        return min(max(k, 0), len(self.times) - 2)

    def velocity(self, t: Fraction, right: bool = True) -> Fraction:
        return self.slopes[self._segment(t, right)]

    def position(self, t: Fraction) -> Fraction:
        k = self._segment(t, True)
        t0, x0 = self.times[k], self.positions[k]
        return x0 if t == t0 else x0 + self.slopes[k] * (t - t0)

    def points(self) -> list[Tuple[Fraction, Fraction]]:
        return list(zip(self.times, self.positions))


@dataclass(frozen=True)
class Trajectory:
    geometry: Geometry
    paths: Tuple[Path, ...]
    bounds: Optional[Tuple[Fraction, Fraction]] = None
    policy: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))
        if not self.paths:
            raise TrajectoryError("a trajectory needs at least one particle")
        starts = {p.start for p in self.paths}
        ends = {p.end for p in self.paths}
        if len(starts) != 1 or len(ends) != 1:
            raise TrajectoryError("all particles must share start and end times")
        if self.policy is not None and self.policy not in POLICIES:
            raise TrajectoryError(f"unknown policy {self.policy!r}")
        if self.bounds is not None:
            if self.geometry.is_ring:
                raise GeometryError("bounds only apply to interval geometry")
            lo, hi = self.bounds
            for label, p in enumerate(self.paths, start=1):
                if any(not lo <= x <= hi for x in p.positions):
                    raise GeometryError(f"particle {label} leaves the interval [{lo}, {hi}]")

    @classmethod
    def from_points(
        cls,
        particles: Sequence[Sequence[Tuple]],
        geometry: Geometry = INTERVAL,
        bounds=None,
        policy: Optional[str] = None,
    ) -> "Trajectory":
        paths = tuple(Path([(Fraction(t), Fraction(x)) for t, x in pts]) for pts in particles)
        if bounds is not None:
            bounds = (Fraction(bounds[0]), Fraction(bounds[1]))
        return cls(geometry, paths, bounds, policy)

    @property
    def n(self) -> int:
        return len(self.paths)

    @property
    def start(self) -> Fraction:
        return self.paths[0].start

    @property
    def end(self) -> Fraction:
        return self.paths[0].end

    def positions(self, t: Fraction) -> Tuple[Fraction, ...]:
        return tuple(p.position(t) for p in self.paths)

    def grid(self) -> list[Fraction]:
        return sorted({t for p in self.paths for t in p.times})

    def reversed(self) -> "Trajectory":
        s, e = self.start, self.end
        paths = tuple(Path([(s + e - t, x) for t, x in reversed(p.points())]) for p in self.paths)
        return Trajectory(self.geometry, paths, self.bounds, self.policy)

    def then(self, other: "Trajectory") -> "Trajectory":
        """Run ``self`` and then ``other`` (time-shifted); labels must line up."""
        if other.geometry != self.geometry or other.n != self.n:
            raise TrajectoryError("cannot concatenate trajectories of different shape")
        shift = self.end - other.start
        paths = []
        for label, (a, b) in enumerate(zip(self.paths, other.paths), start=1):
            if a.positions[-1] != b.positions[0]:
                raise TrajectoryError(f"particle {label} jumps at the junction")
            tail = [(t + shift, x) for t, x in b.points()[1:]]
            paths.append(Path(a.points() + tail))
        return Trajectory(self.geometry, tuple(paths), self.bounds, self.policy)

    def to_json(self) -> dict:
        geom = self.geometry.to_json()
        if self.bounds is not None:
            geom = {"interval": {"bounds": [_q(self.bounds[0]), _q(self.bounds[1])]}}
        out: dict = {
            "geometry": geom,
            "particles": [[[_q(t), _q(x)] for t, x in p.points()] for p in self.paths],
        }
        if self.policy is not None:
            out["policy"] = self.policy
        return out


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _breakpoint(raw) -> Tuple[Fraction, Fraction]:
    if isinstance(raw, dict):
        return parse_rational(raw["t"]), parse_rational(raw["pos"])
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        if all(isinstance(x, (list, tuple)) and len(x) == 2 for x in raw):
            d = dict(raw)
            return parse_rational(d["t"]), parse_rational(d["pos"])
        return parse_rational(raw[0]), parse_rational(raw[1])
    raise TrajectoryError(f"malformed breakpoint {raw!r}")


def trajectory_from_json(data: Union[dict, str]) -> Trajectory:
    """Load a trajectory; every number must be an exact rational string."""
    if isinstance(data, str):
        data = json.loads(data)
    raw_geom = data.get("geometry", "interval")
    geometry = geometry_from_json(raw_geom)
    bounds = None
    if isinstance(raw_geom, dict) and isinstance(raw_geom.get("interval"), dict):
        b = raw_geom["interval"].get("bounds")
        if b is not None:
            bounds = (parse_rational(b[0]), parse_rational(b[1]))
    try:
        particles = data["particles"]
    except KeyError as exc:
        raise TrajectoryError("trajectory JSON needs a 'particles' list") from exc
    paths = tuple(Path([_breakpoint(bp) for bp in pts]) for pts in particles)
    return Trajectory(geometry, paths, bounds, data.get("policy"))


# -- events ----------------------------------------------------------------


@dataclass(frozen=True)
class Event:
    time: Fraction
    kind: str  # crossing | tangency | cut_crossing
    participants: Tuple[int, ...]
    ranks: Tuple[int, ...]
    sign: int = 0

    def to_dict(self) -> dict:
        d = {
            "time": _q(self.time),
            "kind": self.kind,
            "participants": list(self.participants),
            "ranks": list(self.ranks),
        }
        if self.kind == "cut_crossing":
            d["sign"] = self.sign
        return d


@dataclass(frozen=True)
class EventGroup:
    """All events at one critical time."""

    time: Fraction
    events: Tuple[Event, ...]
    cluster_sizes: Tuple[int, ...]

    @property
    def triple(self) -> bool:
        return coincidence_flags(self.cluster_sizes)[1]

    @property
    def double_double(self) -> bool:
        return coincidence_flags(self.cluster_sizes)[2]

    @property
    def simultaneous(self) -> bool:
        return len(self.events) > 1

    def to_dict(self) -> dict:
        return {
            "time": _q(self.time),
            "triple": self.triple,
            "double_double": self.double_double,
            "simultaneous": self.simultaneous,
            "events": [e.to_dict() for e in self.events],
        }


@dataclass(frozen=True)
class EventLog:
    groups: Tuple[EventGroup, ...]

    @property
    def events(self) -> list[Event]:
        return [e for g in self.groups for e in g.events]

    def __len__(self) -> int:
        return len(self.events)

    def to_dict(self) -> dict:
        return {"groups": [g.to_dict() for g in self.groups]}


@dataclass
class _Sweep:
    log: EventLog
    letters: Tuple[Letter, ...]
    initial: Permutation  # rank -> label
    final: Permutation


def _solutions(x0: Fraction, v: Fraction, length: Fraction, period: Optional[Fraction]):
    """Offsets s in [0, length] with x0 + v s = 0 (interval) or in period*Z (ring)."""
    if v == 0:
        return []
    if period is None:
        s = -x0 / v
        return [s] if 0 <= s <= length else []
    lo, hi = sorted((x0, x0 + v * length))
    m = -((-lo) // period)  # ceil
    out = []
    while m * period <= hi:
        out.append((m * period - x0) / v)
        m += 1
    return out


def critical_times(traj: Trajectory) -> list[Fraction]:
    period = traj.geometry.circumference if traj.geometry.is_ring else None
    grid = traj.grid()
    times = set(grid)
    for a, b in zip(grid, grid[1:]):
        length = b - a
        pos = traj.positions(a)
        vel = [p.velocity(a, True) for p in traj.paths]
        for i in range(traj.n):
            if period is not None:
                times.update(a + s for s in _solutions(pos[i], vel[i], length, period))
            for j in range(i + 1, traj.n):
                dx, dv = pos[i] - pos[j], vel[i] - vel[j]
                if dv == 0:
                    same = dx == 0 if period is None else dx % period == 0
                    if same:
                        raise DegenerateTangencyError(
                            f"particles {i + 1} and {j + 1} coincide on the whole "
                            f"time interval [{_q(a)}, {_q(b)}]"
                        )
                    continue
                times.update(a + s for s in _solutions(dx, dv, length, period))
    return sorted(t for t in times if traj.start < t < traj.end)


def _angle(traj: Trajectory, x: Fraction) -> Fraction:
    """Ring angle with the cut perturbed to 0+: angle 0 reads as C."""
    c = traj.geometry.circumference
    a = x % c
    return c if a == 0 else a


def _ranking(traj: Trajectory, keys: Sequence) -> Permutation:
    """rank -> label for the given per-particle sort keys."""
    labels = range(1, traj.n + 1)
    if traj.geometry.is_ring:
        return tuple(sorted(labels, key=lambda l: keys[l - 1], reverse=True))
    return tuple(sorted(labels, key=lambda l: keys[l - 1]))


def _generic_ranking(traj: Trajectory, t: Fraction) -> Permutation:
    pos = traj.positions(t)
    if len(set(_angle(traj, x) if traj.geometry.is_ring else x for x in pos)) < traj.n:
        raise TrajectoryError(f"configuration at time {_q(t)} has a coincidence")
    if traj.geometry.is_ring:
        return _ranking(traj, [_angle(traj, x) for x in pos])
    return _ranking(traj, pos)


def _check_endpoints(traj: Trajectory) -> None:
    for when in (traj.start, traj.end):
        pos = traj.positions(when)
        if traj.geometry.is_ring:
            c = traj.geometry.circumference
            on_cut = [i + 1 for i, x in enumerate(pos) if x % c == 0]
            if on_cut:
                raise TrajectoryError(
                    f"particle(s) {on_cut} sit on the cut at time {_q(when)}; "
                    "endpoints must be generic"
                )
        _generic_ranking(traj, when)


def _sweep(traj: Trajectory) -> _Sweep:
    _check_endpoints(traj)
    n = traj.n
    is_ring = traj.geometry.is_ring
    c = traj.geometry.circumference
    state = _generic_ranking(traj, traj.start)
    initial = state
    letters: list[Letter] = []
    groups: list[EventGroup] = []
    shift = shift_permutation(n) if n >= 2 else (1,)
    unshift = invert_permutation(shift)

    for tau in critical_times(traj):
        pos = traj.positions(tau)
        vl = [p.velocity(tau, False) for p in traj.paths]
        vr = [p.velocity(tau, True) for p in traj.paths]
        if is_ring:
            raw = [x % c for x in pos]
            ang = [_angle(traj, x) for x in pos]
            before = [
                (Fraction(0), -v) if a == 0 and v < 0 else (aa, -v)
                for a, aa, v in zip(raw, ang, vl)
            ]
            after = [
                (Fraction(0), v) if a == 0 and v > 0 else (aa, v)
                for a, aa, v in zip(raw, ang, vr)
            ]
            s1 = [(aa, -v) for aa, v in zip(ang, vl)]
            s2 = [(aa, v) for aa, v in zip(ang, vr)]
            down = sorted((l for l in range(1, n + 1) if raw[l - 1] == 0 and vl[l - 1] < 0),
                          key=lambda l: -vl[l - 1])
            up = sorted((l for l in range(1, n + 1) if raw[l - 1] == 0 and vr[l - 1] > 0),
                        key=lambda l: -vr[l - 1])
            where = ang
        else:
            before = s1 = [(x, -v) for x, v in zip(pos, vl)]
            after = s2 = [(x, v) for x, v in zip(pos, vr)]
            down, up = [], []
            where = pos

        if _ranking(traj, before) != state:
            raise TrajectoryError(f"internal: rank bookkeeping diverged at {_q(tau)}")
        events: list[Event] = []
        for label in down:
            rank = state.index(label) + 1
            events.append(Event(tau, "cut_crossing", (label,), (rank,), -1))
            letters.append(Letter("z", 0, -1))
            state = compose(state, unshift)

        r1 = _ranking(traj, s1)
        r2 = _ranking(traj, s2)
        if r1 != state:
            raise TrajectoryError(f"internal: cut bookkeeping diverged at {_q(tau)}")
        buckets: dict = {}
        for label in range(1, n + 1):
            buckets.setdefault(where[label - 1], []).append(label)
        clusters = sorted(
            (tuple(sorted(b, key=lambda l: r1.index(l))) for b in buckets.values() if len(b) > 1),
            key=lambda b: r1.index(b[0]),
        )
        for cl in clusters:
            before_order = [l for l in r1 if l in cl]
            after_order = [l for l in r2 if l in cl]
            kind = "crossing" if before_order != after_order else "tangency"
            ranks = tuple(r1.index(l) + 1 for l in cl)
            events.append(Event(tau, kind, cl, ranks))
        perm = compose(invert_permutation(r1), r2)
        letters.extend(Letter("s", i) for i in sigma_word_for_permutation(perm))
        state = r2

        for label in up:
            rank = state.index(label) + 1
            events.append(Event(tau, "cut_crossing", (label,), (rank,), 1))
            letters.append(Letter("z", 0, 1))
            state = compose(state, shift)

        if _ranking(traj, after) != state:
            raise TrajectoryError(f"internal: rank bookkeeping diverged after {_q(tau)}")
        if events:
            groups.append(EventGroup(tau, tuple(events), tuple(len(cl) for cl in clusters)))

    final = _generic_ranking(traj, traj.end)
    if final != state:
        raise TrajectoryError("internal: final ranking disagrees with the sweep")
    return _Sweep(EventLog(tuple(groups)), tuple(letters), initial, final)


def detect_events(traj: Trajectory) -> EventLog:
    return _sweep(traj).log


# -- policies ----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    time: Fraction
    locus: str  # delta2 | delta3 | delta22
    participants: Tuple[Tuple[int, ...], ...]

    def describe(self) -> str:
        groups = ", ".join("{" + ",".join(map(str, sorted(g))) + "}" for g in self.participants)
        return f"{self.locus} coincidence at t={_q(self.time)} among {groups}"

    def to_dict(self) -> dict:
        return {
            "time": _q(self.time),
            "locus": self.locus,
            "participants": [list(g) for g in self.participants],
        }


@dataclass(frozen=True)
class ValidationReport:
    policy: str
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }


def _excluded(policy: str) -> Tuple[str, ...]:
    return {
        "Q": (),
        "Q2": ("delta2",),
        "Q3": ("delta3",),
        "Q22": ("delta22",),
        "Q3_22": ("delta3", "delta22"),
    }[policy]


def _violations(log: EventLog, policy: str) -> Tuple[Violation, ...]:
    if policy not in POLICIES:
        raise TrajectoryError(f"unknown policy {policy!r}; expected one of {', '.join(POLICIES)}")
    excluded = _excluded(policy)
    out = []
    for g in log.groups:
        clusters = tuple(e.participants for e in g.events if e.kind != "cut_crossing")
        if not clusters:
            continue
        d2, d3, d22 = coincidence_flags([len(cl) for cl in clusters])
        for locus, hit in (("delta2", d2), ("delta3", d3), ("delta22", d22)):
            if hit and locus in excluded:
                out.append(Violation(g.time, locus, clusters))
    return tuple(out)


def validate(traj: Trajectory, policy: Optional[str] = None) -> ValidationReport:
    """Every coincidence that the policy excludes, with time and participants."""
    policy = policy or traj.policy or "Q"
    return ValidationReport(policy, _violations(detect_events(traj), policy))


def check_policy(presentation: Presentation, policy: str) -> None:
    if policy not in POLICIES:
        raise TrajectoryError(f"unknown policy {policy!r}; expected one of {', '.join(POLICIES)}")
    want = POLICY_FAMILY.get(policy)
    if want is not None and want != presentation.family:
        raise TrajectoryError(
            f"policy {policy} realizes family {want}, not {presentation.family}"
        )


# -- compilation -------------------------------------------------------------


@dataclass(frozen=True)
class CompiledLoop:
    word: Word
    element: Union[ElementHandle, ring.WreathElement]
    is_pure: bool
    permutation: Permutation
    log: EventLog

    def to_dict(self) -> dict:
        if isinstance(self.element, ring.WreathElement):
            element = self.element.to_json()
        else:
            element = str(self.element.normal_word)
        return {
            "word": str(self.word),
            "element": element,
            "is_pure": self.is_pure,
            "permutation": list(self.permutation),
        }


def endpoint_permutation(traj: Trajectory) -> Permutation:
    """``initial^-1 o final`` on rank arrangements: rank r at the end holds the
    particle that started at rank ``p[r-1]``."""
    _check_endpoints(traj)
    initial = _generic_ranking(traj, traj.start)
    final = _generic_ranking(traj, traj.end)
    return compose(invert_permutation(initial), final)


def _check_loop(traj: Trajectory) -> None:
    a, b = traj.positions(traj.start), traj.positions(traj.end)
    if traj.geometry.is_ring:
        c = traj.geometry.circumference
        a = [x % c for x in a]
        b = [x % c for x in b]
    if sorted(a) != sorted(b):
        raise EndpointMismatchError(
            "final configuration is not a relabeling of the initial one: "
            f"{[_q(x) for x in sorted(a)]} vs {[_q(x) for x in sorted(b)]}"
        )


def compile_loop(
    traj: Trajectory, presentation: Presentation, policy: Optional[str] = None
) -> CompiledLoop:
    policy = policy or traj.policy or "Q"
    check_policy(presentation, policy)
    if presentation.n != traj.n:
        raise TrajectoryError(f"{traj.n} particles but presentation {presentation}")
    if presentation.is_ring != traj.geometry.is_ring:
        raise GeometryError(
            f"{traj.geometry.kind} trajectory cannot compile into {presentation}"
        )
    _check_loop(traj)
    sweep = _sweep(traj)
    bad = _violations(sweep.log, policy)
    if bad:
        raise PolicyViolationError(bad)
    word = Word(presentation, sweep.letters)
    if presentation.is_ring:
        element: Union[ElementHandle, ring.WreathElement] = ring.from_word(word)
    else:
        element = coxeter.normal_form_shortlex(word)
    perm = compose(invert_permutation(sweep.initial), sweep.final)
    return CompiledLoop(
        word=word,
        element=element,
        is_pure=perm == identity_permutation(traj.n),
        permutation=perm,
        log=sweep.log,
    )


def winding_by_initial_rank(traj: Trajectory) -> Tuple[int, ...]:
    """Net counterclockwise cut crossings of the particle starting at each rank."""
    if not traj.geometry.is_ring:
        raise GeometryError("winding is only defined on the ring")
    c = traj.geometry.circumference
    initial = _generic_ranking(traj, traj.start)
    out = []
    for label in initial:
        p = traj.paths[label - 1]
        out.append(int(p.positions[-1] // c - p.positions[0] // c))
    return tuple(out)
