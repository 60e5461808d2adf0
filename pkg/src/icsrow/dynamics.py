from __future__ import annotations

import enum
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Iterable, Sequence

from . import convex
from .convex import (
    ceiling,
    ideal_closure,
    incomparables,
    incomparables_restricted,
    max_elements,
    min_elements,
)
from .poset import Poset, is_linear_extension


class FamilyKind(enum.Enum):
    ICS = "ics"
    ORDER_IDEALS = "order_ideals"


@dataclass(frozen=True)
class Family:
    kind: FamilyKind
    poset: Poset

    def contains(self, s: int) -> bool:
        if self.kind is FamilyKind.ICS:
            return convex.is_interval_closed(self.poset, s)
        return convex.is_order_ideal(self.poset, s)

    def members(self, cap: int = convex.DEFAULT_CAP) -> list[int]:
        if self.kind is FamilyKind.ICS:
            return convex.enumerate_ics(self.poset, cap)
        return convex.enumerate_order_ideals(self.poset, cap)


def ics_family(p: Poset) -> Family:
    return Family(FamilyKind.ICS, p)


def ideal_family(p: Poset) -> Family:
    return Family(FamilyKind.ORDER_IDEALS, p)


def toggle(fam: Family, x: int, s: int) -> int:
    if not 0 <= x < fam.poset.size:
        raise IndexError(f"element {x} out of range")
    t = s ^ (1 << x)
    return t if fam.contains(t) else s


def rowmotion_local(fam: Family, s: int, ext: Sequence[int] | None = None) -> int:
    p = fam.poset
    if ext is None:
        ext = p.canonical_extension
    elif not is_linear_extension(p, ext):
        raise ValueError("not a linear extension")
    for x in reversed(ext):
        s = toggle(fam, x, s)
    return s


def rowmotion_global_simplified(p: Poset, s: int) -> int:
    c = ceiling(p, s)
    dc = ideal_closure(p, c)
    first = incomparables(p, c) & ~s
    second = dc & ~ideal_closure(p, min_elements(p, s) & dc)
    return first | second


def rowmotion_global_threeset(p: Poset, s: int) -> int:
    c = ceiling(p, s)
    dc = ideal_closure(p, c)
    first = incomparables(p, s)
    middle = ideal_closure(p, incomparables_restricted(p, s, c)) & ~(s | dc)
    last = dc & ~ideal_closure(p, min_elements(p, s) & dc)
    return first | middle | last


def rowmotion_ideal(p: Poset, s: int) -> int:
    # Min of the complement; agrees with the ceiling on nonempty ideals of a
    # poset with a least element, and gives Min(P) for the empty ideal.
    return ideal_closure(p, min_elements(p, p.full & ~s))


IMPLEMENTATIONS = ("simplified", "threeset", "local")


def step_function(fam: Family, impl: str = "simplified") -> Callable[[int], int]:
    p = fam.poset
    if fam.kind is FamilyKind.ORDER_IDEALS:
        if impl == "local":
            return partial(rowmotion_local, fam)
        return partial(rowmotion_ideal, p)
    if impl == "simplified":
        return partial(rowmotion_global_simplified, p)
    if impl == "threeset":
        return partial(rowmotion_global_threeset, p)
    if impl == "local":
        return partial(rowmotion_local, fam)
    raise ValueError(f"unknown rowmotion implementation {impl!r}")


@dataclass
class Orbit:
    states: list[int]

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def representative(self) -> int:
        return self.states[0]


def orbit_of(step: Callable[[int], int], s: int, limit: int | None = None) -> Orbit:
    """Iterate ``step`` from ``s`` until it returns to ``s``.

    Rowmotion is a bijection, so the first repeat is always ``s`` itself.
    """
    states = [s]
    t = step(s)
    while t != s:
        states.append(t)
        if limit is not None and len(states) > limit:
            raise RuntimeError("orbit did not close within the limit")
        t = step(t)
    k = states.index(min(states))
    return Orbit(states[k:] + states[:k])


def _claim_chunk(step, members: Sequence[int], lo: int, hi: int) -> list[list[int]]:
    # an orbit belongs to the chunk holding its smallest state
    seen: set[int] = set()
    out = []
    for s in members[lo:hi]:
        if s in seen:
            continue
        orb = orbit_of(step, s)
        seen.update(orb.states)
        if lo <= bisect_left(members, orb.representative) < hi:
            out.append(orb.states)
    return out


def orbit_decomposition(
    step: Callable[[int], int], members: Iterable[int], workers: int = 1
) -> list[Orbit]:
    members = sorted(members)
    if workers <= 1 or len(members) < 2 * workers:
        seen: set[int] = set()
        orbits = []
        for s in members:
            if s in seen:
                continue
            orb = orbit_of(step, s)
            seen.update(orb.states)
            orbits.append(orb)
    else:
        bounds = [len(members) * k // workers for k in range(workers + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_claim_chunk, step, members, bounds[k], bounds[k + 1])
                for k in range(workers)
            ]
            orbits = [Orbit(states) for f in futures for states in f.result()]
    orbits.sort(key=lambda o: o.representative)
    return orbits


def size_multiset(orbits: Iterable[Orbit]) -> dict[int, int]:
    out: dict[int, int] = {}
    for o in orbits:
        out[o.size] = out.get(o.size, 0) + 1
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class Statistic:
    name: str
    eval: Callable[[Poset, int], int]

    def __call__(self, p: Poset, s: int) -> int:
        return self.eval(p, s)


def _cardinality(p: Poset, s: int) -> int:
    return s.bit_count()


def _signed_cardinality(p: Poset, s: int) -> int:
    even = getattr(p, "_even_rank_mask", None)
    if even is None:
        even = sum(1 << x for x in range(p.size) if p.rank[x] % 2 == 0)
        p._even_rank_mask = even
    return (s & even).bit_count() - (s & ~even).bit_count()


def _max_minus_min(p: Poset, s: int) -> int:
    return max_elements(p, s).bit_count() - min_elements(p, s).bit_count()


stat_cardinality = Statistic("cardinality", _cardinality)
stat_signed_cardinality = Statistic("signed_cardinality", _signed_cardinality)
stat_max_minus_min = Statistic("max_minus_min", _max_minus_min)

STATISTICS = {s.name: s for s in (stat_cardinality, stat_signed_cardinality, stat_max_minus_min)}


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass
class HomomesyReport:
    statistic: str
    per_orbit: list[tuple[int, Fraction]]
    global_average: Fraction
    total: int
    counterexample: int | None = None

    @property
    def homomesic(self) -> bool:
        return self.counterexample is None

    @property
    def verdict(self) -> str:
        if self.homomesic:
            return f"{self.global_average}-mesic"
        return f"not homomesic (orbit {self.counterexample})"

    def to_json(self) -> dict:
        return {
            "statistic": self.statistic,
            "global_average": fraction_str(self.global_average),
            "total": self.total,
            "homomesic": self.homomesic,
            "verdict": self.verdict,
            "counterexample_orbit": self.counterexample,
            "per_orbit": [
                {"size": size, "average": fraction_str(avg)} for size, avg in self.per_orbit
            ],
        }


def homomesy_from_orbits(p: Poset, orbits: Sequence[Orbit], stat: Statistic) -> HomomesyReport:
    per_orbit = []
    total = 0
    count = 0
    for o in orbits:
        t = sum(stat(p, s) for s in o.states)
        per_orbit.append((o.size, Fraction(t, o.size)))
        total += t
        count += o.size
    avg = Fraction(total, count) if count else Fraction(0)
    bad = next((k for k, (_, a) in enumerate(per_orbit) if a != avg), None)
    return HomomesyReport(stat.name, per_orbit, avg, total, bad)


def homomesy_check(
    fam: Family,
    stat: Statistic,
    impl: str = "simplified",
    cap: int = convex.DEFAULT_CAP,
    workers: int = 1,
) -> HomomesyReport:
    orbits = orbit_decomposition(step_function(fam, impl), fam.members(cap), workers)
    return homomesy_from_orbits(fam.poset, orbits, stat)
