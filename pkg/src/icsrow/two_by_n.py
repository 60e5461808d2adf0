"""Fast rowmotion on interval-closed sets of [2] x [n].

An ICS of [2] x [n] is one interval on each chain, so it is stored as six
counts ``(b1, i1, a1, b2, i2, a2)``: elements below, inside and above the
set on the lower chain (1, j) and on the upper chain (2, j). An empty side is
normalized to ``(n, 0, 0)`` on the lower chain and ``(0, 0, n)`` on the upper.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterator, NamedTuple

from .poset import ChainProduct, product_of_chains

Raw = tuple  # (b1, i1, a1, b2, i2, a2)


class IcsType(enum.Enum):
    DOUBLE_HOOK = 1
    DISJOINT = 2
    FIRST_HOOK = 3
    STACKED_OR_SECOND_HOOK = 4
    LOW = 5
    HIGH = 6
    EMPTY = 7
    FULL = 8


class _ChainFields(NamedTuple):
    n: int
    b1: int
    i1: int
    a1: int
    b2: int
    i2: int
    a2: int


class ChainTuple(_ChainFields):
    # a validated namedtuple; enumeration builds trusted instances with
    # tuple.__new__ to skip the checks
    __slots__ = ()

    def __new__(cls, n: int, b1: int, i1: int, a1: int, b2: int, i2: int, a2: int):
        check_raw(n, (b1, i1, a1, b2, i2, a2))
        return tuple.__new__(cls, (n, b1, i1, a1, b2, i2, a2))

    @property
    def raw(self) -> Raw:
        return self[1:]

    @classmethod
    def of(cls, n: int, raw) -> "ChainTuple":
        return cls(n, *raw)

    @classmethod
    def low(cls, n: int, b: int, i: int, a: int) -> "ChainTuple":
        return cls(n, b, i, a, 0, 0, n)

    @classmethod
    def high(cls, n: int, b: int, i: int, a: int) -> "ChainTuple":
        return cls(n, n, 0, 0, b, i, a)

    @classmethod
    def empty(cls, n: int) -> "ChainTuple":
        return cls(n, n, 0, 0, 0, 0, n)

    @classmethod
    def full(cls, n: int) -> "ChainTuple":
        return cls(n, 0, n, 0, 0, n, 0)

    @classmethod
    def parse(cls, n: int, text: str) -> "ChainTuple":
        """Parse ``"b1,i1,a1:b2,i2,a2"``; either side may be ``E`` for empty."""
        try:
            lower, upper = (part.strip() for part in text.split(":"))
            lo = (n, 0, 0) if lower.upper() == "E" else tuple(int(v) for v in lower.split(","))
            hi = (0, 0, n) if upper.upper() == "E" else tuple(int(v) for v in upper.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse tuple {text!r}") from exc
        if len(lo) != 3 or len(hi) != 3:
            raise ValueError(f"cannot parse tuple {text!r}")
        return cls(n, *lo, *hi)

    def __str__(self) -> str:
        lo = "E" if self.i1 == 0 else f"{self.b1},{self.i1},{self.a1}"
        hi = "E" if self.i2 == 0 else f"{self.b2},{self.i2},{self.a2}"
        return f"[{lo}:{hi}]"

    def coords(self) -> list[tuple[int, int]]:
        return [(1, j) for j in range(self.b1 + 1, self.b1 + self.i1 + 1)] + [
            (2, j) for j in range(self.b2 + 1, self.b2 + self.i2 + 1)
        ]


def check_raw(n: int, t: Raw) -> None:
    b1, i1, a1, b2, i2, a2 = t
    if n < 1:
        raise ValueError("n must be positive")
    if min(t) < 0 or b1 + i1 + a1 != n or b2 + i2 + a2 != n:
        raise ValueError(f"invalid tuple {t} for n={n}")
    if i1 == 0 and (b1, a1) != (n, 0):
        raise ValueError(f"empty lower side must be ({n},0,0), got {t}")
    if i2 == 0 and (b2, a2) != (0, n):
        raise ValueError(f"empty upper side must be (0,0,{n}), got {t}")
    if i1 and i2 and not (b1 >= b2 and a2 >= a1):
        raise ValueError(f"tuple {t} is not interval-closed")


def _norm(n: int, b1, i1, a1, b2, i2, a2) -> Raw:
    if i1 == 0:
        b1, a1 = n, 0
    if i2 == 0:
        b2, a2 = 0, n
    return (b1, i1, a1, b2, i2, a2)


def classify_raw(n: int, t: Raw) -> IcsType:
    b1, i1, a1, b2, i2, a2 = t
    if i1 == 0 and i2 == 0:
        return IcsType.EMPTY
    if i1 == n and i2 == n:
        return IcsType.FULL
    if i2 == 0:
        return IcsType.LOW
    if i1 == 0:
        return IcsType.HIGH
    if b1 == b2:
        return IcsType.FIRST_HOOK if a1 < a2 else IcsType.STACKED_OR_SECOND_HOOK
    if a1 == a2:
        return IcsType.STACKED_OR_SECOND_HOOK
    if b1 >= b2 + i2:
        return IcsType.DISJOINT
    return IcsType.DOUBLE_HOOK


def classify(t: ChainTuple) -> IcsType:
    return classify_raw(t.n, t.raw)


class TransitionError(RuntimeError):
    pass


def step_raw(n: int, t: Raw) -> Raw:
    b1, i1, a1, b2, i2, a2 = t
    kind = classify_raw(n, t)
    if kind is IcsType.EMPTY:
        return (0, n, 0, 0, n, 0)
    if kind is IcsType.FULL:
        return (n, 0, 0, 0, 0, n)
    if kind is IcsType.DOUBLE_HOOK:
        if a1 != 0:
            return (b1 + 1, i1, a1 - 1, b2 + 1, i2, a2 - 1)
        return (b1 + 1, i1 - a2, a2 - 1, b2 + 1, i2, a2 - 1)
    if kind is IcsType.DISJOINT:
        if a1 != 0:
            return (b1 + 1, i1, a1 - 1, b2 + 1, i2, a2 - 1)
        if i1 < a2:
            return _norm(n, b2 + 1, b1 - (b2 + 1), i1, b2 + 1, i2, a2 - 1)
        if i1 == a2:
            return _norm(n, n, 0, 0, b2 + 1, i2, a2 - 1)
    elif kind is IcsType.FIRST_HOOK:
        if a1 != 0:
            return (b1 + 1, i1, a1 - 1, 0, i2 + b2 + 1, a2 - 1)
        return (b1 + 1, i2, a2 - 1, 0, i2 + b2 + 1, a2 - 1)
    elif kind is IcsType.STACKED_OR_SECOND_HOOK:
        if a1 != 0:
            # drop the upper part to everything below it; empty when b2 = 0
            return _norm(n, b1 + 1, i1, a1 - 1, 0, b2, n - b2)
        # the set contains the maximum: rowmotion is the complement
        return _norm(n, 0, b1, i1, 0, b2, i2)
    elif kind is IcsType.LOW:
        if a1 != 0:
            return (b1 + 1, i1, a1 - 1, 0, b1 + 1, n - b1 - 1)
        return _norm(n, n, 0, 0, 0, b1 + 1, i1 - 1)
    elif kind is IcsType.HIGH:
        if a2 != 0:
            return (b2 + 1, i2 + a2 - 1, 0, b2 + 1, i2, a2 - 1)
        return _norm(n, 0, n, 0, 0, b2, i2)
    raise TransitionError(f"no transition rule for {t} (n={n})")


def row_step(t: ChainTuple) -> ChainTuple:
    return ChainTuple(t.n, *step_raw(t.n, t.raw))


# embedding into the generic engine


@lru_cache(maxsize=None)
def poset_for(n: int) -> ChainProduct:
    return product_of_chains([2, n])


def embed_raw(n: int, t: Raw) -> int:
    b1, i1, _, b2, i2, _ = t
    return (((1 << i1) - 1) << b1) | (((1 << i2) - 1) << (n + b2))


def embed(t: ChainTuple) -> int:
    return embed_raw(t.n, t.raw)


def _interval(bits: int) -> tuple[int, int]:
    if bits == 0:
        return 0, 0
    b = (bits & -bits).bit_length() - 1
    i = bits.bit_count()
    if bits != ((1 << i) - 1) << b:
        raise ValueError("not an interval on the chain")
    return b, i


def project(bits: int, n: int) -> ChainTuple:
    if bits < 0 or bits >> (2 * n):
        raise ValueError("set is not inside [2] x [n]")
    b1, i1 = _interval(bits & ((1 << n) - 1))
    b2, i2 = _interval(bits >> n)
    return ChainTuple(n, *_norm(n, b1, i1, n - b1 - i1, b2, i2, n - b2 - i2))


# statistics


def parity(x: int) -> int:
    return x & 1


def sc_raw(t: Raw) -> int:
    b1, i1, _, b2, i2, _ = t
    return parity(i1) * (-1) ** b1 + parity(i2) * (-1) ** (b2 + 1)


def sc_tuple(t: ChainTuple) -> int:
    return sc_raw(t.raw)


# enumeration and ranking


def _interval_rank(n: int, b: int, e: int) -> int:
    # intervals [b, e) with 0 <= b < e <= n, ordered by b then e
    return b * n - b * (b - 1) // 2 + (e - b - 1)


class TupleIndex:
    """Bijection between valid tuples and 0..count-1.

    Order: the empty set, Low sets, High sets, then two-sided sets ordered by
    the lower interval, then b2, then the upper interval's end.
    """

    def __init__(self, n: int):
        self.n = n
        pairs = n * (n + 1) // 2
        self.low_base = 1
        self.high_base = 1 + pairs
        base = 1 + 2 * pairs
        self.both_base = []
        for b1 in range(n):
            for e1 in range(b1 + 1, n + 1):
                self.both_base.append(base)
                base += (b1 + 1) * e1 - b1 * (b1 + 1) // 2
        self.count = base

    def rank(self, t: Raw) -> int:
        n = self.n
        b1, i1, _, b2, i2, _ = t
        if i1 == 0:
            if i2 == 0:
                return 0
            return self.high_base + _interval_rank(n, b2, b2 + i2)
        if i2 == 0:
            return self.low_base + _interval_rank(n, b1, b1 + i1)
        e1 = b1 + i1
        base = self.both_base[_interval_rank(n, b1, e1)]
        return base + b2 * e1 - b2 * (b2 - 1) // 2 + (i2 - 1)


def iter_raw(n: int) -> Iterator[Raw]:
    """Valid tuples in rank order."""
    yield (n, 0, 0, 0, 0, n)
    for b in range(n):
        for e in range(b + 1, n + 1):
            yield (b, e - b, n - e, 0, 0, n)
    for b in range(n):
        for e in range(b + 1, n + 1):
            yield (n, 0, 0, b, e - b, n - e)
    for b1 in range(n):
        for e1 in range(b1 + 1, n + 1):
            for b2 in range(b1 + 1):
                for e2 in range(b2 + 1, e1 + 1):
                    yield (b1, e1 - b1, n - e1, b2, e2 - b2, n - e2)


def enumerate_tuples(n: int) -> Iterator[ChainTuple]:
    make = tuple.__new__
    for t in iter_raw(n):
        yield make(ChainTuple, (n, *t))


def ics_count(n: int) -> int:
    return (n**4 + 4 * n**3 + 17 * n**2 + 14 * n + 12) // 12


# censuses


def orbit_raw(n: int, t: Raw) -> list[Raw]:
    out = [t]
    s = step_raw(n, t)
    while s != t:
        out.append(s)
        s = step_raw(n, s)
    return out


def orbit(t: ChainTuple) -> list[ChainTuple]:
    return [ChainTuple(t.n, *s) for s in orbit_raw(t.n, t.raw)]


@dataclass
class CensusReport:
    n: int
    engine: str
    orbits: list[tuple[int, Raw]]  # (size, lowest-rank representative)
    prediction: dict[int, int] | None = field(default=None, repr=False)

    @property
    def total(self) -> int:
        return sum(size for size, _ in self.orbits)

    @property
    def sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for size, _ in self.orbits:
            out[size] = out.get(size, 0) + 1
        return dict(sorted(out.items()))

    @property
    def matches_prediction(self) -> bool:
        if self.prediction is None:
            self.prediction = predicted_census(self.n)
        return self.sizes == self.prediction

    def example_representatives(self) -> dict[int, ChainTuple]:
        out = {}
        for size, rep in self.orbits:
            out.setdefault(size, ChainTuple(self.n, *rep))
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "engine": self.engine,
            "total": self.total,
            "orbits": [{"size": s, "count": c} for s, c in self.sizes.items()],
            "matches_prediction": self.matches_prediction,
        }


def _census_range(n: int, lo: int, hi: int) -> list[tuple[int, int, Raw]]:
    index = TupleIndex(n)
    seen = bytearray(index.count)
    found = []
    for r, t in enumerate(iter_raw(n)):
        if r >= hi:
            break
        if r < lo or seen[r]:
            continue
        states = orbit_raw(n, t)
        ranks = [index.rank(s) for s in states]
        for q in ranks:
            seen[q] = 1
        # an orbit is reported by the worker owning its lowest-rank state
        low = min(ranks)
        if lo <= low < hi:
            found.append((len(states), low, states[ranks.index(low)]))
    return found


def census(n: int, workers: int = 1) -> CensusReport:
    if n < 1:
        raise ValueError("n must be positive")
    total = TupleIndex(n).count
    if workers <= 1:
        found = _census_range(n, 0, total)
    else:
        bounds = [total * k // workers for k in range(workers + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_census_range, [n] * workers, bounds[:-1], bounds[1:])
            found = [item for part in parts for item in part]
    found.sort()
    return CensusReport(n, "tuple", [(size, rep) for size, _, rep in found])


# predicted censuses from the stored tables


@lru_cache(maxsize=None)
def orbit_tables() -> dict:
    text = resources.files("icsrow.data").joinpath("orbit_tables.json").read_text()
    return json.loads(text)


def eval_poly(poly: dict, n: int) -> Fraction:
    value = 0
    for c in poly["coeffs"]:
        value = value * n + c
    return Fraction(value, poly["den"])


def _as_int(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise ValueError(f"{what} is not an integer: {q}")
    return q.numerator


def explicit_census(n: int) -> dict[int, int]:
    rows = orbit_tables()["explicit_orbit_sizes"]
    if str(n) not in rows:
        raise KeyError(f"no explicit orbit table for n={n}")
    return {int(s): c for s, c in sorted(rows[str(n)].items(), key=lambda kv: int(kv[0]))}


def quadratic_sizes(n: int) -> list[int]:
    out = []
    for entry in orbit_tables()["quadratic_orbit_sizes"][str(n % 6)]:
        size = _as_int(eval_poly(entry["size"], n), f"quadratic size at n={n}")
        out.extend([size] * entry["count"])
    return sorted(out)


def closed_form_census(n: int) -> dict[int, int]:
    if n < 5:
        raise ValueError("closed forms apply for n >= 5")
    out: dict[int, int] = {}
    for entry in orbit_tables()["linear_orbit_counts"][str(n % 6)]:
        count = _as_int(eval_poly(entry["count"], n), f"orbit count at n={n}")
        if count == 0:
            continue
        size = _as_int(eval_poly(entry["size"], n), f"orbit size at n={n}")
        out[size] = out.get(size, 0) + count
    for size in quadratic_sizes(n):
        out[size] = out.get(size, 0) + 1
    return dict(sorted(out.items()))


def predicted_census(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 9:
        return explicit_census(n)
    return closed_form_census(n)


# anchor singletons for the quadratic orbits


@dataclass(frozen=True, order=True)
class Anchor:
    """A lower-chain singleton {(1, x)} used to chain the quadratic orbits.

    ``side`` is "lo" for x in 2..7 and "hi" for x = n - offset with offset in
    0..5; for small n the two ranges can name the same position.
    """

    side: str
    offset: int

    def position(self, n: int) -> int:
        return self.offset if self.side == "lo" else n - self.offset

    def label(self, n: int) -> str:
        return str(self.offset) if self.side == "lo" else ("n" if self.offset == 0 else f"n-{self.offset}")


def _residue_in_2_to_7(r: int) -> int:
    return next(x for x in range(2, 8) if x % 6 == r % 6)


def _hi_weight(n: int, y: int) -> int:
    if y == 0:
        return 6
    if y in (1, 3, 5):
        return (y - 1) // 2 * n + 4 * (2 * y // 3) + 5
    key = (y, n % 3)
    if key in ((2, 0), (4, 2)):
        num = n * n + (2 * y - 1) * n + 6 * (y + 1)
    elif key in ((2, 1), (4, 1)):
        num = n * n + 2 ** (y - 1) * n + 6 * (3 * y - 5)
    else:
        num = 2 * n * n + (2 * y + 1) * n + (6 * y - 3)
    if num % 3:
        raise ValueError(f"non-integral weight for y={y}, n={n}")
    return num // 3


@dataclass
class AnchorMap:
    n: int
    sigma: dict[Anchor, Anchor]
    weight: dict[Anchor, int]

    def cycles(self) -> list[list[Anchor]]:
        seen = set()
        out = []
        for a in sorted(self.sigma):
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self.sigma[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self.sigma[b]
            out.append(cyc)
        return out

    def cycle_weights(self) -> list[int]:
        return sorted(sum(self.weight[a] for a in cyc) for cyc in self.cycles())

    def describe(self) -> str:
        return "".join(
            "(" + ",".join(a.label(self.n) for a in cyc) + ")" for cyc in self.cycles()
        )


def sigma_and_weight(n: int) -> AnchorMap:
    if n < 10:
        raise ValueError("the anchor map needs n >= 10")
    sigma = {}
    weight = {}
    for s in range(2, 8):
        a = Anchor("lo", s)
        sigma[a] = Anchor("hi", (n - s) % 6)
        weight[a] = (n - s) // 6 * (2 * n + 12)
    for y in range(6):
        a = Anchor("hi", y)
        if y in (2, 4) and n % 3 in (0, 2):
            x = _residue_in_2_to_7(10 + y)
        else:
            x = _residue_in_2_to_7(10 - y)
        sigma[a] = Anchor("lo", x)
        weight[a] = _hi_weight(n, y)
    return AnchorMap(n, sigma, weight)


# structural checks along orbits


@dataclass
class Check:
    name: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass
class CheckReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, expected, computed) -> None:
        self.checks.append(Check(name, expected, computed))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def lower_singleton(n: int, x: int) -> Raw:
    return (x - 1, 1, n - x, 0, 0, n)


def upper_singleton(n: int, x: int) -> Raw:
    return (n, 0, 0, x - 1, 1, n - x)


def singleton_position(t: Raw) -> tuple[int, int] | None:
    b1, i1, _, b2, i2, _ = t
    if i1 == 1 and i2 == 0:
        return (1, b1 + 1)
    if i1 == 0 and i2 == 1:
        return (2, b2 + 1)
    return None


def walk(n: int, t: Raw, steps: int) -> list[Raw]:
    out = [t]
    for _ in range(steps):
        t = step_raw(n, t)
        out.append(t)
    return out


def verify_singleton_dynamics(n: int) -> CheckReport:
    amap = sigma_and_weight(n)
    rep = CheckReport(f"anchor singletons, n={n}")
    anchor_positions = {a.position(n) for a in amap.sigma}
    quad = quadratic_sizes(n)
    for a in sorted(amap.sigma):
        x = a.position(n)
        w = amap.weight[a]
        target = amap.sigma[a].position(n)
        path = walk(n, lower_singleton(n, x), w)
        rep.add(f"{a.side} {a.label(n)}: arrives at (1,{target}) after {w} steps",
                lower_singleton(n, target), path[-1])
        between = [singleton_position(s) for s in path[1:-1]]
        lowers = [p[1] for p in between if p and p[0] == 1]
        expected = list(range(x + 6, target, 6)) if a.side == "lo" else []
        rep.add(f"{a.side} {a.label(n)}: intermediate lower singletons", expected, lowers)
        rep.add(f"{a.side} {a.label(n)}: no anchor-form singleton before arrival",
                [], [p for p in lowers if p in anchor_positions])
    for cyc in amap.cycles():
        total = sum(amap.weight[a] for a in cyc)
        size = len(orbit_raw(n, lower_singleton(n, cyc[0].position(n))))
        rep.add(f"cycle {amap.describe()} part at {cyc[0].label(n)}: orbit size equals weight sum",
                total, size)
    expected_quad = list(quad)
    if n % 3 == 1:
        expected_quad.remove((n * n + 2 * n - 9) // 3)
    rep.add("cycle weight sums equal the quadratic orbit sizes with a singleton",
            sorted(expected_quad), amap.cycle_weights())
    for x in range(2, n - 5):
        path = walk(n, lower_singleton(n, x), 2 * n + 12)
        rep.add(f"(1,{x}) reaches (1,{x + 6}) in 2n+12 steps", lower_singleton(n, x + 6), path[-1])
        between = [singleton_position(s) for s in path[1:-1]]
        rep.add(f"(1,{x}) singletons on the way", [(2, x + 3)], [p for p in between if p])
        if n % 2:
            rep.add(f"(1,{x}) signed cardinality over 2n+12 steps", (-1) ** x,
                    sum(sc_raw(s) for s in path[:-1]))
    if n % 3 == 1:
        rep.checks.extend(no_singleton_orbit_checks(n).checks)
    return rep


def no_singleton_orbit_checks(n: int) -> CheckReport:
    rep = CheckReport(f"orbit of {{(1,n-2),(1,n-1)}}, n={n}")
    states = orbit_raw(n, (n - 3, 2, 1, 0, 0, n))
    rep.add("orbit size", (n * n + 2 * n - 9) // 3, len(states))
    rep.add("singletons in orbit", [], [s for s in states if singleton_position(s)])
    return rep


def _orbit_size(n: int, t: Raw) -> int:
    return len(orbit_raw(n, t))


def representative_orbit_checks(n: int) -> CheckReport:
    rep = CheckReport(f"representative orbits, n={n}")
    full = n + 3

    for r in range(1, n // 2 + 1):
        rep.add(f"stacked ranks r={r}", full, _orbit_size(n, (0, r, n - r, 0, r - 1, n + 1 - r)))
    if n % 2 == 1:
        r = (n + 1) // 2
        rep.add(f"stacked ranks r={r}", (n + 3) // 2, _orbit_size(n, (0, r, n - r, 0, r - 1, n + 1 - r)))

    for b in range(1, n):
        for i in range(1, n - b):
            a = n - b - i
            t = (b, i, a, b, i, a)
            want = (n + 3) // 3 if b == i == a else full
            states = orbit_raw(n, t)
            rep.add(f"stacked diagonal [{b},{i},{a}]", want, len(states))
            if b != i or i != a:
                rep.add(f"stacked diagonal [{b},{i},{a}] rotations share its orbit", True,
                        (a, b, i, a, b, i) in states and (i, a, b, i, a, b) in states)

    for b in range(3, n):
        i = n - b
        for t in range(2, b):
            rep.add(f"second hook b={b} t={t}", full, _orbit_size(n, (b, i, 0, b - t, t + i, 0)))

    for b in range(2, n + 1):
        for j in range(2, n + 1):
            for k in range(1, n + 1):
                a = n - b - j - k
                if a < 0:
                    continue
                t = (b, k + j, a, 0, b + k, a + j)
                states = orbit_raw(n, t)
                want = (n + 3) // 2 if (j == b and a + 1 == k) else full
                rep.add(f"double hook b={b} j={j} k={k} a={a}", want, len(states))
                partner = (j, a + b + 1, k - 1, 0, j + a + 1, b + k - 1)
                rep.add(f"double hook b={b} j={j} k={k} a={a} partner in orbit", True, partner in states)

    for x in range(4, n + 2):
        for y in range(4, n + 2):
            z = n + 5 - x - y
            if z < 4:
                continue
            start = (x - 1, y, z - 4, 0, 0, n)
            path = walk(n, start, z)
            rep.add(f"low interval x={x} y={y} z={z}: lands after z steps", (z - 1, x, y - 4, 0, 0, n), path[-1])
            rep.add(f"low interval x={x} y={y} z={z}: no Low in between", [],
                    [s for s in path[1:-1] if classify_raw(n, s) is IcsType.LOW])
            want = (n + 5) // 3 if x == y == z else n + 5
            rep.add(f"low interval x={x} y={y} z={z}: orbit size", want, _orbit_size(n, start))

    for b in range(n):
        for i in range(1, n - b + 1):
            a = n - b - i
            path = walk(n, (b, i, a, 0, 0, n), a + 1)
            rep.add(f"Low [{b},{i},{a}] reaches High after {a + 1} steps",
                    _norm(n, n, 0, 0, a, b + 1, i - 1), path[-1])
            rep.add(f"Low [{b},{i},{a}] no Low/High in between", [],
                    [s for s in path[1:-1] if classify_raw(n, s) in (IcsType.LOW, IcsType.HIGH)])
            if n % 2:
                rep.add(f"Low [{b},{i},{a}] signed cardinality sum", parity(a + i) * (-1) ** a,
                        sum(sc_raw(s) for s in path[:-1]))

    for b in range(n):
        for i in range(1, min(n - b, n - 1) + 1):
            a = n - b - i
            path = walk(n, (n, 0, 0, b, i, a), 3)
            if a >= 3:
                want = (b + 3, i, a - 3)
            elif a > 0:
                want = (2 - a, n - i, i - 2 + a)
            elif i > 1:
                want = (2, n - i, i - 2)
            else:
                want = (0, 1, n - 1)
            rep.add(f"High [{b},{i},{a}] reaches Low after 3 steps", (*want, 0, 0, n), path[-1])
            rep.add(f"High [{b},{i},{a}] no Low/High in between", [],
                    [s for s in path[1:-1] if classify_raw(n, s) in (IcsType.LOW, IcsType.HIGH)])
            if n % 2:
                want_sc = 0 if a >= 2 else (parity(i) if a == 1 else -1)
                rep.add(f"High [{b},{i},{a}] signed cardinality sum", want_sc,
                        sum(sc_raw(s) for s in path[:-1]))
    return rep


def single_chain_placement(n: int) -> CheckReport:
    """Orbit sizes of every ICS lying on one chain, by where it sits."""
    rep = CheckReport(f"single-chain placement, n={n}")
    sizes = {}
    for size, r in census(n).orbits:
        for s in orbit_raw(n, r):
            sizes[s] = size
    quad = set(quadratic_sizes(n))
    linear5 = {n + 5, Fraction(n + 5, 3)}
    for b in range(n):
        for i in range(1, n - b + 1):
            a = n - b - i
            for chain_no, t in ((1, (b, i, a, 0, 0, n)), (2, (n, 0, 0, b, i, a))):
                size = sizes[t]
                if chain_no == 1:
                    extreme = b == 0 and i == 1
                    clear = b >= 3
                else:
                    extreme = a == 0 and i == 1
                    clear = a >= 3
                if extreme:
                    want = "n+3"
                elif i >= 4 and clear:
                    want = "n+5"
                else:
                    want = "quadratic"
                got = ("n+3" if size == n + 3 else "n+5" if size in linear5
                       else "quadratic" if size in quad else str(size))
                rep.add(f"chain {chain_no} interval [{b},{i},{a}]", want, got)
    return rep
