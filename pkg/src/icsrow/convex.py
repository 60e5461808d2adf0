from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .poset import Poset, iter_bits

DEFAULT_CAP = 40


class CapExceeded(ValueError):
    pass


# Every function below takes the ambient poset and a subset encoded as an int
# bitmask (bit x set <=> element x in the subset).


def is_interval_closed(p: Poset, s: int) -> bool:
    # z lies between two members exactly when z is in both closures
    return p.up_closure(s) & p.down_closure(s) == s


def is_order_ideal(p: Poset, s: int) -> bool:
    return p.down_closure(s) == s


def is_order_filter(p: Poset, s: int) -> bool:
    return p.up_closure(s) == s


def ideal_closure(p: Poset, s: int) -> int:
    return p.down_closure(s)


def filter_closure(p: Poset, s: int) -> int:
    return p.up_closure(s)


def min_elements(p: Poset, s: int) -> int:
    return s & ~p.up_closure(p.cover_up(s))


def max_elements(p: Poset, s: int) -> int:
    return s & ~p.down_closure(p.cover_down(s))


def incomparables(p: Poset, s: int) -> int:
    return p.full & ~(p.down_closure(s) | p.up_closure(s))


def incomparables_restricted(p: Poset, i: int, j: int) -> int:
    return incomparables(p, j) & i


def ceiling(p: Poset, s: int) -> int:
    return min_elements(p, p.up_closure(s) & ~s)


def complement(p: Poset, s: int) -> int:
    return p.full & ~s


def enumerate_ics(p: Poset, cap: int = DEFAULT_CAP) -> list[int]:
    """All interval-closed subsets of ``p`` in ascending bitmask order.

    Depth-first: elements are appended in canonical-extension order and a new
    element x is kept only if nothing strictly between the current set and x
    is missing. Each set is produced once, by its own extension-ordered prefix
    chain.
    """
    if p.size > cap:
        raise CapExceeded(f"poset has {p.size} elements, above the enumeration cap of {cap} (raise it with --cap)")
    ext = p.canonical_extension
    down = p.down
    up = p.up
    found = [0]
    # stack entries: (set, union of up-sets of the set, next extension position)
    stack = [(0, 0, 0)]
    while stack:
        s, ups, start = stack.pop()
        for k in range(start, len(ext)):
            x = ext[k]
            bit = 1 << x
            # x comes after every member, so only violations below x matter
            if ups & down[x] & ~s & ~bit:
                continue
            t = s | bit
            found.append(t)
            stack.append((t, ups | up[x], k + 1))
    found.sort()
    return found


def iter_ics(p: Poset, cap: int = DEFAULT_CAP) -> Iterator[int]:
    yield from enumerate_ics(p, cap)


def enumerate_order_ideals(p: Poset, cap: int = DEFAULT_CAP) -> list[int]:
    return [s for s in enumerate_ics(p, cap) if is_order_ideal(p, s)]


def to_labels(p: Poset, s: int) -> list:
    return [p.labels[x] for x in iter_bits(s)]


def from_labels(p: Poset, labels: Sequence) -> int:
    s = 0
    for lab in labels:
        s |= 1 << p.index(lab)
    return s


@dataclass(frozen=True)
class IcsSet:
    bits: int
    poset: Poset

    def __lt__(self, other: "IcsSet") -> bool:
        return self.bits < other.bits

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.poset.full:
            raise ValueError("bits outside the poset")

    @classmethod
    def from_coords(cls, p: Poset, coords: Sequence) -> "IcsSet":
        return cls(from_labels(p, coords), p)

    def coords(self) -> list:
        return sorted(to_labels(self.poset, self.bits))

    def to_json(self) -> list:
        return [list(c) if isinstance(c, tuple) else c for c in self.coords()]

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool((self.bits >> x) & 1)

    def _wrap(self, bits: int) -> "IcsSet":
        return IcsSet(bits, self.poset)

    def is_interval_closed(self) -> bool:
        return is_interval_closed(self.poset, self.bits)

    def ideal_closure(self) -> "IcsSet":
        return self._wrap(ideal_closure(self.poset, self.bits))

    def filter_closure(self) -> "IcsSet":
        return self._wrap(filter_closure(self.poset, self.bits))

    def min_elements(self) -> "IcsSet":
        return self._wrap(min_elements(self.poset, self.bits))

    def max_elements(self) -> "IcsSet":
        return self._wrap(max_elements(self.poset, self.bits))

    def incomparables(self) -> "IcsSet":
        return self._wrap(incomparables(self.poset, self.bits))

    def incomparables_restricted(self, j: "IcsSet") -> "IcsSet":
        return self._wrap(incomparables_restricted(self.poset, self.bits, j.bits))

    def ceiling(self) -> "IcsSet":
        return self._wrap(ceiling(self.poset, self.bits))

    def complement(self) -> "IcsSet":
        return self._wrap(complement(self.poset, self.bits))
