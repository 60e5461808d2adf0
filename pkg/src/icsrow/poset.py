from __future__ import annotations

import heapq
import random
from math import prod
from typing import Iterable, Sequence


class Poset:
    """A finite poset on elements 0..size-1 stored as integer bitmasks.

    ``down[x]`` is the set of elements <= x and ``up[x]`` the set of elements
    >= x. Products of chains additionally carry the shift data used by the
    fast closure routines.
    """

    def __init__(self, size: int, covers: Iterable[tuple[int, int]], labels: Sequence | None = None):
        if size < 0:
            raise ValueError("size must be nonnegative")
        self.size = size
        self.covers = sorted(set((int(a), int(b)) for a, b in covers))
        self.labels = list(labels) if labels is not None else list(range(size))
        self.full = (1 << size) - 1

        self.upper_covers = [0] * size
        self.lower_covers = [0] * size
        for a, b in self.covers:
            if not (0 <= a < size and 0 <= b < size) or a == b:
                raise ValueError(f"bad cover pair ({a}, {b})")
            self.upper_covers[a] |= 1 << b
            self.lower_covers[b] |= 1 << a

        self.canonical_extension = self._topological_order(None)
        self.down = [0] * size
        self.rank = [0] * size
        for x in self.canonical_extension:
            d = 1 << x
            r = 0
            for y in iter_bits(self.lower_covers[x]):
                d |= self.down[y]
                r = max(r, self.rank[y] + 1)
            self.down[x] = d
            self.rank[x] = r
        self.up = [0] * size
        for x in reversed(self.canonical_extension):
            u = 1 << x
            for y in iter_bits(self.upper_covers[x]):
                u |= self.up[y]
            self.up[x] = u

        self.dims: tuple[int, ...] | None = None
        self._label_index = {lab: k for k, lab in enumerate(self.labels)}

    def _topological_order(self, rng: random.Random | None) -> list[int]:
        indeg = [0] * self.size
        for _, b in self.covers:
            indeg[b] += 1
        ready = [x for x in range(self.size) if indeg[x] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            if rng is None:
                x = heapq.heappop(ready)
            else:
                k = rng.randrange(len(ready))
                ready[k], ready[-1] = ready[-1], ready[k]
                x = ready.pop()
            order.append(x)
            for y in iter_bits(self.upper_covers[x]):
                indeg[y] -= 1
                if indeg[y] == 0:
                    if rng is None:
                        heapq.heappush(ready, y)
                    else:
                        ready.append(y)
        if len(order) != self.size:
            raise ValueError("cover relation contains a cycle")
        return order

    # relation queries

    def leq(self, x: int, y: int) -> bool:
        return bool((self.down[y] >> x) & 1)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def covered_by(self, x: int, y: int) -> bool:
        return bool((self.upper_covers[x] >> y) & 1)

    def rank_of(self, x: int) -> int:
        return self.rank[x]

    def index(self, label) -> int:
        return self._label_index[tuple(label) if isinstance(label, list) else label]

    def label(self, x: int):
        return self.labels[x]

    @property
    def element_count(self) -> int:
        return self.size

    # set operations on bitmasks

    def down_closure(self, s: int) -> int:
        out = 0
        for x in iter_bits(s):
            out |= self.down[x]
        return out

    def up_closure(self, s: int) -> int:
        out = 0
        for x in iter_bits(s):
            out |= self.up[x]
        return out

    def cover_up(self, s: int) -> int:
        out = 0
        for x in iter_bits(s):
            out |= self.upper_covers[x]
        return out

    def cover_down(self, s: int) -> int:
        out = 0
        for x in iter_bits(s):
            out |= self.lower_covers[x]
        return out

    def __repr__(self) -> str:
        if self.dims is not None:
            return "Poset(" + "x".join(f"[{d}]" for d in self.dims) + ")"
        return f"Poset(size={self.size}, covers={len(self.covers)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.size == other.size and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.size, tuple(self.covers)))


class ChainProduct(Poset):
    """[d1] x ... x [dk] with row-major indexing and shift-based closures."""

    def __init__(self, dims: Sequence[int]):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise ValueError("need at least one dimension")
        if any(d < 1 for d in dims):
            raise ValueError(f"dimensions must be positive, got {list(dims)}")
        size = prod(dims)
        strides = [1] * len(dims)
        for k in range(len(dims) - 2, -1, -1):
            strides[k] = strides[k + 1] * dims[k + 1]
        coords = [_unrank(x, dims, strides) for x in range(size)]
        covers = []
        for x, c in enumerate(coords):
            for k, d in enumerate(dims):
                if c[k] < d:
                    covers.append((x, x + strides[k]))
        super().__init__(size, covers, labels=coords)
        self.dims = dims
        self.strides = tuple(strides)

        # ge[k][t]: elements whose k-th coordinate is > t (can step down t times)
        # le[k][t]: elements whose k-th coordinate is <= d-t (can step up t times)
        self._shift_plan = []
        for k, d in enumerate(dims):
            steps = []
            t = 1
            while t < d:
                ge = le = 0
                for x, c in enumerate(coords):
                    if c[k] > t:
                        ge |= 1 << x
                    if c[k] <= d - t:
                        le |= 1 << x
                steps.append((t * strides[k], ge, le))
                t *= 2
            self._shift_plan.append(steps)

    def down_closure(self, s: int) -> int:
        for steps in self._shift_plan:
            for shift, ge, _ in steps:
                s |= (s & ge) >> shift
        return s

    def up_closure(self, s: int) -> int:
        for steps in self._shift_plan:
            for shift, _, le in steps:
                s |= (s & le) << shift
        return s

    def cover_up(self, s: int) -> int:
        out = 0
        for steps in self._shift_plan:
            if steps:
                shift, _, le = steps[0]
                out |= (s & le) << shift
        return out

    def cover_down(self, s: int) -> int:
        out = 0
        for steps in self._shift_plan:
            if steps:
                shift, ge, _ = steps[0]
                out |= (s & ge) >> shift
        return out

    def coords(self, x: int) -> tuple[int, ...]:
        return self.labels[x]

    def index(self, coord) -> int:
        coord = tuple(coord)
        if len(coord) != len(self.dims) or any(not 1 <= c <= d for c, d in zip(coord, self.dims)):
            raise ValueError(f"coordinate {coord} outside {self!r}")
        return sum((c - 1) * s for c, s in zip(coord, self.strides))

    def __reduce__(self):
        return (ChainProduct, (self.dims,))


def _unrank(x: int, dims, strides) -> tuple[int, ...]:
    return tuple((x // s) % d + 1 for d, s in zip(dims, strides))


def iter_bits(s: int):
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def popcount(s: int) -> int:
    return s.bit_count()


def product_of_chains(dims: Sequence[int]) -> ChainProduct:
    return ChainProduct(dims)


def chain(n: int) -> ChainProduct:
    return ChainProduct([n])


def linear_extension(p: Poset, seed: int | None = None) -> list[int]:
    if seed is None:
        return list(p.canonical_extension)
    return p._topological_order(random.Random(seed))


def is_linear_extension(p: Poset, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(p.size)):
        return False
    pos = {x: k for k, x in enumerate(order)}
    return all(pos[a] < pos[b] for a, b in p.covers)
