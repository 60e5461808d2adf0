from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from . import convex, dynamics, two_by_n
from .dynamics import HomomesyReport, Orbit, homomesy_from_orbits, ics_family, ideal_family
from .poset import product_of_chains

RESULTS_ENV = "ICSROW_RESULTS_DIR"


@dataclass
class VerificationCase:
    id: str
    description: str
    expected: object
    computed: object
    assertive: bool = True

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "pass": self.passed,
            "assertive": self.assertive,
        }


def _jsonable(value):
    if isinstance(value, Fraction):
        return dynamics.fraction_str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def results_dir(path: str | os.PathLike | None = None) -> Path:
    return Path(path or os.environ.get(RESULTS_ENV) or "results")


def persist(cases: Iterable[VerificationCase], suite: str, path=None) -> Path:
    out_dir = results_dir(path)
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / f"{suite}.jsonl"
    stamp = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    with target.open("a", encoding="utf-8", newline="\n") as fh:
        for case in cases:
            fh.write(json.dumps({"timestamp": stamp, "suite": suite, **case.to_json()}) + "\n")
    return target


# censuses and homomesy on both engines


def generic_census(dims: Sequence[int], impl: str = "simplified", cap: int = convex.DEFAULT_CAP,
                   workers: int = 1) -> list[Orbit]:
    fam = ics_family(product_of_chains(dims))
    return dynamics.orbit_decomposition(dynamics.step_function(fam, impl), fam.members(cap), workers)


def tuple_homomesy(n: int, stat_name: str = "signed_cardinality") -> HomomesyReport:
    """Homomesy over the tuple-engine orbits of [2] x [n]."""
    if stat_name == "signed_cardinality":
        orbits = [two_by_n.orbit_raw(n, rep) for _, rep in two_by_n.census(n).orbits]
        per_orbit = [(len(o), Fraction(sum(two_by_n.sc_raw(t) for t in o), len(o))) for o in orbits]
        total = sum(avg * size for size, avg in per_orbit)
        count = sum(size for size, _ in per_orbit)
        avg = Fraction(total, count)
        bad = next((k for k, (_, a) in enumerate(per_orbit) if a != avg), None)
        return HomomesyReport(stat_name, per_orbit, avg, int(total), bad)
    p = two_by_n.poset_for(n)
    stat = dynamics.STATISTICS[stat_name]
    orbits = [Orbit([two_by_n.embed_raw(n, t) for t in two_by_n.orbit_raw(n, rep)])
              for _, rep in two_by_n.census(n).orbits]
    return homomesy_from_orbits(p, orbits, stat)


def run_table4_suite(workers: int = 1) -> list[VerificationCase]:
    cases = []
    for n in range(1, 10):
        expected = two_by_n.explicit_census(n)
        generic = dynamics.size_multiset(generic_census([2, n], workers=workers))
        tuple_sizes = two_by_n.census(n, workers=workers).sizes
        cases.append(VerificationCase(
            f"table4-n{n}",
            f"orbit sizes of rowmotion on ICS of [2]x[{n}], generic and tuple engines",
            {"generic": expected, "tuple": expected},
            {"generic": generic, "tuple": tuple_sizes},
        ))
    return cases


def run_prediction_suite(n_range: Iterable[int] = range(5, 31), workers: int = 1) -> list[VerificationCase]:
    cases = []
    for n in n_range:
        cases.append(VerificationCase(
            f"census-n{n}",
            f"tuple-engine census of [2]x[{n}] against the closed-form orbit counts",
            two_by_n.predicted_census(n),
            two_by_n.census(n, workers=workers).sizes,
        ))
    return cases


def run_homomesy_suite(workers: int = 1) -> list[VerificationCase]:
    cases = []
    for n in (1, 3, 5, 7, 9, 11):
        rep = tuple_homomesy(n)
        cases.append(VerificationCase(
            f"sc-odd-n{n}", f"signed cardinality on ICS of [2]x[{n}] is 0-mesic",
            "0-mesic", rep.verdict))
    for n in (2, 4, 6, 8):
        rep = tuple_homomesy(n)
        cases.append(VerificationCase(
            f"sc-even-total-n{n}", f"total signed cardinality over ICS of [2]x[{n}] is -n^2(n+1)/4",
            -n * n * (n + 1) // 4, rep.total))
        cases.append(VerificationCase(
            f"sc-even-total-exact-n{n}",
            f"total signed cardinality over ICS of [2]x[{n}] is -n(n+1)(n+2)/6 (exhaustive count)",
            -n * (n + 1) * (n + 2) // 6, rep.total))
        cases.append(VerificationCase(
            f"sc-even-not-homomesic-n{n}", f"signed cardinality on ICS of [2]x[{n}] is not homomesic",
            False, rep.homomesic))
    for n in range(1, 10):
        fam = ics_family(product_of_chains([2, n]))
        rep = dynamics.homomesy_check(fam, dynamics.stat_max_minus_min, workers=workers)
        cases.append(VerificationCase(
            f"maxmin-2x{n}", f"max minus min on ICS of [2]x[{n}] is 0-mesic", "0-mesic", rep.verdict))
    for m, n in ((2, 2), (2, 3), (2, 4), (3, 3)):
        fam = ideal_family(product_of_chains([m, n]))
        orbits = dynamics.orbit_decomposition(dynamics.step_function(fam), fam.members(), workers)
        cases.append(VerificationCase(
            f"ideal-order-{m}x{n}", f"rowmotion on order ideals of [{m}]x[{n}] has order dividing {m + n}",
            True, all((m + n) % o.size == 0 for o in orbits)))
        rep = homomesy_from_orbits(fam.poset, orbits, dynamics.stat_cardinality)
        cases.append(VerificationCase(
            f"ideal-card-{m}x{n}", f"cardinality on order ideals of [{m}]x[{n}] is mn/2-mesic",
            f"{Fraction(m * n, 2)}-mesic", rep.verdict))
    for dims in ([4, 4], [4, 5], [2, 2, 3]):
        name = "x".join(f"[{d}]" for d in dims)
        rep = dynamics.homomesy_check(ics_family(product_of_chains(dims)),
                                      dynamics.stat_signed_cardinality, workers=workers)
        cases.append(VerificationCase(
            f"sc-counterexample-{'x'.join(map(str, dims))}",
            f"signed cardinality on ICS of {name} is not homomesic", False, rep.homomesic))
    return cases


# exploration


@dataclass
class ConjectureSample:
    m: int
    n: int
    total_ics: int
    in_target_orbits: int
    ratio: Fraction
    good_ics_count: int
    good_ics_found: int
    good_in_target: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "total_ics": self.total_ics,
            "in_target_orbits": self.in_target_orbits,
            "ratio": dynamics.fraction_str(self.ratio),
            "ratio_float": float(self.ratio),
            "good_ics_count": self.good_ics_count,
            "good_ics_found": self.good_ics_found,
            "good_in_target": self.good_in_target,
        }


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def good_ics_formula(m: int, n: int) -> int:
    k = n - 2 * m + 1
    if m < 1 or k < 2 * m:
        return 0
    return catalan(m) * comb(k, 2 * m)


def rows_of(dims: Sequence[int], s: int) -> list[int]:
    # the set restricted to each chain (i, *), as a bitmask over positions 1..n
    m, n = dims
    return [(s >> (r * n)) & ((1 << n) - 1) for r in range(m)]


def is_good(dims: Sequence[int], s: int) -> bool:
    ends = []
    for row in rows_of(dims, s):
        if row == 0:
            return False
        lo = (row & -row).bit_length()
        hi = row.bit_length()
        if row.bit_count() != hi - lo + 1:
            return False
        ends += [lo, hi]
    ends.sort()
    return all(b - a >= 2 for a, b in zip(ends, ends[1:]))


def explore_orbit_fraction(m: int, n_range: Iterable[int], budget: int = 200_000,
                           cap: int = convex.DEFAULT_CAP) -> list[ConjectureSample]:
    """Fraction of ICS of [m] x [n] in orbits of size m+n+1; nothing is asserted."""
    if m not in (2, 3):
        raise ValueError("exploration supports m = 2 (tuple engine) and m = 3 (generic engine)")
    samples = []
    for n in n_range:
        target = m + n + 1
        dims = (m, n)
        if m == 2:
            report = two_by_n.census(n)
            if report.total > budget:
                break
            sizes = {}
            for size, rep in report.orbits:
                for t in two_by_n.orbit_raw(n, rep):
                    sizes[two_by_n.embed_raw(n, t)] = size
        else:
            if m * n > cap:
                break
            fam = ics_family(product_of_chains(dims))
            members = fam.members(cap)
            if len(members) > budget:
                break
            sizes = {}
            for orb in dynamics.orbit_decomposition(dynamics.step_function(fam), members):
                for s in orb.states:
                    sizes[s] = orb.size
        total = len(sizes)
        hit = sum(1 for v in sizes.values() if v == target)
        good = [s for s in sizes if is_good(dims, s)]
        samples.append(ConjectureSample(
            m, n, total, hit, Fraction(hit, total), good_ics_formula(m, n), len(good),
            sum(1 for s in good if sizes[s] == target),
        ))
    return samples


def is_monotone(samples: Sequence[ConjectureSample]) -> bool:
    return all(a.ratio <= b.ratio for a, b in zip(samples, samples[1:]))


# coordinates (i, j) of the nine states in a reference [3] x [5] orbit, in order
REFERENCE_ORBIT_3x5 = [
    [(1, 5), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (3, 5)],
    [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1)],
    [(1, 2), (1, 3), (1, 4), (1, 5), (2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)],
    [(1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3)],
    [(1, 4), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)],
    [(1, 5), (2, 1), (2, 2), (3, 1)],
    [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 1), (3, 2)],
    [(1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)],
    [(1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (3, 4)],
]
REFERENCE_VALUES_3x5 = [-2, 2, 1, -1, -2, 1, 1, 1, -1]


def reference_orbit_cases() -> list[VerificationCase]:
    p = product_of_chains([3, 5])
    states = [convex.from_labels(p, c) for c in REFERENCE_ORBIT_3x5]
    step = dynamics.step_function(ics_family(p))
    values = [dynamics.stat_max_minus_min(p, s) for s in states]
    return [
        VerificationCase("orbit-3x5-consecutive", "the reference [3]x[5] sets form one rowmotion orbit in order",
                         True, all(step(states[k]) == states[(k + 1) % 9] for k in range(9))
                         and dynamics.orbit_of(step, states[0]).size == 9),
        VerificationCase("orbit-3x5-values", "max minus min along the reference orbit",
                         REFERENCE_VALUES_3x5, values),
        VerificationCase("orbit-3x5-sum", "max minus min sums to 0 over the reference orbit", 0, sum(values)),
    ]


def explore_max_minus_min(m: int, n_range: Iterable[int], cap: int = convex.DEFAULT_CAP,
                          budget: int = 200_000) -> list[VerificationCase]:
    cases = []
    for n in n_range:
        if m * n > cap:
            break
        fam = ics_family(product_of_chains([m, n]))
        members = fam.members(cap)
        if len(members) > budget:
            break
        orbits = dynamics.orbit_decomposition(dynamics.step_function(fam), members)
        rep = homomesy_from_orbits(fam.poset, orbits, dynamics.stat_max_minus_min)
        cases.append(VerificationCase(
            f"maxmin-{m}x{n}", f"max minus min on ICS of [{m}]x[{n}]", "0-mesic", rep.verdict,
            assertive=(m == 2)))
    if m == 3:
        cases.extend(reference_orbit_cases())
    return cases


SUITES = {
    "table4": run_table4_suite,
    "census": run_prediction_suite,
    "homomesy": run_homomesy_suite,
}
