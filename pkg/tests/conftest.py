from __future__ import annotations

from itertools import combinations

import pytest

from icsrow.poset import Poset, product_of_chains


def plain_poset(p: Poset) -> Poset:
    """Same order, but closures go through the per-element masks."""
    return Poset(p.size, p.covers, p.labels)


def brute_force_leq(p: Poset) -> list[list[bool]]:
    # reflexive-transitive closure of the cover graph (Floyd-Warshall)
    n = p.size
    r = [[x == y for y in range(n)] for x in range(n)]
    for a, b in p.covers:
        r[a][b] = True
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    return r


def brute_force_convex(p: Poset, s: int) -> bool:
    leq = brute_force_leq(p) if not hasattr(p, "_bf_leq") else p._bf_leq
    p._bf_leq = leq
    members = [x for x in range(p.size) if s >> x & 1]
    for x in members:
        for y in members:
            if leq[x][y]:
                for z in range(p.size):
                    if leq[x][z] and leq[z][y] and not s >> z & 1:
                        return False
    return True


def all_subsets(p: Poset):
    return range(1 << p.size)


SMALL_DIMS = [[1], [4], [7], [2, 2], [2, 3], [3, 3], [2, 4], [2, 2, 2], [1, 5], [2, 2, 3]]


@pytest.fixture(params=SMALL_DIMS, ids=lambda d: "x".join(map(str, d)))
def small_poset(request):
    return product_of_chains(request.param)


# one summary line per acceptance criterion

_acceptance: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = ("PASS" if report.outcome == "passed" else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, (status, secs) in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{status}  {name}  ({secs:.2f}s)")
