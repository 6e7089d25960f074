"""Independent exhaustive enumeration of resource terms by exact size.

This is the oracle the Taylor-expansion tests are checked against: it builds
*every* resource term over a small variable pool, directly from the grammar
and the size measure, with no reference to the expansion code under test.
"""

from functools import lru_cache

from cbvlab.resource import Bag, RAbs, RApp, RVar


@lru_cache(maxsize=None)
def values_of_size(n: int, names: tuple) -> frozenset:
    out = set()
    if n == 1:
        out.update(RVar(x) for x in names)
    if n >= 2:
        for body in simples_of_size(n - 1, names):
            out.update(RAbs(x, body) for x in names)
    return frozenset(out)


@lru_cache(maxsize=None)
def simples_of_size(n: int, names: tuple) -> frozenset:
    out = set()
    # bags: 1 + total content size
    for content in _multisets(n - 1, 1, names):
        out.add(Bag(content))
    # applications: sizes add with no extra node weight
    for k in range(1, n):
        for f in simples_of_size(k, names):
            for a in simples_of_size(n - k, names):
                out.add(RApp(f, a))
    return frozenset(out)


@lru_cache(maxsize=None)
def _multisets(total: int, min_size: int, names: tuple) -> frozenset:
    """All value multisets (as sorted tuples) of exact total size."""
    if total == 0:
        return frozenset({()})
    out = set()
    for first in range(min_size, total + 1):
        for v in values_of_size(first, names):
            for rest in _multisets(total - first, first, names):
                out.add(tuple(sorted((v,) + rest, key=lambda u: u.akey)))
    return frozenset(out)


def all_simples(max_size: int, names=("x", "y")) -> list:
    out = []
    for n in range(1, max_size + 1):
        out.extend(simples_of_size(n, tuple(names)))
    return out


def all_values(max_size: int, names=("x", "y")) -> list:
    out = []
    for n in range(1, max_size + 1):
        out.extend(values_of_size(n, tuple(names)))
    return out
