"""Rigid contexts: resource contexts with ordered lists in place of bags.

Fixing an enumeration of each bag makes hole-filling injective: filling a
rigid with per-hole lists of values determines the filled term, and equal
fills force equal underlying contexts and equal per-hole multisets.  This is
the machinery behind the stability checker.

A rigid with no holes is a rigid term (compared up to alpha); holes compare
literally by index.  Lists are ordered: two rigids differing only by list
order are distinct.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .syntax import Term, is_value as is_term_value, to_text
from .resource import (
    Bag, RAbs, RApp, RHole, ResourceTerm, RVar,
    distinct_orderings, hole_degree, is_resource_value,
)
from .taylor import (
    DEFAULT_CAP, EnumerationCapExceeded, taylor_enumerate, taylor_units,
)

__all__ = [
    "Rigid", "RgVar", "RgHole", "RgAbs", "RgApp", "RgList",
    "is_rigid_value", "is_rigid_simple", "to_rgtext",
    "rigids_of", "underlying", "fill_rigid", "taylor_fill_set",
]


class Rigid:
    """A rigid k-context node (rigid term when hole-free)."""

    @functools.cached_property
    def akey(self):
        return _akey(self, {}, 0)

    @functools.cached_property
    def _hash(self) -> int:
        return hash(self.akey)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Rigid) and self.akey == other.akey

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}<{to_rgtext(self)}>"

    def __str__(self):
        return to_rgtext(self)


@dataclass(frozen=True, eq=False, repr=False)
class RgVar(Rigid):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class RgHole(Rigid):
    index: int


@dataclass(frozen=True, eq=False, repr=False)
class RgAbs(Rigid):
    var: str
    body: Rigid

    def __post_init__(self):
        if not is_rigid_simple(self.body):
            raise TypeError("rigid abstraction bodies are simple contexts")


@dataclass(frozen=True, eq=False, repr=False)
class RgApp(Rigid):
    fun: Rigid
    arg: Rigid

    def __post_init__(self):
        if not (is_rigid_simple(self.fun) and is_rigid_simple(self.arg)):
            raise TypeError("rigid applications apply simple to simple")


@dataclass(frozen=True, eq=False, repr=False)
class RgList(Rigid):
    items: tuple[Rigid, ...]

    def __post_init__(self):
        if not all(is_rigid_value(r) for r in self.items):
            raise TypeError("rigid lists contain value contexts only")


def is_rigid_value(r: Rigid) -> bool:
    return isinstance(r, (RgVar, RgHole, RgAbs))


def is_rigid_simple(r: Rigid) -> bool:
    return isinstance(r, (RgApp, RgList))


def _akey(r: Rigid, env: dict, depth: int):
    match r:
        case RgVar(name):
            lvl = env.get(name)
            return ("b", depth - lvl) if lvl is not None else ("f", name)
        case RgHole(i):
            return ("h", i)
        case RgAbs(x, body):
            return ("l", _akey(body, {**env, x: depth}, depth + 1))
        case RgApp(fun, arg):
            return ("a", _akey(fun, env, depth), _akey(arg, env, depth))
        case RgList(items):
            return ("t",) + tuple(_akey(it, env, depth) for it in items)
    raise TypeError(f"not a rigid context: {r!r}")


def to_rgtext(r: Rigid) -> str:
    match r:
        case RgVar(name):
            return name
        case RgHole(i):
            return f"_{i}"
        case RgAbs(x, body):
            return f"\\{x}. {to_rgtext(body)}"
        case RgApp(fun, arg):
            a = to_rgtext(arg)
            if isinstance(arg, RgApp):
                a = f"({a})"
            return f"{to_rgtext(fun)} {a}"
        case RgList(items):
            return "<" + ", ".join(to_rgtext(it) for it in items) + ">"
    raise TypeError(f"not a rigid context: {r!r}")


# ---------------------------------------------------------------------------
# Rigid(c) and the forgetful map

def rigids_of(c: ResourceTerm, cap: Optional[int] = None) -> frozenset:
    """The set Rigid(c): every ordering of every bag, structurally.

    Deduplicated (orderings of equal elements collapse), so the cardinality
    is the product of bag factorials exactly when all bag elements are
    pairwise distinct, and smaller otherwise.  Raises EnumerationCapExceeded
    rather than truncating when the set grows past `cap`.
    """
    cap = DEFAULT_CAP if cap is None else cap
    out = _rigids(c, cap)
    return frozenset(out)


def _rigids(c: ResourceTerm, cap: int) -> set:
    match c:
        case RVar(name):
            return {RgVar(name)}
        case RHole(i):
            return {RgHole(i)}
        case RAbs(x, body):
            return {RgAbs(x, r) for r in _rigids(body, cap)}
        case RApp(fun, arg):
            out = set()
            for f in _rigids(fun, cap):
                for a in _rigids(arg, cap):
                    out.add(RgApp(f, a))
                    if len(out) > cap:
                        raise EnumerationCapExceeded("Rigid enumeration", len(out), cap)
            return out
        case Bag(elems):
            choice_sets = [sorted(_rigids(v, cap), key=lambda r: r.akey) for v in elems]
            out = set()
            for choice in _choices(choice_sets):
                for ordering in distinct_orderings(choice):
                    out.add(RgList(ordering))
                    if len(out) > cap:
                        raise EnumerationCapExceeded("Rigid enumeration", len(out), cap)
            return out
    raise TypeError(f"not a resource term: {c!r}")


def _choices(sets: list):
    if not sets:
        yield ()
        return
    for head in sets[0]:
        for rest in _choices(sets[1:]):
            yield (head,) + rest


def underlying(r: Rigid) -> ResourceTerm:
    """Forget list order: the resource context r is a rigid of."""
    match r:
        case RgVar(name):
            return RVar(name)
        case RgHole(i):
            return RHole(i)
        case RgAbs(x, body):
            return RAbs(x, underlying(body))
        case RgApp(fun, arg):
            return RApp(underlying(fun), underlying(arg))
        case RgList(items):
            return Bag(tuple(underlying(it) for it in items))
    raise TypeError(f"not a rigid context: {r!r}")


# ---------------------------------------------------------------------------
# Hole filling

def fill_rigid(r: Rigid, args: Mapping[int, Sequence[ResourceTerm]]) -> ResourceTerm:
    """Fill the rigid r with one ordered list of resource values per hole.

    args[i] must have exactly deg(_i, underlying(r)) entries, all resource
    values.  Filling is deterministic: at applications each list splits into
    a prefix for the left part (sized by its hole degree) and the rest; at
    lists it splits into consecutive chunks sized by the components' degrees
    in list order.  Hole occurrences consume entries in left-to-right
    traversal order.  The fill is capture-permitting, like context filling.
    """
    under = underlying(r)
    vecs = {}
    for i in sorted(under.hole_indices | set(args)):
        vec = tuple(args.get(i, ()))
        need = hole_degree(under, i)
        if len(vec) != need:
            raise ValueError(
                f"hole _{i} needs {need} value(s), got {len(vec)}")
        for v in vec:
            if not is_resource_value(v):
                raise ValueError(f"fill arguments must be resource values: {v}")
        vecs[i] = vec
    return _fill(r, vecs)


def _fill(r: Rigid, vecs: dict) -> ResourceTerm:
    match r:
        case RgHole(i):
            (v,) = vecs[i]
            return v
        case RgVar(name):
            return RVar(name)
        case RgAbs(x, body):
            return RAbs(x, _fill(body, vecs))
        case RgApp(fun, arg):
            uf = underlying(fun)
            left, right = {}, {}
            for i, vec in vecs.items():
                d = hole_degree(uf, i)
                left[i], right[i] = vec[:d], vec[d:]
            return RApp(_fill(fun, left), _fill(arg, right))
        case RgList(items):
            offs = {i: 0 for i in vecs}
            filled = []
            for item in items:
                u = underlying(item)
                chunk = {}
                for i in vecs:
                    d = hole_degree(u, i)
                    chunk[i] = vecs[i][offs[i]:offs[i] + d]
                    offs[i] += d
                filled.append(_fill(item, chunk))
            return Bag(tuple(filled))
    raise TypeError(f"not a rigid context: {r!r}")


# ---------------------------------------------------------------------------
# Taylor expansion of a filled context, via rigids

def taylor_fill_set(C: Term, values: Sequence[Term], budget: int,
                    cap: Optional[int] = None) -> frozenset:
    """{ fill_rigid(r, lists) : c in T(C) at budget, r rigid of c,
    per-hole lists over the unit values of T(V_i) } filtered to size <= budget.

    Each V_i must be a value.  By the context-expansion lemma this equals
    taylor_enumerate(fill_context(C, values), budget); the test-suite asserts
    that equality on the corpus.
    """
    cap = DEFAULT_CAP if cap is None else cap
    for v in values:
        if not is_term_value(v):
            raise ValueError(f"fill values must be values: {to_text(v)}")
    k = len(values)
    bad = [i for i in C.hole_indices if i > k]
    if bad:
        raise ValueError(f"context has hole _{min(bad)} but only {k} value(s) given")
    pools = {
        i: taylor_units(values[i - 1], budget, cap)
        for i in range(1, k + 1)
    }
    out: set = set()
    for c in taylor_enumerate(C, budget, cap):
        slack = budget - c.size
        if slack < 0:
            continue
        holes = sorted(c.hole_indices)
        degs = [(i, hole_degree(c, i)) for i in holes]
        for r in rigids_of(c, cap):
            for vecs in _assignments(degs, pools, slack):
                t = _fill(r, vecs)
                if t.size <= budget:
                    out.add(t)
                    if len(out) > cap:
                        raise EnumerationCapExceeded("rigid fill set", len(out), cap)
    return frozenset(out)


def _assignments(degs: list, pools: dict, slack: int):
    """Per-hole ordered tuples of units, pruned by the total size slack.

    Replacing a hole occurrence (size 1) by a unit u costs size(u) - 1, so
    the combined cost across all entries must stay within `slack`.
    """
    if not degs:
        yield {}
        return
    (i, d), rest = degs[0], degs[1:]
    for vec, used in _tuples(pools[i], d, slack):
        for tail in _assignments(rest, pools, slack - used):
            yield {i: vec, **tail}


def _tuples(pool: tuple, d: int, slack: int):
    if d == 0:
        yield (), 0
        return
    for u in pool:
        cost = u.size - 1
        if cost > slack:
            break  # pools sorted by size
        for tail, used in _tuples(pool, d - 1, slack - cost):
            yield (u,) + tail, cost + used
