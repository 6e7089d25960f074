"""Qualitative Taylor expansion of CbV terms and contexts, bounded NFT, and
the bounded preorder.

T(x) is the set of bags of x's, T(\\x.M) the set of bags of \\x.s with
s in T(M), T(M N) the set of applications of elements, and T(_i) the set of
bags of the hole _i.  NFT(M) is the union of the normal forms of T(M); since
T(M) and NFT(M) are infinite, everything here is budgeted by the size
measure, and every consumer must treat "not found within budget" as exactly
that: a semi-decision, never a disproof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import Abs, App, Hole, Term, Var, to_text
from .resource import (
    Bag, RAbs, RApp, RHole, ResourceTerm, RVar,
    is_normal, is_simple, normalize, rename_free,
)

__all__ = [
    "EnumerationCapExceeded", "DEFAULT_CAP",
    "taylor_member", "taylor_units", "taylor_enumerate",
    "nft_bounded", "nft_witnesses", "nft_member",
    "LeqReport", "leq_bounded", "eq_bounded", "clear_caches",
]

DEFAULT_CAP = 1_000_000


class EnumerationCapExceeded(RuntimeError):
    """A bounded enumeration grew past the configured cardinality cap.

    Raised instead of silently truncating; carries the offending count.
    """

    def __init__(self, what: str, count: int, cap: int):
        super().__init__(f"{what}: {count} elements exceed the cap of {cap}")
        self.count = count
        self.cap = cap


_ENUM_CACHE: dict = {}
_NFT_CACHE: dict = {}


def clear_caches():
    _ENUM_CACHE.clear()
    _NFT_CACHE.clear()


# ---------------------------------------------------------------------------
# Membership

def taylor_member(s: ResourceTerm, m: Term) -> bool:
    """Decide s in T(m) structurally; s and m may share hole indices.

    Resource values are never elements of a Taylor expansion (the expansion
    maps into simple terms), so they return False.
    """
    if not is_simple(s):
        return False
    match m:
        case Var(x):
            return isinstance(s, Bag) and all(v == RVar(x) for v in s.elems)
        case Hole(i):
            return isinstance(s, Bag) and all(v == RHole(i) for v in s.elems)
        case Abs(x, body):
            if not isinstance(s, Bag):
                return False
            for v in s.elems:
                if not isinstance(v, RAbs):
                    return False
                if v.var == x:
                    b = v.body
                elif x in v.body.free_names:
                    return False
                else:
                    b = rename_free(v.body, v.var, x)
                if not taylor_member(b, body):
                    return False
            return True
        case App(f, a):
            if not isinstance(s, RApp):
                return False
            return taylor_member(s.fun, f) and taylor_member(s.arg, a)
    raise TypeError(f"not a term: {m!r}")


# ---------------------------------------------------------------------------
# Bounded enumeration

def taylor_units(m: Term, max_size: int, cap: Optional[int] = None) -> tuple:
    """The value atoms whose bags make up T(m), for m a value or hole.

    T(m) is exactly the set of bags over these units; they are returned
    sorted by (size, canonical key), each of size <= max_size.
    """
    cap = DEFAULT_CAP if cap is None else cap
    match m:
        case Var(x):
            units = (RVar(x),) if max_size >= 1 else ()
        case Hole(i):
            units = (RHole(i),) if max_size >= 1 else ()
        case Abs(x, body):
            units = tuple(RAbs(x, s) for s in taylor_enumerate(body, max_size - 1, cap))
        case _:
            raise ValueError(f"not a value or hole: {to_text(m)}")
    return tuple(sorted(units, key=lambda u: (u.size, u.akey)))


def _bags_over(units: tuple, budget: int, cap: int) -> list:
    """All bags over `units` with content size <= budget (bag size 1+content)."""
    out: list = []
    acc: list = []

    def rec(start: int, remaining: int):
        out.append(Bag(tuple(u for _, u in acc)))
        if len(out) > cap:
            raise EnumerationCapExceeded("Taylor enumeration", len(out), cap)
        for j in range(start, len(units)):
            sz = units[j].size
            if sz > remaining:
                break
            acc.append((j, units[j]))
            rec(j, remaining - sz)
            acc.pop()

    rec(0, budget)
    return out


def taylor_enumerate(m: Term, budget: int, cap: Optional[int] = None) -> frozenset:
    """Exactly { s in T(m) : size(s) <= budget }, sound and complete.

    Monotone in the budget; budgets below 1 give the empty set (every
    resource term has size >= 1).
    """
    cap = DEFAULT_CAP if cap is None else cap
    key = (m, budget)
    cached = _ENUM_CACHE.get(key)
    if cached is not None:
        if len(cached) > cap:
            raise EnumerationCapExceeded("Taylor enumeration", len(cached), cap)
        return cached
    if budget < 1:
        out = frozenset()
    else:
        match m:
            case Var(_) | Hole(_) | Abs(_, _):
                units = taylor_units(m, budget - 1, cap)
                out = frozenset(_bags_over(units, budget - 1, cap))
            case App(f, a):
                acc = set()
                for s1 in taylor_enumerate(f, budget - 1, cap):
                    for s2 in taylor_enumerate(a, budget - s1.size, cap):
                        acc.add(RApp(s1, s2))
                        if len(acc) > cap:
                            raise EnumerationCapExceeded(
                                "Taylor enumeration", len(acc), cap)
                out = frozenset(acc)
            case _:
                raise TypeError(f"not a term: {m!r}")
    _ENUM_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# Bounded NFT and the preorder

def _require_program(m: Term):
    if m.hole_indices:
        raise ValueError(f"term contains holes: {to_text(m)}")


def nft_witnesses(m: Term, budget: int, cap: Optional[int] = None) -> dict:
    """Map each element of the bounded NFT to a witness expansion element.

    Keys are the normal forms reachable from T(m) at the budget; the witness
    for t is the smallest s in T(m) (by size, then canonical key) with
    t in NF(s).
    """
    _require_program(m)
    if budget < 1:
        raise ValueError("budgets start at 1")
    key = (m, budget)
    cached = _NFT_CACHE.get(key)
    if cached is not None:
        return cached
    witnesses: dict = {}
    elems = sorted(taylor_enumerate(m, budget, cap), key=lambda s: (s.size, s.akey))
    for s in elems:
        for t in normalize(s):
            witnesses.setdefault(t, s)
    _NFT_CACHE[key] = witnesses
    return witnesses


def nft_bounded(m: Term, budget: int, cap: Optional[int] = None) -> frozenset:
    """The bounded under-approximation of NFT(m): normal forms of T(m) at budget.

    Monotone in the budget; every element satisfies is_normal.
    """
    return frozenset(nft_witnesses(m, budget, cap))


def nft_member(t: ResourceTerm, m: Term, search_budget: int,
               cap: Optional[int] = None) -> Optional[ResourceTerm]:
    """Search a witness s in T(m) with size(s) <= search_budget and t in NF(s).

    Returns the witness, or None for not-found-within-budget.  Absence at a
    budget is not absence: this is a semi-decision.
    """
    if not is_normal(t):
        raise ValueError(f"membership queries take normal terms: {t}")
    return nft_witnesses(m, search_budget, cap).get(t)


@dataclass(frozen=True)
class LeqReport:
    """Outcome of a bounded NFT-inclusion check between two terms.

    `missing` lists the elements of the left bounded NFT for which the
    witness search in the right term exhausted the search budget; an empty
    tuple means the inclusion held at these budgets.
    """
    left: Term
    right: Term
    budget: int
    search_budget: int
    checked: int
    missing: tuple

    @property
    def holds(self) -> bool:
        return not self.missing


def leq_bounded(m: Term, n: Term, budget: int, search_budget: int,
                cap: Optional[int] = None) -> LeqReport:
    """Check NFT_budget(m) against NFT(n) by witness search at search_budget."""
    _require_program(m)
    _require_program(n)
    left = sorted(nft_bounded(m, budget, cap), key=lambda t: (t.size, t.akey))
    right = nft_witnesses(n, search_budget, cap)
    missing = tuple(t for t in left if t not in right)
    return LeqReport(m, n, budget, search_budget, len(left), missing)


def eq_bounded(m: Term, n: Term, budget: int, search_budget: int,
               cap: Optional[int] = None) -> tuple[LeqReport, LeqReport]:
    """Both directions of the bounded preorder (the =_T check at budget)."""
    return (
        leq_bounded(m, n, budget, search_budget, cap),
        leq_bounded(n, m, budget, search_budget, cap),
    )
