"""Resource CbV terms, qualitative sums, linear substitution and normalization.

Grammar (mutually inductive, modulo alpha)::

    values        v ::= x | \\x. s          (RVar, RAbs; RHole in contexts)
    simple terms  s ::= s1 s2 | [v1, ..., vn]   (RApp, Bag)

A Sum is a finite *set* of terms (qualitative setting: no coefficients); the
empty set is the annihilator 0.  Reduction rules, closed under all contexts:

  * beta:   [\\x.s] B  ->  s<B/x>   for a bag B, where s<B/x> is the set of
    all replacements of the free occurrences of x by the elements of B along
    a bijection, and 0 when deg(s, x) != |B|;
  * clash:  [v1..vn] t -> 0 whenever n != 1, for any argument t.

A singleton variable head [x] t is head-normal, and an abstraction head with
a non-bag argument must wait for the argument (CbV discipline).  Any subterm
reducing to 0 annihilates the whole term.  The size measure drops by at least
3 on every step, so normalization terminates; it is also confluent, which the
test-suite cross-checks by comparing reduction strategies.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

__all__ = [
    "ResourceTerm", "RVar", "RAbs", "RHole", "Bag", "RApp", "Sum",
    "bag", "is_resource_value", "is_simple", "degree", "hole_degree",
    "distinct_orderings", "linear_subst", "rename_free",
    "redex_paths", "reduce_at", "step_r", "is_normal",
    "normalize", "normalize_strategy", "reach",
    "parse_resource", "to_rtext", "sum_to_text", "RParseError", "clear_caches",
]


class ResourceTerm:
    """A resource value or simple term (or context node, if holes occur).

    Immutable; `==`/`hash` are alpha-equivalence with bags compared as
    multisets.  Bags keep a canonical element order internally so printing
    and iteration are deterministic.
    """

    @functools.cached_property
    def akey(self):
        return _akey(self, {}, 0)

    @functools.cached_property
    def size(self) -> int:
        return _size(self)

    @functools.cached_property
    def free_names(self) -> frozenset[str]:
        return _free_names(self)

    @functools.cached_property
    def hole_indices(self) -> frozenset[int]:
        return _hole_indices(self)

    @functools.cached_property
    def _hash(self) -> int:
        return hash(self.akey)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, ResourceTerm) and self.akey == other.akey

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}<{to_rtext(self)}>"

    def __str__(self):
        return to_rtext(self)


@dataclass(frozen=True, eq=False, repr=False)
class RVar(ResourceTerm):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class RHole(ResourceTerm):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("hole indices start at 1")


@dataclass(frozen=True, eq=False, repr=False)
class RAbs(ResourceTerm):
    var: str
    body: ResourceTerm

    def __post_init__(self):
        if not is_simple(self.body):
            raise TypeError("abstraction bodies are simple terms")


@dataclass(frozen=True, eq=False, repr=False)
class Bag(ResourceTerm):
    elems: tuple[ResourceTerm, ...]

    def __post_init__(self):
        if not all(is_resource_value(v) for v in self.elems):
            raise TypeError("bags contain resource values only")
        object.__setattr__(
            self, "elems", tuple(sorted(self.elems, key=lambda v: v.akey))
        )


@dataclass(frozen=True, eq=False, repr=False)
class RApp(ResourceTerm):
    fun: ResourceTerm
    arg: ResourceTerm

    def __post_init__(self):
        if not (is_simple(self.fun) and is_simple(self.arg)):
            raise TypeError("applications apply a simple term to a simple term")


def bag(*values: ResourceTerm) -> Bag:
    return Bag(tuple(values))


def is_resource_value(t: ResourceTerm) -> bool:
    return isinstance(t, (RVar, RAbs, RHole))


def is_simple(t: ResourceTerm) -> bool:
    return isinstance(t, (Bag, RApp))


# Sums are plain frozensets; the empty frozenset is 0.
Sum = frozenset


def _akey(t: ResourceTerm, env: dict, depth: int):
    match t:
        case RVar(name):
            lvl = env.get(name)
            return ("b", depth - lvl) if lvl is not None else ("f", name)
        case RHole(i):
            return ("h", i)
        case RAbs(x, body):
            return ("l", _akey(body, {**env, x: depth}, depth + 1))
        case Bag(elems):
            return ("m", tuple(sorted(_akey(v, env, depth) for v in elems)))
        case RApp(fun, arg):
            return ("a", _akey(fun, env, depth), _akey(arg, env, depth))
    raise TypeError(f"not a resource term: {t!r}")


def _size(t: ResourceTerm) -> int:
    match t:
        case RVar(_) | RHole(_):
            return 1
        case RAbs(_, body):
            return 1 + body.size
        case Bag(elems):
            return 1 + sum(v.size for v in elems)
        case RApp(fun, arg):
            return fun.size + arg.size
    raise TypeError(f"not a resource term: {t!r}")


def _free_names(t: ResourceTerm) -> frozenset[str]:
    match t:
        case RVar(name):
            return frozenset({name})
        case RHole(_):
            return frozenset()
        case RAbs(x, body):
            return body.free_names - {x}
        case Bag(elems):
            return frozenset().union(*(v.free_names for v in elems)) if elems else frozenset()
        case RApp(fun, arg):
            return fun.free_names | arg.free_names
    raise TypeError(f"not a resource term: {t!r}")


def _hole_indices(t: ResourceTerm) -> frozenset[int]:
    match t:
        case RVar(_):
            return frozenset()
        case RHole(i):
            return frozenset({i})
        case RAbs(_, body):
            return body.hole_indices
        case Bag(elems):
            return frozenset().union(*(v.hole_indices for v in elems)) if elems else frozenset()
        case RApp(fun, arg):
            return fun.hole_indices | arg.hole_indices
    raise TypeError(f"not a resource term: {t!r}")


def degree(t: ResourceTerm, x: str) -> int:
    """Number of free occurrences of the variable x."""
    match t:
        case RVar(name):
            return 1 if name == x else 0
        case RHole(_):
            return 0
        case RAbs(y, body):
            return 0 if y == x else degree(body, x)
        case Bag(elems):
            return sum(degree(v, x) for v in elems)
        case RApp(fun, arg):
            return degree(fun, x) + degree(arg, x)
    raise TypeError(f"not a resource term: {t!r}")


def hole_degree(t: ResourceTerm, i: int) -> int:
    """Number of occurrences of hole i."""
    match t:
        case RVar(_):
            return 0
        case RHole(j):
            return 1 if j == i else 0
        case RAbs(_, body):
            return hole_degree(body, i)
        case Bag(elems):
            return sum(hole_degree(v, i) for v in elems)
        case RApp(fun, arg):
            return hole_degree(fun, i) + hole_degree(arg, i)
    raise TypeError(f"not a resource term: {t!r}")


# ---------------------------------------------------------------------------
# Printing and parsing

def to_rtext(t: ResourceTerm) -> str:
    match t:
        case RVar(name):
            return name
        case RHole(i):
            return f"_{i}"
        case RAbs(x, body):
            return f"\\{x}. {to_rtext(body)}"
        case Bag(elems):
            return "[" + ", ".join(to_rtext(v) for v in elems) + "]"
        case RApp(fun, arg):
            f = to_rtext(fun)
            a = to_rtext(arg)
            if isinstance(arg, RApp):
                a = f"({a})"
            return f"{f} {a}"
    raise TypeError(f"not a resource term: {t!r}")


def sum_to_text(s: Iterable[ResourceTerm]) -> str:
    """Render a Sum: `{ s1 ; s2 ; ... }`, or `0` when empty."""
    terms = sorted(s, key=lambda t: (t.size, to_rtext(t)))
    if not terms:
        return "0"
    return "{ " + " ; ".join(to_rtext(t) for t in terms) + " }"


class RParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_RTOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<lam>\\|λ)
  | (?P<dot>\.)
  | (?P<lbrk>\[) | (?P<rbrk>\])
  | (?P<lpar>\() | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<hole>_[0-9]+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
""", re.VERBOSE)


def _rtokenize(text: str):
    out, pos = [], 0
    while pos < len(text):
        m = _RTOKEN.match(text, pos)
        if m is None:
            raise RParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _RParser:
    def __init__(self, text: str):
        self.tokens = _rtokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok[0] != kind:
            raise RParseError(f"expected {what}", tok[2])
        return tok

    def parse_any(self) -> ResourceTerm:
        """A value, or a juxtaposed application of simple terms."""
        items = []
        while True:
            kind, value, pos = self.peek()
            if kind == "lbrk":
                items.append((self.parse_bag(), pos))
            elif kind == "lpar":
                self.next()
                inner = self.parse_any()
                self.expect("rpar", "')'")
                items.append((inner, pos))
            elif kind in ("ident", "hole", "lam") and not items:
                items.append((self.parse_value(), pos))
            else:
                break
        if not items:
            raise RParseError("expected a resource term", self.peek()[2])
        if len(items) == 1:
            return items[0][0]
        for t, pos in items:
            if not is_simple(t):
                raise RParseError(
                    "values cannot be applied directly; wrap in a bag", pos)
        term = items[0][0]
        for t, _ in items[1:]:
            term = RApp(term, t)
        return term

    def parse_value(self) -> ResourceTerm:
        kind, value, pos = self.next()
        if kind == "ident":
            return RVar(value)
        if kind == "hole":
            idx = int(value[1:])
            if idx == 0:
                raise RParseError("hole indices start at 1", pos)
            return RHole(idx)
        if kind == "lam":
            name = self.expect("ident", "a binder")[1]
            self.expect("dot", "'.' after binder")
            body = self.parse_any()
            if not is_simple(body):
                raise RParseError("abstraction bodies are simple terms", pos)
            return RAbs(name, body)
        if kind == "lpar":
            v = self.parse_value()
            self.expect("rpar", "')'")
            return v
        raise RParseError("expected a resource value", pos)

    def parse_bag(self) -> Bag:
        self.expect("lbrk", "'['")
        elems = []
        if self.peek()[0] != "rbrk":
            elems.append(self.parse_value())
            while self.peek()[0] == "comma":
                self.next()
                elems.append(self.parse_value())
        self.expect("rbrk", "']'")
        return Bag(tuple(elems))


def parse_resource(text: str) -> ResourceTerm:
    """Parse resource syntax: bags `[v1, v2]`, `\\x. s`, juxtaposition, `_i`."""
    p = _RParser(text)
    t = p.parse_any()
    kind, _, pos = p.peek()
    if kind != "eof":
        raise RParseError("unexpected trailing input", pos)
    return t


# ---------------------------------------------------------------------------
# Linear substitution

def _fresh(base: str, avoid: set[str]) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


def _freshen(t: ResourceTerm, avoid: set[str], ren: dict) -> ResourceTerm:
    """Rename binders that collide with `avoid`; `ren` maps outer renamings."""
    match t:
        case RVar(name):
            return RVar(ren.get(name, name))
        case RHole(_):
            return t
        case RAbs(x, body):
            if x in avoid:
                x2 = _fresh(x, avoid | body.free_names)
                avoid.add(x2)
                return RAbs(x2, _freshen(body, avoid, {**ren, x: x2}))
            ren2 = {k: v for k, v in ren.items() if k != x}
            return RAbs(x, _freshen(body, avoid, ren2))
        case Bag(elems):
            return Bag(tuple(_freshen(v, avoid, ren) for v in elems))
        case RApp(fun, arg):
            return RApp(_freshen(fun, avoid, ren), _freshen(arg, avoid, ren))
    raise TypeError(f"not a resource term: {t!r}")


def _replace_occurrences(t: ResourceTerm, x: str, values: tuple, counter: list):
    """Replace the free occurrences of x, in traversal order, by `values`."""
    match t:
        case RVar(name):
            if name == x:
                v = values[counter[0]]
                counter[0] += 1
                return v
            return t
        case RHole(_):
            return t
        case RAbs(y, body):
            if y == x:
                return t
            return RAbs(y, _replace_occurrences(body, x, values, counter))
        case Bag(elems):
            return Bag(tuple(_replace_occurrences(v, x, values, counter) for v in elems))
        case RApp(fun, arg):
            f = _replace_occurrences(fun, x, values, counter)
            a = _replace_occurrences(arg, x, values, counter)
            return RApp(f, a)
    raise TypeError(f"not a resource term: {t!r}")


def rename_free(t: ResourceTerm, old: str, new: str) -> ResourceTerm:
    """Capture-avoiding rename of the free variable `old` to `new`."""
    if old == new or old not in t.free_names:
        return t
    d = degree(t, old)
    fresh = _freshen(t, {new, old}, {})
    out = _replace_occurrences(fresh, old, (RVar(new),) * d, [0])
    return out


def distinct_orderings(items) -> Iterator[tuple]:
    """All distinct orderings of a multiset (each exactly once).

    Unlike itertools.permutations this collapses repeated elements, so a bag
    of n equal values yields one ordering rather than n! copies.
    """
    counts: dict = {}
    for it in items:
        counts[it] = counts.get(it, 0) + 1
    total = sum(counts.values())
    acc: list = []

    def rec():
        if len(acc) == total:
            yield tuple(acc)
            return
        for it in counts:
            if counts[it]:
                counts[it] -= 1
                acc.append(it)
                yield from rec()
                acc.pop()
                counts[it] += 1

    yield from rec()


def linear_subst(s: ResourceTerm, x: str, values) -> frozenset:
    """s<B/x>: all bijective replacements of x's occurrences by B's elements.

    `values` is a Bag or an iterable of resource values.  Returns the empty
    Sum when deg(s, x) != |B|.
    """
    elems = values.elems if isinstance(values, Bag) else tuple(values)
    if not all(is_resource_value(v) for v in elems):
        raise TypeError("can only substitute resource values")
    d = degree(s, x)
    if d != len(elems):
        return frozenset()
    if d == 0:
        return frozenset({s})
    avoid = set(s.free_names) | {x}
    for v in elems:
        avoid |= v.free_names
    body = _freshen(s, avoid, {})
    out = set()
    for perm in distinct_orderings(elems):
        out.add(_replace_occurrences(body, x, perm, [0]))
    return frozenset(out)


# ---------------------------------------------------------------------------
# One-step reduction

Path = tuple


def _root_redex(t: ResourceTerm) -> Optional[frozenset]:
    """The Sum fired by a root redex, or None if the root is not a redex."""
    if not isinstance(t, RApp):
        return None
    fun = t.fun
    if not isinstance(fun, Bag):
        return None
    if len(fun.elems) != 1:
        return frozenset()  # clash
    head = fun.elems[0]
    if isinstance(head, RAbs) and isinstance(t.arg, Bag):
        return linear_subst(head.body, head.var, t.arg)
    return None


def redex_paths(t: ResourceTerm) -> Iterator[Path]:
    """All redex positions, in leftmost-outermost (preorder) order."""
    root = _root_redex(t)
    if root is not None:
        yield ()
    match t:
        case RAbs(_, body):
            for p in redex_paths(body):
                yield ("body",) + p
        case Bag(elems):
            for i, v in enumerate(elems):
                for p in redex_paths(v):
                    yield ("elem", i) + p
        case RApp(fun, arg):
            for p in redex_paths(fun):
                yield ("fun",) + p
            for p in redex_paths(arg):
                yield ("arg",) + p


def _subterm(t: ResourceTerm, path: Path) -> ResourceTerm:
    for k, move in enumerate(path):
        if move == "body":
            t = t.body
        elif move == "fun":
            t = t.fun
        elif move == "arg":
            t = t.arg
        elif move == "elem":
            t = t.elems[path[k + 1]]
        elif isinstance(move, int):
            continue
        else:
            raise ValueError(f"bad path move {move!r}")
    return t


def _rebuild(t: ResourceTerm, path: Path, new: ResourceTerm) -> ResourceTerm:
    if not path:
        return new
    move = path[0]
    if move == "body":
        return RAbs(t.var, _rebuild(t.body, path[1:], new))
    if move == "fun":
        return RApp(_rebuild(t.fun, path[1:], new), t.arg)
    if move == "arg":
        return RApp(t.fun, _rebuild(t.arg, path[1:], new))
    if move == "elem":
        i = path[1]
        elems = list(t.elems)
        elems[i] = _rebuild(elems[i], path[2:], new)
        return Bag(tuple(elems))
    raise ValueError(f"bad path move {move!r}")


def reduce_at(t: ResourceTerm, path: Path) -> frozenset:
    """Fire the redex at `path`; empty Sum annihilates the whole term."""
    local = _root_redex(_subterm(t, path))
    if local is None:
        raise ValueError(f"no redex at {path} in {to_rtext(t)}")
    out = set()
    for r in local:
        whole = _rebuild(t, path, r)
        assert whole.size < t.size, "reduction must shrink the size measure"
        out.add(whole)
    return frozenset(out)


def step_r(t: ResourceTerm) -> Optional[frozenset]:
    """One leftmost-outermost step: None if normal, else the resulting Sum.

    Note the empty Sum (annihilation) is a result, distinct from None.
    """
    path = next(redex_paths(t), None)
    if path is None:
        return None
    return reduce_at(t, path)


def is_normal(t: ResourceTerm) -> bool:
    return next(redex_paths(t), None) is None


# ---------------------------------------------------------------------------
# Normalization

_NF_CACHE: dict = {}
_STRAT_CACHE: dict = {}
_REACH_CACHE: dict = {}


def clear_caches():
    _NF_CACHE.clear()
    _STRAT_CACHE.clear()
    _REACH_CACHE.clear()


def _bag_combos(parts: list[frozenset]) -> Iterator[tuple]:
    if not parts:
        yield ()
        return
    for head in parts[0]:
        for rest in _bag_combos(parts[1:]):
            yield (head,) + rest


def normalize(t: ResourceTerm) -> frozenset:
    """NF(t): the full Sum of normal forms (terminating, strategy-independent).

    Computed compositionally: subterms first, then the root, re-normalizing
    contracta; memoized globally.
    """
    cached = _NF_CACHE.get(t)
    if cached is not None:
        return cached
    match t:
        case RVar(_) | RHole(_):
            out = frozenset({t})
        case RAbs(x, body):
            out = frozenset(RAbs(x, u) for u in normalize(body))
        case Bag(elems):
            parts = [normalize(v) for v in elems]
            out = frozenset(Bag(combo) for combo in _bag_combos(parts))
        case RApp(fun, arg):
            acc = set()
            for fu in normalize(fun):
                for au in normalize(arg):
                    s = RApp(fu, au)
                    root = _root_redex(s)
                    if root is None:
                        acc.add(s)
                    else:
                        for r in root:
                            acc |= normalize(r)
            out = frozenset(acc)
        case _:
            raise TypeError(f"not a resource term: {t!r}")
    _NF_CACHE[t] = out
    return out


def _choose_lo(t: ResourceTerm) -> Optional[Path]:
    return next(redex_paths(t), None)


def _choose_ri(t: ResourceTerm) -> Optional[Path]:
    """Rightmost-innermost redex: rightmost children first, root last."""
    match t:
        case RAbs(_, body):
            p = _choose_ri(body)
            if p is not None:
                return ("body",) + p
        case Bag(elems):
            for i in range(len(elems) - 1, -1, -1):
                p = _choose_ri(elems[i])
                if p is not None:
                    return ("elem", i) + p
        case RApp(fun, arg):
            p = _choose_ri(arg)
            if p is not None:
                return ("arg",) + p
            p = _choose_ri(fun)
            if p is not None:
                return ("fun",) + p
    return () if _root_redex(t) is not None else None


def normalize_strategy(t: ResourceTerm, strategy: str = "lo") -> frozenset:
    """Normalize by repeatedly firing one redex chosen by the strategy.

    `strategy` is "lo" (leftmost-outermost) or "ri" (rightmost-innermost);
    by confluence both agree with `normalize`, which the tests assert.
    """
    choose = {"lo": _choose_lo, "ri": _choose_ri}[strategy]
    memo = _STRAT_CACHE.setdefault(strategy, {})

    def nf(u: ResourceTerm) -> frozenset:
        cached = memo.get(u)
        if cached is not None:
            return cached
        path = choose(u)
        if path is None:
            out = frozenset({u})
        else:
            acc = set()
            for r in reduce_at(u, path):
                acc |= nf(r)
            out = frozenset(acc)
        memo[u] = out
        return out

    return nf(t)


def reach(t: ResourceTerm) -> frozenset:
    """All terms reachable from t by firing redexes at arbitrary positions.

    This is element-wise reachability for sums: s ->>_r S with s' in S for
    some S iff s' in reach(s).  Includes t itself.
    """
    cached = _REACH_CACHE.get(t)
    if cached is not None:
        return cached
    acc = {t}
    for path in redex_paths(t):
        for r in reduce_at(t, path):
            acc |= reach(r)
    out = frozenset(acc)
    _REACH_CACHE[t] = out
    return out
