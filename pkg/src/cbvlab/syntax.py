"""Syntax of call-by-value lambda-terms and k-contexts.

Terms are immutable trees of `Var`, `Abs` and `App` nodes.  A k-context is a
term that additionally contains `Hole` leaves with indices in 1..k; a term
used as a program contains no holes.  Equality and hashing implement
alpha-equivalence (holes are free symbols and compare by index), so every set
or dict of terms is a set of alpha-classes.

Surface grammar::

    term  ::= abs | app
    abs   ::= ("\\" | "λ") ident+ "." term
    app   ::= atom+                          (left associative)
    atom  ::= ident | "_" digits | "(" term ")"
    ident ::= [A-Za-z][A-Za-z0-9_']*

``\\x y. M`` abbreviates ``\\x. \\y. M``; ``_i`` is the i-th hole (i >= 1).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

__all__ = [
    "Term", "Var", "Abs", "App", "Hole", "ParseError",
    "parse_term", "to_text", "alpha_eq", "is_value",
    "subst_value", "fill_context", "fresh_name", "subterms",
    "I", "DELTA", "OMEGA", "TRUE", "FALSE", "PAIR", "pair",
]


class Term:
    """A CbV lambda-term or k-context node.

    Instances are immutable; `==` and `hash` are alpha-equivalence (bound
    variables compared positionally, free variables and holes literally).
    """

    @functools.cached_property
    def akey(self):
        """Canonical alpha-invariant key: equal keys iff alpha-equivalent."""
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
        return isinstance(other, Term) and self.akey == other.akey

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}<{to_text(self)}>"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=False, repr=False)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class Abs(Term):
    var: str
    body: Term


@dataclass(frozen=True, eq=False, repr=False)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True, eq=False, repr=False)
class Hole(Term):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("hole indices start at 1")


def _akey(t: Term, env: dict, depth: int):
    match t:
        case Var(name):
            lvl = env.get(name)
            return ("b", depth - lvl) if lvl is not None else ("f", name)
        case Abs(x, body):
            return ("l", _akey(body, {**env, x: depth}, depth + 1))
        case App(fun, arg):
            return ("a", _akey(fun, env, depth), _akey(arg, env, depth))
        case Hole(i):
            return ("h", i)
    raise TypeError(f"not a term: {t!r}")


def _size(t: Term) -> int:
    match t:
        case Var(_) | Hole(_):
            return 1
        case Abs(_, body):
            return 1 + body.size
        case App(fun, arg):
            return 1 + fun.size + arg.size
    raise TypeError(f"not a term: {t!r}")


def _free_names(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset({name})
        case Abs(x, body):
            return body.free_names - {x}
        case App(fun, arg):
            return fun.free_names | arg.free_names
        case Hole(_):
            return frozenset()
    raise TypeError(f"not a term: {t!r}")


def _hole_indices(t: Term) -> frozenset[int]:
    match t:
        case Var(_):
            return frozenset()
        case Abs(_, body):
            return body.hole_indices
        case App(fun, arg):
            return fun.hole_indices | arg.hole_indices
        case Hole(i):
            return frozenset({i})
    raise TypeError(f"not a term: {t!r}")


def is_value(t: Term) -> bool:
    """Values are exactly variables and abstractions."""
    return isinstance(t, (Var, Abs))


def alpha_eq(a: Term, b: Term) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# Printing

def to_text(t: Term) -> str:
    match t:
        case Var(name):
            return name
        case Hole(i):
            return f"_{i}"
        case Abs(_, _):
            binders = []
            body = t
            while isinstance(body, Abs):
                binders.append(body.var)
                body = body.body
            return f"\\{' '.join(binders)}. {to_text(body)}"
        case App(fun, arg):
            f = to_text(fun)
            if isinstance(fun, Abs):
                f = f"({f})"
            a = to_text(arg)
            if isinstance(arg, (App, Abs)):
                a = f"({a})"
            return f"{f} {a}"
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    """Syntax error carrying the offending character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<lam>\\|λ)
  | (?P<dot>\.)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<hole>_[0-9]+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos] == "_":
                raise ParseError("malformed hole: expected '_' followed by digits", pos)
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, calls: Mapping[str, Term] | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.calls = calls or {}

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}", tok[2])
        return tok

    def parse_term(self) -> Term:
        kind, _, pos = self.peek()
        if kind == "lam":
            return self.parse_abs()
        parts = []
        while True:
            kind, _, _ = self.peek()
            if kind in ("ident", "hole", "lpar"):
                parts.append(self.parse_atom())
            elif kind == "lam" and parts:
                # trailing abstraction extends to the right: f \x. M
                parts.append(self.parse_abs())
                break
            else:
                break
        if not parts:
            raise ParseError("expected a term", pos)
        term = parts[0]
        for p in parts[1:]:
            term = App(term, p)
        return term

    def parse_abs(self) -> Term:
        self.expect("lam", "a lambda")
        binders = []
        while self.peek()[0] == "ident":
            binders.append(self.next()[1])
        if not binders:
            raise ParseError("expected at least one binder", self.peek()[2])
        self.expect("dot", "'.' after binders")
        body = self.parse_term()
        for x in reversed(binders):
            body = Abs(x, body)
        return body

    def parse_atom(self) -> Term:
        kind, value, pos = self.next()
        if kind == "ident":
            if value in self.calls and self.peek()[0] == "lpar":
                return self.parse_call(value, pos)
            return Var(value)
        if kind == "hole":
            idx = int(value[1:])
            if idx == 0:
                raise ParseError("hole indices start at 1", pos)
            return Hole(idx)
        if kind == "lpar":
            term = self.parse_term()
            self.expect("rpar", "')'")
            return term
        raise ParseError("expected a term", pos)

    def parse_call(self, name: str, pos: int) -> Term:
        ctx = self.calls[name]
        self.expect("lpar", "'('")
        args = [self.parse_term()]
        while self.peek()[0] == "comma":
            self.next()
            args.append(self.parse_term())
        self.expect("rpar", "')'")
        k = max(ctx.hole_indices, default=0)
        if len(args) != k:
            raise ParseError(f"{name} takes {k} argument(s), got {len(args)}", pos)
        return fill_context(ctx, args)


def parse_term(text: str, *, calls: Mapping[str, Term] | None = None) -> Term:
    """Parse the surface syntax into a term.

    `calls` optionally maps context names to k-contexts, enabling the corpus
    file sugar `Name(arg1, ..., argk)` (hole-filling); plain programs never
    need it.
    """
    p = _Parser(text, calls)
    term = p.parse_term()
    kind, _, pos = p.peek()
    if kind != "eof":
        raise ParseError("unexpected trailing input", pos)
    return term


# ---------------------------------------------------------------------------
# Substitution and context filling

def fresh_name(base: str, avoid) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


def subst_value(m: Term, x: str, v: Term) -> Term:
    """Capture-avoiding substitution of the value `v` for `x` in `m`.

    Only values are ever substituted in CbV; a non-value `v` is rejected.
    """
    if not is_value(v):
        raise ValueError(f"substituted term must be a value: {to_text(v)}")
    if m.hole_indices:
        raise ValueError("cannot substitute inside a context")
    return _subst(m, x, v)


def _subst(m: Term, x: str, v: Term) -> Term:
    if x not in m.free_names:
        return m
    match m:
        case Var(_):
            return v
        case App(fun, arg):
            return App(_subst(fun, x, v), _subst(arg, x, v))
        case Abs(y, body):
            if y in v.free_names:
                y2 = fresh_name(y, v.free_names | body.free_names | {x})
                body = _subst(body, y, Var(y2))
                return Abs(y2, _subst(body, x, v))
            return Abs(y, _subst(body, x, v))
    raise TypeError(f"not a term: {m!r}")


def fill_context(c: Term, args: Sequence[Term]) -> Term:
    """Textual (capture-permitting) replacement of every `Hole i` by args[i-1]."""
    k = len(args)
    bad = [i for i in c.hole_indices if i > k]
    if bad:
        raise ValueError(f"context has hole _{min(bad)} but only {k} argument(s) given")
    return _fill(c, args)


def _fill(c: Term, args: Sequence[Term]) -> Term:
    if not c.hole_indices:
        return c
    match c:
        case Hole(i):
            return args[i - 1]
        case Abs(x, body):
            return Abs(x, _fill(body, args))
        case App(fun, arg):
            return App(_fill(fun, args), _fill(arg, args))
    return c


def subterms(t: Term) -> Iterator[Term]:
    """All subterm occurrences, preorder."""
    yield t
    match t:
        case Abs(_, body):
            yield from subterms(body)
        case App(fun, arg):
            yield from subterms(fun)
            yield from subterms(arg)


# ---------------------------------------------------------------------------
# Stock combinators

I = Abs("x", Var("x"))
DELTA = Abs("x", App(Var("x"), Var("x")))
OMEGA = App(DELTA, DELTA)
TRUE = Abs("x", Abs("y", Var("x")))
FALSE = Abs("x", Abs("y", Var("y")))
PAIR = Abs("z", App(App(Var("z"), Hole(1)), Hole(2)))


def pair(m: Term, n: Term) -> Term:
    """The pair value \\z. z M N (a value for any M, N)."""
    return fill_context(PAIR, [m, n])
