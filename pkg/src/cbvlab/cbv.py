"""CbV reduction: one-step enumeration, evaluation, bounded reduct closure.

The beta-value rule fires (\\x.M)V -> M[V/x] only when V is a value, but it is
closed under *all* term contexts, including under lambda: the relation is the
full non-deterministic CbV reduction, not an evaluation strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .syntax import Abs, App, Term, Var, is_value, subst_value, to_text

__all__ = [
    "Path", "ReductionStep", "Reduction",
    "step_v", "reduce_v", "reducts_v", "contract", "redex_paths",
]

Path = tuple[str, ...]


@dataclass(frozen=True)
class ReductionStep:
    source: Term
    target: Term
    path: Path


@dataclass(frozen=True)
class Reduction:
    """Outcome of bounded evaluation: the final term, flagged as normal or not."""
    term: Term
    normal_form: bool
    steps: int


def _no_holes(m: Term):
    if m.hole_indices:
        raise ValueError(f"term contains holes: {to_text(m)}")


def redex_paths(m: Term) -> Iterator[Path]:
    """Paths of all beta-value redexes, in leftmost-outermost order."""
    yield from _redexes(m, ())


def _redexes(m: Term, path: Path) -> Iterator[Path]:
    match m:
        case App(fun, arg):
            if isinstance(fun, Abs) and is_value(arg):
                yield path
            yield from _redexes(fun, path + ("fun",))
            yield from _redexes(arg, path + ("arg",))
        case Abs(_, body):
            yield from _redexes(body, path + ("body",))


def contract(m: Term, path: Path) -> Term:
    """Fire the redex at `path`."""
    if not path:
        if not (isinstance(m, App) and isinstance(m.fun, Abs) and is_value(m.arg)):
            raise ValueError(f"no beta-value redex at this position: {to_text(m)}")
        return subst_value(m.fun.body, m.fun.var, m.arg)
    head, rest = path[0], path[1:]
    match m, head:
        case App(fun, arg), "fun":
            return App(contract(fun, rest), arg)
        case App(fun, arg), "arg":
            return App(fun, contract(arg, rest))
        case Abs(x, body), "body":
            return Abs(x, contract(body, rest))
    raise ValueError(f"bad path {path} into {to_text(m)}")


def step_v(m: Term) -> frozenset[ReductionStep]:
    """All one-step reducts of m, one ReductionStep per redex occurrence.

    The empty set means m is ->v-normal.
    """
    _no_holes(m)
    return frozenset(
        ReductionStep(m, contract(m, p), p) for p in redex_paths(m)
    )


def reduce_v(m: Term, max_steps: int = 100) -> Reduction:
    """Repeatedly fire the leftmost-outermost redex, up to `max_steps`.

    Returns the normal form if reached within the budget; otherwise the last
    term with normal_form=False (a result, not an error: e.g. Omega spins).
    """
    _no_holes(m)
    term = m
    for n in range(max_steps):
        path = next(_redexes(term, ()), None)
        if path is None:
            return Reduction(term, True, n)
        term = contract(term, path)
    is_nf = next(_redexes(term, ()), None) is None
    return Reduction(term, is_nf, max_steps)


def reducts_v(m: Term, depth: int, size_cap: Optional[int] = None) -> frozenset[Term]:
    """All terms reachable from m in <= depth steps, alpha-deduplicated.

    Terms larger than `size_cap` are pruned from the frontier (and the
    result); pass None for no size bound.
    """
    _no_holes(m)
    seen = {m}
    frontier = {m}
    for _ in range(depth):
        new = set()
        for t in frontier:
            for p in redex_paths(t):
                r = contract(t, p)
                if size_cap is not None and r.size > size_cap:
                    continue
                if r not in seen:
                    seen.add(r)
                    new.add(r)
        if not new:
            break
        frontier = new
    return frozenset(seen)
