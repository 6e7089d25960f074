"""Command line interface.

    cbvlab parse <term>
    cbvlab reduce <term> [--steps N] [--strategy lo|enumerate]
    cbvlab taylor <term> --budget B [--count]
    cbvlab nf <resource-term>
    cbvlab nft <term> --budget B
    cbvlab leq <term> <term> --budget B --search B2
    cbvlab check <property> [--corpus FILE] [--budget B] [--search B2] [--seed S]
    cbvlab demo por [--candidate <term>]

Global flags: --format text|json, --max-set-size CAP.  Exit status is 0 when
everything holds (or parsed/normalized), 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .syntax import parse_term, to_text
from .cbv import reduce_v, reducts_v
from .resource import normalize, parse_resource, sum_to_text, to_rtext
from .taylor import (
    EnumerationCapExceeded, leq_bounded, nft_bounded, taylor_enumerate,
)
from .harness import (
    BudgetProfile, CHECK_NAMES, HOLDS, PRELOADED_CONTEXTS, PRELOADED_TERMS,
    _resolve, default_corpus, demo_por, load_corpus, run_suite,
)

_SET_LIMIT_NOTE = "... ({n} elements, truncated for display)"


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cbvlab",
        description="laboratory for the CbV lambda-calculus and its resource approximation")
    top.add_argument("--format", choices=("text", "json"), default="text")
    top.add_argument("--max-set-size", type=int, default=1_000_000, metavar="CAP",
                     help="cardinality cap for enumerated sets (error, not truncation)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and pretty-print a term")
    p.add_argument("term")

    p = sub.add_parser("reduce", help="reduce a term by ->v")
    p.add_argument("term")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--strategy", choices=("lo", "enumerate"), default="lo")

    p = sub.add_parser("taylor", help="enumerate the Taylor expansion at a budget")
    p.add_argument("term")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--count", action="store_true")

    p = sub.add_parser("nf", help="normalize a resource term")
    p.add_argument("resource_term")

    p = sub.add_parser("nft", help="bounded normal-form Taylor expansion")
    p.add_argument("term")
    p.add_argument("--budget", type=int, required=True)

    p = sub.add_parser("leq", help="bounded preorder check between two terms")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--search", type=int, required=True)

    p = sub.add_parser("check", help="run a property suite over a corpus")
    p.add_argument("property", choices=CHECK_NAMES)
    p.add_argument("--corpus", metavar="FILE")
    p.add_argument("--budget", type=int)
    p.add_argument("--search", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--depth", type=int)

    p = sub.add_parser("demo", help="demonstrations")
    p.add_argument("what", choices=("por",))
    p.add_argument("--candidate", metavar="TERM")
    p.add_argument("--budget", type=int, default=12)
    p.add_argument("--search", type=int, default=16)

    return top


def _parse_program(text: str):
    """Parse a CLI term argument, resolving the stock combinator names."""
    return _resolve(parse_term(text, calls=PRELOADED_CONTEXTS), PRELOADED_TERMS)


def _emit_set(terms, fmt: str, count_only: bool = False) -> dict:
    ordered = sorted(terms, key=lambda t: (t.size, to_rtext(t)))
    if fmt == "json":
        out = {"count": len(ordered)}
        if not count_only:
            out["elements"] = [to_rtext(t) for t in ordered]
        return out
    if count_only:
        print(len(ordered))
    else:
        print(sum_to_text(ordered))
        print(f"({len(ordered)} elements)")
    return {}


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = args.format
    cap = args.max_set_size
    try:
        return _dispatch(args, fmt, cap)
    except EnumerationCapExceeded as exc:
        _fail(fmt, f"set too large: {exc}")
        return 1
    except ValueError as exc:
        _fail(fmt, str(exc))
        return 1


def _fail(fmt: str, message: str):
    if fmt == "json":
        print(json.dumps({"error": message}))
    else:
        print(f"error: {message}", file=sys.stderr)


def _dispatch(args, fmt: str, cap: int) -> int:
    if args.command == "parse":
        term = _parse_program(args.term)
        if fmt == "json":
            print(json.dumps({"term": to_text(term), "size": term.size}))
        else:
            print(to_text(term))
        return 0

    if args.command == "reduce":
        term = _parse_program(args.term)
        if args.strategy == "lo":
            res = reduce_v(term, args.steps)
            if fmt == "json":
                print(json.dumps({
                    "term": to_text(res.term),
                    "normal_form": res.normal_form,
                    "steps": res.steps,
                }))
            else:
                tag = "normal form" if res.normal_form else f"timeout after {res.steps} steps"
                print(f"{to_text(res.term)}  ({tag})")
            return 0
        out = sorted(reducts_v(term, args.steps, None), key=lambda t: (t.size, to_text(t)))
        if fmt == "json":
            print(json.dumps({"reducts": [to_text(t) for t in out]}))
        else:
            for t in out:
                print(to_text(t))
        return 0

    if args.command == "taylor":
        term = _parse_program(args.term)
        elems = taylor_enumerate(term, args.budget, cap)
        payload = _emit_set(elems, fmt, args.count)
        if fmt == "json":
            print(json.dumps(payload))
        return 0

    if args.command == "nf":
        rterm = parse_resource(args.resource_term)
        out = normalize(rterm)
        if fmt == "json":
            print(json.dumps({"sum": [to_rtext(t) for t in
                                      sorted(out, key=lambda t: (t.size, to_rtext(t)))]}))
        else:
            print(sum_to_text(out))
        return 0

    if args.command == "nft":
        term = _parse_program(args.term)
        out = nft_bounded(term, args.budget, cap)
        payload = _emit_set(out, fmt)
        if fmt == "json":
            print(json.dumps(payload))
        return 0

    if args.command == "leq":
        left = _parse_program(args.left)
        right = _parse_program(args.right)
        rep = leq_bounded(left, right, args.budget, args.search, cap)
        if fmt == "json":
            print(json.dumps({
                "holds": rep.holds,
                "checked": rep.checked,
                "missing": [to_rtext(t) for t in rep.missing],
            }))
        else:
            if rep.holds:
                print(f"holds at budget: all {rep.checked} bounded normal forms found")
            else:
                print("counterexample candidates (not found within the search budget):")
                for t in rep.missing:
                    print(f"  {to_rtext(t)}")
        return 0 if rep.holds else 1

    if args.command == "check":
        budgets = BudgetProfile()
        overrides = {}
        if args.budget is not None:
            overrides["budget"] = args.budget
        if args.search is not None:
            overrides["search"] = args.search
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.depth is not None:
            overrides["depth"] = args.depth
        overrides["max_set"] = cap
        budgets = BudgetProfile(**{**budgets.__dict__, **overrides})
        if args.corpus:
            with open(args.corpus, encoding="utf-8") as fh:
                corpus = load_corpus(fh.read(), budgets)
        else:
            corpus = default_corpus(budgets)
        reports = run_suite(args.property, corpus)
        ok = all(r.ok for r in reports)
        if fmt == "json":
            print(json.dumps([r.to_dict() for r in reports], indent=2))
        else:
            for r in reports:
                print(f"{r.status:>12}  {r.property}  "
                      f"({r.instances} instances, {r.millis} ms)")
                if r.counterexample:
                    print(f"              {json.dumps(dict(r.counterexample))}")
            print(f"{args.property}: {'all hold' if ok else 'NOT all hold'} "
                  f"({len(reports)} reports)")
        return 0 if ok else 1

    if args.command == "demo":
        candidate = _parse_program(args.candidate) if args.candidate else None
        demo = demo_por(candidate, args.budget, args.search, cap)
        if fmt == "json":
            print(json.dumps({"ok": demo.ok, "lines": list(demo.lines)}))
        else:
            print(demo.render())
        return 0 if demo.ok else 1

    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
