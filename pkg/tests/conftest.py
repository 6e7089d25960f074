import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import hypothesis
from hypothesis import strategies as st

from cbvlab.syntax import Abs, App, Hole, Term, Var

hypothesis.settings.register_profile(
    "lab", deadline=None, max_examples=60)
hypothesis.settings.load_profile("lab")

_NAMES = ("x", "y", "z")


def term_strategy(with_holes: bool = False, names=_NAMES) -> st.SearchStrategy[Term]:
    leaves = st.sampled_from([Var(n) for n in names])
    if with_holes:
        leaves = st.one_of(leaves, st.sampled_from([Hole(1), Hole(2)]))

    def extend(children):
        return st.one_of(
            st.builds(App, children, children),
            st.builds(Abs, st.sampled_from(names), children),
        )

    return st.recursive(leaves, extend, max_leaves=8)
