"""cbvlab: an executable laboratory for the call-by-value lambda-calculus
and its resource/Taylor approximation.

The package implements the CbV calculus and its full beta-value reduction,
the resource CbV calculus with qualitative sums and guaranteed-terminating
normalization, the bounded Taylor expansion with the induced preorder, rigid
contexts with injective hole-filling, and a harness of bounded property
checks (simulation, partition, monotonicity, stability, congruence, the
rigid lemmas and the no-parallel-or demonstration).
"""

from .syntax import (
    Term, Var, Abs, App, Hole, ParseError,
    parse_term, to_text, alpha_eq, is_value, subst_value, fill_context,
    I, DELTA, OMEGA, TRUE, FALSE, PAIR, pair,
)
from .cbv import ReductionStep, Reduction, step_v, reduce_v, reducts_v
from .resource import (
    ResourceTerm, RVar, RAbs, RHole, Bag, RApp, bag,
    is_resource_value, is_simple, degree, linear_subst,
    step_r, is_normal, normalize, normalize_strategy, reach,
    parse_resource, to_rtext, sum_to_text,
)
from .taylor import (
    EnumerationCapExceeded, taylor_member, taylor_enumerate, taylor_units,
    nft_bounded, nft_member, nft_witnesses, LeqReport, leq_bounded, eq_bounded,
)
from .rigid import (
    Rigid, RgVar, RgHole, RgAbs, RgApp, RgList,
    rigids_of, underlying, fill_rigid, taylor_fill_set, to_rgtext,
)
from .harness import (
    BudgetProfile, Corpus, PropertyReport, StabilityInstance, PorDemo,
    HOLDS, REFUTED, INCONCLUSIVE, HYPOTHESIS_NOT_ESTABLISHED,
    load_corpus, default_corpus, run_suite, replay_counterexample,
    check_partition, check_simulation, check_monotone, check_stability,
    check_theory_congruence, check_unodavanti, check_rigid_lemmas,
    demo_por, por_stability_instance,
)

__version__ = "0.1.0"
