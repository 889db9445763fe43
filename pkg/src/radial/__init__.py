"""Exact moments of the radial operator G in the group algebra of a free group."""
from .algebra import (
    AlgebraElement,
    TermLimitError,
    add,
    adjoint,
    generating_operator,
    multiply,
    power,
    scale,
    sphere,
    trace,
)
from .expansion import (
    MomentTable,
    RadialVector,
    coefficient_p,
    coefficient_q,
    expand_power,
    moment,
    moment_series,
    radial_step,
    realize,
)
from .expectation import (
    CommutatorSpec,
    LaurentInH,
    OpValMomentTable,
    expect,
    laurent_involution,
    opval_moment_closed,
    opval_moment_series,
    power_of_commutator,
)
from .oracle import VerificationReport, tree_walk_moment, verify_expansion, verify_opval
from .words import (
    GroupSpec,
    Letter,
    ReducedWord,
    WordError,
    concat,
    count_words_of_length,
    format_word,
    invert,
    parse_word,
    reduce,
)

__version__ = "0.1.0"
