"""Finite permutation groups: stabilizer chains, Fitting-type series,
nonsoluble length, coprime factorizations and wreath towers."""
from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    NotAFactorization,
    NotASubgroup,
    NotNormal,
    NotSemisimple,
    NotSoluble,
    ParseError,
    PermStructError,
    PreconditionError,
)
from .perm import Permutation, parse_permutation
from .group import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    PermGroup,
    centralizer,
    conjugacy_class_reps,
    coset_action_quotient,
    derived_subgroup,
    elements,
    intersection,
    is_normal,
    join,
    normal_closure,
    normalizer,
    parse_group,
    format_group,
    random_seed,
    read_group,
    write_group,
)
from .structure import (
    NormalSeries,
    InvariantReport,
    center,
    components,
    derived_length,
    derived_series,
    fitting_height,
    fitting_series,
    fitting_subgroup,
    generalized_fitting,
    gf_height,
    gf_series,
    invariant_report,
    is_semisimple,
    is_simple,
    is_soluble,
    layer,
    minimal_normal_subgroups,
    nonsoluble_length,
    normal_subgroups,
    simple_factor_decomposition,
    soluble_radical,
)
from .named import named_group, symmetric, alternating, cyclic, dihedral, direct_product
from .factorize import (
    FactorizationRecord,
    check_lemma_l1,
    check_lemma_l11,
    enumerate_subgroups,
    find_coprime_factorizations,
    is_factorization,
)
from .lab import (
    Certificate,
    TowerSpec,
    corollary2_bound,
    hall_pair_for_tower,
    replay_theorem1,
    tower,
    tower_lambda_certificate,
    validate_certificate,
    verify_cjs_inequalities,
    verify_corollary2,
    verify_theorem1_bound,
    wreath_product,
)
from .corpus import CORPUS_NAMES, corpus, corpus_group

__version__ = "0.1.0"
