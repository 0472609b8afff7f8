"""Exact and asymptotic statistics of integer partitions refined by their
2-core and 2-quotient: rank tables with three independent exact routes,
circle-method coefficient asymptotics, and Jensen/Hermite convergence checks
with exact hyperbolicity certificates."""

from ._meta import TOOL_VERSION as __version__
from .partitions import (
    EMPTY,
    HookTable,
    Partition,
    TwoQuotientDecomposition,
    bg_core_size,
    bg_rank,
    conjugate,
    enumerate_partitions,
    hook_lengths,
    is_t_core,
    littlewood_compose,
    littlewood_decompose,
    rank_census,
    staircase,
    two_quotient,
    two_quotient_rank,
)
from .series import (
    BivariateSeries,
    GroupRingSeries,
    IntSeries,
    OrthogonalityError,
    StatTable,
    expand_H_groupring,
    joint_table,
    p2_table,
    p2_values,
    p_table,
    p_values,
    pbar_abn_table,
    pbar_abn_values,
    pbar_eta,
    pbar_table,
    pbar_values,
    series_invert,
)
from .asymptotics import (
    ArcDominanceReport,
    HR_PARAMS,
    MainTermResult,
    WrightParams,
    arc_dominance_check,
    dilog_identity_residual,
    f1_major_arc,
    f1_truncated_product,
    h_congruence_numeric,
    lerch_phi_unit,
    main_term,
    rank_count_params,
    wright_asymptotic,
    wright_coefficient,
)
from .turan import (
    JensenPoly,
    RenormSeq,
    SturmChain,
    TuranReport,
    hermite,
    hermite_distance,
    hyperbolicity_onset,
    is_hyperbolic,
    jensen_poly,
    real_root_count,
    renorm_sequences,
    renorm_sequences_step2,
    renormalized_jensen,
    sturm_chain,
    turan_report,
    wright_renorm_pair,
)
from .cache import cache_roundtrip, get_table, load_table, save_table
from .reporting import RunReport
