"""Metric operators and generalized P, T, C symmetries of pseudo-Hermitian matrices."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DEFAULT_TOL,
    OperatorRep,
    Tolerance,
    apply,
    compose,
    is_involutory,
    symmetry_residual,
)
from .errors import *  # noqa: E402,F401,F403
from .metric import (  # noqa: E402
    Metric,
    MetricFamily,
    choose_fundamental_metric,
    classify_metric,
    hidden_symmetry_ops,
    is_secular,
    metric_conjugate_paired,
    metric_from_diagonalizer,
    pseudo_hermiticity_residual,
    solve_metric_space,
)
from .products import (  # noqa: E402
    InnerProductReport,
    eta_inner,
    gram_report,
    rival_inner_biortho,
    rival_inner_transpose,
    x_inner,
    x_norm,
)
from .spectral import (  # noqa: E402
    BiorthoSystem,
    SpectralData,
    SpectrumClass,
    build_biortho,
    build_diagonalizer,
    classify_spectrum,
    decompose,
    eig,
    eta_normalize,
)
from .symmetry import (  # noqa: E402
    SymmetrySuite,
    build_charge,
    build_cpt,
    build_parity,
    build_pt,
    build_suite,
    build_time_reversal,
    p2_t2_condition,
    verify_suite,
)
