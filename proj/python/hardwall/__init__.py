"""Hard-wall Mittag-Leffler random normal matrix ensemble."""

from ._core import (
    DegenerateAngles,
    DivergentSeries,
    DomainError,
    EquilibriumData,
    Error,
    InvalidParams,
    ModelParams,
    NonConvergence,
    RegimeUnknown,
    default_model,
    density_profile_rho,
    equilibrium,
    expected_count_in_disk,
    figure_diag,
    integrals,
    kernel_eval,
    log_hj,
    one_point,
    predict,
    radial_cdf,
    sample,
    selftest,
)

__all__ = [name for name in dir() if not name.startswith("_")]
