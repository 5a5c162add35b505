"""citefit: fit, test and compare discretised lognormal and hooked power
law models for citation-like count data.

The numerical hot paths live in a compiled extension when available; a
NumPy fallback is selected automatically (see :mod:`citefit.kernels`).
"""

__version__ = "0.1.0"

from citefit.exceptions import (
    AllStatisticsFailedError,
    CitefitError,
    DegenerateDataError,
    DomainError,
    EmptySampleError,
    FitFailedError,
    IdenticalModelsError,
    InvalidWeightsError,
    MomentUndefinedError,
    OffsetError,
    ParameterError,
    ParseError,
    TooFewRepsError,
)
from citefit.sample import CitationSample, as_sample
from citefit.distributions import (
    DiscretisedLognormal,
    HookedPowerLaw,
    Mixture,
    Moments,
    continuous_moments,
    make_model,
    simulate_sample,
)
from citefit.fitting import FitConfig, FitResult, FitStatus, fit, log_likelihood
from citefit.gof import (
    GofResult,
    ShapeReport,
    ks_p_value,
    ks_statistic,
    ks_test_fixed,
    mc_p_value,
    shape_classify,
)
from citefit.vuong import Tally, VuongResult, tally_significance, vuong
from citefit.bootstrap import StudySummary, bootstrap_study, resample
from citefit.subjects import SUBJECTS, SubjectParams, get_subject
from citefit.studies import (
    MixtureSpec,
    VuongStudy,
    bootstrap_vuong_study,
    mean_crosscheck,
    mixture_impurity_study,
    mixture_sample,
    plausibility_row,
    scale_ci_study,
    shape_table,
    simulation_study,
)
from citefit.kernels import BACKEND as KERNEL_BACKEND

__all__ = [
    "AllStatisticsFailedError",
    "CitefitError",
    "CitationSample",
    "DegenerateDataError",
    "DiscretisedLognormal",
    "DomainError",
    "EmptySampleError",
    "FitConfig",
    "FitFailedError",
    "FitResult",
    "FitStatus",
    "GofResult",
    "HookedPowerLaw",
    "IdenticalModelsError",
    "InvalidWeightsError",
    "KERNEL_BACKEND",
    "Mixture",
    "MixtureSpec",
    "Moments",
    "MomentUndefinedError",
    "OffsetError",
    "ParameterError",
    "ParseError",
    "ShapeReport",
    "StudySummary",
    "SUBJECTS",
    "SubjectParams",
    "Tally",
    "TooFewRepsError",
    "VuongResult",
    "VuongStudy",
    "as_sample",
    "bootstrap_study",
    "bootstrap_vuong_study",
    "continuous_moments",
    "fit",
    "get_subject",
    "ks_p_value",
    "ks_statistic",
    "ks_test_fixed",
    "log_likelihood",
    "make_model",
    "mc_p_value",
    "mean_crosscheck",
    "mixture_impurity_study",
    "mixture_sample",
    "plausibility_row",
    "resample",
    "scale_ci_study",
    "shape_classify",
    "shape_table",
    "simulate_sample",
    "simulation_study",
    "tally_significance",
    "vuong",
]
