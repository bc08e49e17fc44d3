"""Pillai's trace as a single regression effect, with exact Beta inference."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConsistencyError,
    DataError,
    DegenerateFit,
    DegenerateX,
    NotPositiveDefinite,
    NumericalError,
    ParseError,
    RankDeficient,
    TooFewRows,
)
from .inference import BetaParams, InferenceReport, exact_p_value, infer, wald_test  # noqa: E402
from .manova import PillaiResult, pillai_trace  # noqa: E402
from .regression import beta_effect, fit_multiple, fit_simple  # noqa: E402

__all__ = [
    "BetaParams",
    "ConsistencyError",
    "DataError",
    "DegenerateFit",
    "DegenerateX",
    "InferenceReport",
    "NotPositiveDefinite",
    "NumericalError",
    "ParseError",
    "PillaiResult",
    "RankDeficient",
    "TooFewRows",
    "beta_effect",
    "exact_p_value",
    "fit_multiple",
    "fit_simple",
    "infer",
    "pillai_trace",
    "wald_test",
]
