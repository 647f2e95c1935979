"""swapfit: latent causal-direction regression for bivariate time series."""

__version__ = "0.1.0"

from .ingest import QuarterIndex, RawSeries, SeriesPair, align_pair, load_series_csv, scale_pair
from .models import LINEAR, QUADRATIC, LossWeights, ModelSpec, forward, inverse
from .core import BETA, GMM, SwapConfig, SwapFit, SwapState, run_swap
from .densities import fit_exponential, ks_test_exponential
from .betagof import GofReport, fit_alpha_beta, volodin_cdf, volodin_pdf
from .causality import adf_test, bidirectional_report, granger_test
from .timeline import Segment, timeline_segments

__all__ = [
    "QuarterIndex", "RawSeries", "SeriesPair", "align_pair", "load_series_csv",
    "scale_pair", "LINEAR", "QUADRATIC", "LossWeights", "ModelSpec", "forward",
    "inverse", "BETA", "GMM", "SwapConfig", "SwapFit", "SwapState", "run_swap",
    "fit_exponential", "ks_test_exponential", "GofReport", "fit_alpha_beta",
    "volodin_cdf", "volodin_pdf", "adf_test", "bidirectional_report",
    "granger_test", "Segment", "timeline_segments", "__version__",
]
