"""Mahler measures, Alexander polynomials and spectral lifts of fibered 3-manifolds."""
from .lpoly import LaurentPoly, format_poly, normalized, resultant
from .mahler import MahlerResult, mahler_measure, mahler_multivariate, mahler_univariate
from .alexander import ManifoldRecord, abelian_cover_alexander, alexander_polynomial
from .torsion import growth_series, smith_normal_form, torsion_cyclic_cover
from .surfcover import FreeAutomorphism, PermCover, enumerate_covers, spectral_lift_search
from .pipeline import PipelineConfig, PipelineReport, run_pipeline

__version__ = "0.1.0"
