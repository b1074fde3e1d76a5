"""Generalized q-logistic distribution toolkit.

Exact densities, distribution/survival/hazard functions, characteristic
functions, moments, quantiles, transformation-based samplers, the skew
variant, and a validation suite that cross-checks every analytic formula
against brute-force oracles.
"""

from .characterize import (
    exp_transform_back,
    exp_transform_rate,
    kolmogorov_sf,
    ks_statistic,
    ks_two_sample,
    sample_exp_transform,
    sample_t_transform,
    t_transform_target,
    verify_charfn_exp_transform,
    verify_charfn_t_transform,
)
from .distribution import (
    ExtremeValueParams,
    GqldParams,
    cdf,
    cdf_alpha1,
    cdf_hyp2f1,
    char_fn,
    cumulative_hazard,
    hazard,
    log_cdf,
    log_pdf,
    mean,
    normalizing_constant,
    pdf,
    pdf_limit_q1,
    quantile,
    sample,
    survival,
    variance,
)
from .quadrature import (
    QuadratureResult,
    grid_convexity,
    grid_monotone,
    integrate_halfline,
    integrate_line,
    moment,
)
from .results import GridSpec, SampleBatch, SampleSource, ValidationReport
from .skew import (
    SkewParams,
    check_log_concavity,
    check_tail_limit,
    log_skew_pdf,
    skew_cdf,
    skew_cdf_sorted,
    skew_pdf,
    skew_sample,
    standard_skew_base,
)
from .special import (
    ConvergenceError,
    digamma,
    gamma_complex,
    hyp2f1,
    inv_reg_inc_beta,
    ln_gamma,
    ln_gamma_ratio,
    reg_inc_beta,
    trigamma,
)
from .validate import run_suite

__version__ = "0.1.0"
