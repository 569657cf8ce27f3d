"""Mean-residual-life test for exponentiality."""

from ._core import (
    DataError,
    DegenerateVariance,
    InconsistentExtrapolation,
    NonConvergence,
    UnsupportedFamily,
    UnsupportedRegion,
    confidence_interval,
    cumulants,
    delta,
    efficiency,
    eigenfunction,
    eigenvalues,
    neighbourhood_test,
    null_quantiles,
    pearson_p_value,
    pearson_quantile,
    run_study,
    series_quantile,
    sigma2,
    sigma2_delta_method,
    statistic,
    variance_estimate,
)

__version__ = "0.1.0"


def test(x, a=1.0, alpha=0.05):
    """Test a sample for exponentiality; returns a dict with the decision."""
    t = statistic(x, a)
    crit = pearson_quantile(a, 1.0 - alpha)
    return {
        "n": len(x),
        "a": a,
        "statistic": t,
        "critical_value": crit,
        "approx_p_value": pearson_p_value(a, t),
        "decision": "reject" if t > crit else "retain",
    }
