"""Separability and Heisenberg-type boundary criteria for the EPR state.

Two families of predicates are evaluated against one state:

* the sum criterion ``duan_sum < 1`` on the joint quadrature variances
  (sufficient for nonseparability, no Gaussian assumption needed), plus
  its mu-weighted generalization ``dx_mu^2 + dp_mu^2 < (1 + mu^2)/2``;
* the stricter Heisenberg-type product condition
  ``dx_mu^2 * dp_mu^2 < 1/16`` and the derived sum form ``< 1/2`` that
  underpin the claim that only fidelity above 2/3 counts as quantum.

All predicates are strict inequalities with no tolerance band: a state
sitting exactly on a boundary does not satisfy the criterion.  The free
weight in the sum criterion is fixed to a = 1 (symmetric modes).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .epr_model import GaussianEprState, mu_opt, second_moments

__all__ = [
    "CriteriaReport",
    "duan_sum",
    "nbar_threshold",
    "mu_variances",
    "conditional_variances",
    "classify",
    "CRITERIA_CSV_COLUMNS",
    "report_to_json",
    "report_to_csv",
]

# Fixed serialization order for one CSV row of a report.
CRITERIA_CSV_COLUMNS = (
    "r",
    "eta",
    "nbar",
    "duan_sum",
    "duan_nonseparable",
    "mu",
    "dx_mu_sq",
    "dp_mu_sq",
    "cond_var_x",
    "cond_var_p",
    "gg_product",
    "gg_hi_satisfied",
    "gg_sum_satisfied",
    "simon_mu_nonseparable",
    "nbar_threshold",
)


@dataclass(frozen=True)
class CriteriaReport:
    """Every boundary predicate evaluated for one state.

    The headline fields are evaluated at the estimator gain ``mu`` (the
    optimal gain unless overridden); the ``*_mu1`` fields repeat the
    Heisenberg-type evaluations at mu = 1, the gain the teleportation
    protocol itself uses.  ``nbar_threshold`` is +inf at eta = 1, where no
    amount of ancilla thermal noise can reach the state.
    """

    r: float
    eta: float
    nbar: float
    duan_sum: float
    duan_nonseparable: bool
    mu: float
    dx_mu_sq: float
    dp_mu_sq: float
    cond_var_x: float
    cond_var_p: float
    gg_product: float
    gg_hi_satisfied: bool
    gg_sum_satisfied: bool
    simon_mu_nonseparable: bool
    nbar_threshold: float
    gg_product_mu1: float
    gg_hi_satisfied_mu1: bool
    gg_sum_mu1: float
    gg_sum_satisfied_mu1: bool


def duan_sum(state: GaussianEprState) -> float:
    """Joint-quadrature variance sum <(x1-x2)^2> + <(p1+p2)^2> = sigma_minus_sq.

    The state is nonseparable whenever the result is < 1.
    """
    dx_sq, dp_sq = mu_variances(state, 1.0)
    return dx_sq + dp_sq


def nbar_threshold(r: float, eta: float) -> float:
    """Largest ancilla occupancy still compatible with nonseparability.

    Returns eta*(1 - exp(-2r)) / (2*(1 - eta)); 0 when r = 0 (no squeezing,
    never entangled) and +inf when eta = 1 (ancillas never couple in).
    """
    if not (math.isfinite(r) and r >= 0.0):
        raise ValueError(f"r must be finite and >= 0, got {r!r}")
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        raise ValueError(f"eta must be in [0, 1], got {eta!r}")
    if r == 0.0:
        return 0.0
    if eta == 1.0:
        return math.inf
    return eta * (1.0 - math.exp(-2.0 * r)) / (2.0 * (1.0 - eta))


def mu_variances(state: GaussianEprState, mu: float) -> tuple[float, float]:
    """Error variances <(x1 - mu*x2)^2> and <(p1 + mu*p2)^2> of a gain-mu estimate.

    Evaluated as [sp*(1-mu)^2 + sm*(1+mu)^2]/8, which is algebraically equal
    to var*(1+mu^2) - 2*mu*cov but free of the cancellation that form
    suffers at large squeezing.  The two sectors coincide by symmetry.
    """
    if not math.isfinite(mu):
        raise ValueError(f"mu must be finite, got {mu!r}")
    var = (
        state.sigma_plus_sq * (1.0 - mu) ** 2 + state.sigma_minus_sq * (1.0 + mu) ** 2
    ) / 8.0
    return var, var


def conditional_variances(state: GaussianEprState) -> tuple[float, float]:
    """Residual variances V_{x2|x1} and V_{p2|p1} after optimal linear inference.

    V = <x2^2> - <x1 x2>^2 / <x1^2>, equal for the x and p sectors and equal
    to the gain-mu error variances evaluated at the optimal gain.
    """
    m = second_moments(state)
    cond_x = m.var_x - m.cov_xx**2 / m.var_x
    cond_p = m.var_p - m.cov_pp**2 / m.var_p
    return cond_x, cond_p


def classify(state: GaussianEprState, mu: float | None = None) -> CriteriaReport:
    """Evaluate every boundary predicate for one state.

    ``mu`` defaults to the optimal estimator gain.  The conditional
    variances always refer to optimal inference regardless of ``mu``.
    """
    if mu is None:
        mu = mu_opt(state)
    params = state.params

    d_sum = duan_sum(state)
    dx_mu_sq, dp_mu_sq = mu_variances(state, mu)
    cond_x, cond_p = conditional_variances(state)
    gg_product = dx_mu_sq * dp_mu_sq
    gg_sum = dx_mu_sq + dp_mu_sq

    dx1_sq, dp1_sq = mu_variances(state, 1.0)
    gg_product_mu1 = dx1_sq * dp1_sq
    gg_sum_mu1 = dx1_sq + dp1_sq

    return CriteriaReport(
        r=params.r,
        eta=params.eta,
        nbar=params.nbar,
        duan_sum=d_sum,
        duan_nonseparable=d_sum < 1.0,
        mu=mu,
        dx_mu_sq=dx_mu_sq,
        dp_mu_sq=dp_mu_sq,
        cond_var_x=cond_x,
        cond_var_p=cond_p,
        gg_product=gg_product,
        gg_hi_satisfied=gg_product < 1.0 / 16.0,
        gg_sum_satisfied=gg_sum < 0.5,
        simon_mu_nonseparable=gg_sum < (1.0 + mu**2) / 2.0,
        nbar_threshold=nbar_threshold(params.r, params.eta),
        gg_product_mu1=gg_product_mu1,
        gg_hi_satisfied_mu1=gg_product_mu1 < 1.0 / 16.0,
        gg_sum_mu1=gg_sum_mu1,
        gg_sum_satisfied_mu1=gg_sum_mu1 < 0.5,
    )


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return format(value, ".17g")


def report_to_csv(report: CriteriaReport, header: bool = True) -> str:
    """Serialize a report to one CSV row (fixed column order), 17 significant digits."""
    row = ",".join(_cell(getattr(report, name)) for name in CRITERIA_CSV_COLUMNS)
    if header:
        return ",".join(CRITERIA_CSV_COLUMNS) + "\n" + row + "\n"
    return row + "\n"


def report_to_json(report: CriteriaReport) -> str:
    """Serialize a report to a flat JSON object; unbounded thresholds become "inf"."""
    obj = {}
    for name in CRITERIA_CSV_COLUMNS + (
        "gg_product_mu1",
        "gg_hi_satisfied_mu1",
        "gg_sum_mu1",
        "gg_sum_satisfied_mu1",
    ):
        value = getattr(report, name)
        if isinstance(value, float) and math.isinf(value):
            value = "inf"
        obj[name] = value
    return json.dumps(obj)
