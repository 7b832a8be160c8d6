"""Closed-form asymptotic predictions for the solver output: Widom-factor
limits, pointwise norm limits, lemniscate subsequence limits, residual
profiles in modulus, and sequence extrapolation."""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from .errors import IllConditionedFit
from .potential import (
    c_r_alpha,
    harmonic_measure_log_integral,
    is_infinity,
    kernel_k,
    lambda_map,
    mu_log_integral,
    outer_modulus,
)

WIDOM_LIMIT = "widom_limit"
POINTWISE_LIMIT = "pointwise_limit"
LEMNISCATE_LIMIT = "lemniscate_limit"


@dataclass(frozen=True)
class PredictionReport:
    """A closed-form limit together with its general bound interval and the
    named constituents that build it."""

    kind: str
    value: float
    lower_bound: float
    upper_bound: float
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.value > 0 and math.isfinite(self.value)):
            raise ValueError(f"prediction value {self.value} must be finite positive")
        if self.kind in (WIDOM_LIMIT, LEMNISCATE_LIMIT) and not (
            self.lower_bound <= self.value <= self.upper_bound
        ):
            raise ValueError("limit escaped its bound interval")

    def to_json(self):
        return json.dumps(
            {
                "kind": self.kind,
                "value": self.value,
                "lower_bound": self.lower_bound,
                "upper_bound": self.upper_bound,
                "components": self.components,
            }
        )


def alpha_constant(domain):
    """2 cos^2(alpha/4), the unweighted Widom-factor limit."""
    return 2.0 * math.cos(domain.alpha / 4.0) ** 2


def szego_widom_bounds(domain, weight, tol=1e-9):
    """Lower and upper bounds (exp I, 2 exp I) for the Widom factors."""
    e = math.exp(mu_log_integral(weight, domain, tol))
    return e, 2.0 * e


def predict_widom_limit(domain, weight, tol=1e-9):
    """Limit of the weighted Widom factors: 2cos^2(alpha/4) exp(log-integral)."""
    log_int = mu_log_integral(weight, domain, tol)
    e = math.exp(log_int)
    const = alpha_constant(domain)
    return PredictionReport(
        kind=WIDOM_LIMIT,
        value=const * e,
        lower_bound=e,
        upper_bound=2.0 * e,
        components={
            "capacity": domain.capacity,
            "alpha_constant": const,
            "log_integral": log_int,
        },
    )


def predict_pointwise_limit(domain, weight, u0, tol=1e-9):
    """Limit of e^{n g(u0)} times the weighted norm of the extremal
    polynomial normalized at u0."""
    k = kernel_k(u0, u0, domain).real
    log_int = harmonic_measure_log_integral(weight, u0, domain, tol)
    e = math.exp(log_int)
    value = e / k
    return PredictionReport(
        kind=POINTWISE_LIMIT,
        value=value,
        lower_bound=0.0,
        upper_bound=math.inf,
        components={
            "capacity": domain.capacity,
            "kernel": k,
            "log_integral": log_int,
        },
    )


def predict_lemniscate_limit(spec):
    """Subsequence limit of the lemniscate Widom factors for degrees
    congruent to l mod m."""
    domain = spec.domain()
    const = alpha_constant(domain)
    c = c_r_alpha(spec.r, domain)
    c_factor = c ** (spec.l / spec.m)
    value = const * c_factor
    # Szegő gives 1 as a general lower bound; for r >= 1 the c-factor is
    # capped by csc(alpha/2)^{l/m}, while for r < 1 it is unbounded
    if spec.r >= 1.0:
        upper = const * (1.0 / math.sin(spec.alpha / 2.0)) ** (spec.l / spec.m)
    else:
        upper = math.inf
    return PredictionReport(
        kind=LEMNISCATE_LIMIT,
        value=value,
        lower_bound=1.0,
        upper_bound=upper,
        components={
            "capacity": domain.capacity,
            "alpha_constant": const,
            "c_factor": c_factor,
            "c_r_alpha": c,
        },
    )


def _h_aux(lam, lam0):
    m2 = abs(lam0) ** 2
    return lam**2 / ((lam**2 - m2) * (lam**2 + m2))


def limit_residual_modulus(domain, weight, u, u0, tol=1e-9):
    """Locally uniform limit, in modulus, of the rescaled residual profile
    e^{-n g(u)} |R_n(u, u0)| for u0 inside the unit disk."""
    u0 = complex(u0)
    if abs(u0) >= 1.0:
        raise ValueError("u0 must lie in the open unit disk")
    lam = lambda_map(u, domain)
    lam0 = lambda_map(u0, domain)
    m2 = abs(lam0) ** 2
    if u == u0:
        first = 1.0
        blaschke = 2.0 * m2 / abs(lam0 + lam0.conjugate()) ** 2
    else:
        first = abs(0.5 * (1.0 + _h_aux(lam, lam0) / _h_aux(lam0, lam0)))
        blaschke = abs(
            m2
            * (lam**2 - m2)
            * (lam**2 + lam0**2)
            / (
                lam0**2
                * (lam**2 + m2)
                * (lam**2 - (lam0**2).conjugate())
            )
        )
    return first * blaschke * outer_modulus(weight, u, domain, tol)


def richardson_extrapolate(values, with_residual=False):
    """Least-squares limit of a sequence modeled as L + a/n (+ b/n^2 with
    five or more entries)."""
    pts = [(int(n), float(v)) for n, v in values]
    if len(pts) < 3:
        raise IllConditionedFit("need at least three sequence entries")
    ns = np.array([n for n, _ in pts], dtype=float)
    vs = np.array([v for _, v in pts])
    if np.any(np.diff(ns) <= 0):
        raise IllConditionedFit("n values must be strictly increasing")
    cols = [np.ones_like(ns), 1.0 / ns]
    if len(pts) >= 5:
        cols.append(1.0 / ns**2)
    A = np.column_stack(cols)
    if np.linalg.cond(A) > 1e12:
        raise IllConditionedFit("n-range too narrow for a stable fit")
    coef, *_ = np.linalg.lstsq(A, vs, rcond=None)
    fit_resid = float(np.sqrt(np.mean((A @ coef - vs) ** 2)))
    limit = float(coef[0])
    if with_residual:
        return limit, fit_resid
    return limit
