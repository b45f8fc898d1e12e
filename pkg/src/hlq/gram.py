"""Gram points and shifted Gram sequences.

t_nu(tau_bar) is the unique solution of theta(t) = nu*pi + tau_bar on the
increasing branch of theta.  tau_bar = 0 gives the classical Gram points
(g_0 ~ 17.8456).  Spacing is compared against 2*pi/theta'(t), i.e.
2*pi/ln(t/2pi); the commonly quoted 2*pi/ln(t) is the same thing to leading
order and is carried alongside for reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import zfun
from .errors import DomainError, NoConvergence

# theta has its minimum near 6.29; bracketing from 7.0 keeps every solve on
# the increasing branch, and theta(7) < -pi covers nu=0 down to tau_bar=-pi
_BRACKET_LO = 7.0
_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class GramRecord:
    nu: int
    t: float
    tau_bar: float
    spacing: float
    predicted: float

    @property
    def predicted_asymptotic(self) -> float:
        return 2.0 * math.pi / math.log(self.t)


def _solve_theta(target: float) -> float:
    """Root of theta(t) = target for t on the increasing branch."""
    lo = _BRACKET_LO
    f_lo = zfun.theta(lo) - target
    if f_lo > 0.0:
        raise DomainError(f"theta target {target:g} below the increasing branch")
    hi = 20.0
    while zfun.theta(hi) < target:
        lo = hi
        hi *= 2.0
        if hi > 1e12:
            raise NoConvergence("theta bracket expansion failed")
    t = 0.5 * (lo + hi)
    for _ in range(100):
        r = zfun.theta(t) - target
        if abs(r) <= _RESIDUAL_TOL:
            return t
        if r > 0.0:
            hi = t
        else:
            lo = t
        d = zfun.theta_deriv(t)
        t_new = t - r / d if d > 0.0 else t
        t = t_new if lo < t_new < hi else 0.5 * (lo + hi)
    raise NoConvergence("theta solve: 100 iterations without meeting tolerance")


def gram_t(nu: int, tau_bar: float = 0.0) -> float:
    """The (shifted) Gram point alone, without spacing bookkeeping."""
    if nu < 0:
        raise DomainError("gram index must be >= 0")
    tau_bar = float(tau_bar)
    if not (abs(tau_bar) <= math.pi):
        raise DomainError("tau_bar must lie in [-pi, pi]")
    return _solve_theta(nu * math.pi + tau_bar)


def gram_point(nu: int, tau_bar: float = 0.0) -> GramRecord:
    t = gram_t(nu, tau_bar)
    t_next = _solve_theta((nu + 1) * math.pi + tau_bar)
    return GramRecord(
        nu=nu,
        t=t,
        tau_bar=tau_bar,
        spacing=t_next - t,
        predicted=2.0 * math.pi / math.log(t / zfun.TWO_PI),
    )


@dataclass(frozen=True)
class GramSummary:
    count: int
    mean_ratio: float
    mean_ratio_asymptotic: float
    min_spacing: float
    max_spacing: float


def gram_spacing_report(nu_from: int, nu_to: int, tau_bar: float = 0.0):
    """Records for nu in [nu_from, nu_to] plus ratio statistics.

    mean_ratio averages spacing / (2pi/ln(t/2pi)); the _asymptotic variant
    divides by 2pi/ln(t) instead.
    """
    if not (0 <= nu_from < nu_to):
        raise DomainError("need 0 <= nu_from < nu_to")
    ts = [gram_t(nu, tau_bar) for nu in range(nu_from, nu_to + 2)]
    records = []
    for i, nu in enumerate(range(nu_from, nu_to + 1)):
        t = ts[i]
        records.append(GramRecord(
            nu=nu,
            t=t,
            tau_bar=tau_bar,
            spacing=ts[i + 1] - t,
            predicted=2.0 * math.pi / math.log(t / zfun.TWO_PI),
        ))
    ratios = [r.spacing / r.predicted for r in records]
    ratios_a = [r.spacing / r.predicted_asymptotic for r in records]
    spacings = [r.spacing for r in records]
    summary = GramSummary(
        count=len(records),
        mean_ratio=sum(ratios) / len(ratios),
        mean_ratio_asymptotic=sum(ratios_a) / len(ratios_a),
        min_spacing=min(spacings),
        max_spacing=max(spacings),
    )
    return records, summary
