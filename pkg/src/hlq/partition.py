"""Equal-mass partitions of the cumulative integral.

The sequence T_nu(omega, tau) solves I(T_nu) = omega*nu + tau on the
lattice of masses, so consecutive points bound intervals of identical mass
omega and tau = 0 degenerates to the unshifted sequence.  Each generated
interval is re-integrated with a different panel discretization as an
independent check, and gap diagnostics compare against the chord identity
gap = omega / ((ln(phi/2) - a) * tan(alpha)).

The Planck-quantum walk (omega = 6.6e-27/pi) lives in a local frame around
its anchor: at that scale absolute positions are far below float
resolution, so only offsets and gaps are meaningful.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from scipy.optimize import brentq

from . import hlmass, zfun
from .errors import DomainError, InsufficientSpan, NearZeroAbort, NoConvergence
from .ladder import DEFAULT_CONSTANTS, F_inverse, LadderConstants, LadderPoint, chord_tan_alpha

PLANCK_H = 6.6e-27
_LATTICE_RTOL = 1e-9
_RECHECK_BUMP = 8  # recheck pass: +8 nodes per panel, narrower panels


@dataclass(frozen=True)
class PartitionParams:
    omega: float = 1.0
    tau: float = 0.0
    T_start: float = 1000.0
    count: int = 100
    epsilon: float = 0.01

    def __post_init__(self):
        if not (1e-30 <= self.omega <= 1e6):
            raise DomainError("omega must be in [1e-30, 1e6]")
        if not (0.0 <= self.tau < self.omega):
            raise DomainError("tau must be in [0, omega)")
        if not (self.T_start >= 100.0):
            raise DomainError("T_start must be >= 100")
        if not (1 <= int(self.count)):
            raise DomainError("count must be >= 1")
        if not (0.0 < self.epsilon <= 0.05):
            raise DomainError("epsilon must be in (0, 0.05]")


@dataclass(frozen=True)
class PartitionRecord:
    nu: int
    T: float
    gap: float | None
    mass: float | None
    tan_alpha: float | None
    predicted_gap: float | None
    rel_gap_err: float | None


def predicted_gap(T_lo: LadderPoint, T_hi: LadderPoint, omega: float,
                  k: LadderConstants = DEFAULT_CONSTANTS) -> float:
    """Gap implied by the chord identity at realized endpoints."""
    denom = (math.log(0.5 * T_lo.phi) - k.a) * chord_tan_alpha(T_lo, T_hi)
    if not (denom > 0.0):
        raise DomainError("chord identity denominator must be positive")
    return omega / denom


def _solve_lattice(target: float, lo: float, hi: float,
                   cfg: hlmass.QuadratureConfig, ckpt: hlmass.MassCheckpoint,
                   jobs: int = 1) -> float:
    """T in [lo, hi] with I(T) = target; bracket must already enclose it."""
    def f(t):
        return hlmass.hl_mass_probe(t, cfg=cfg, ckpt=ckpt, jobs=jobs) - target
    root = brentq(f, lo, hi, xtol=1e-13, rtol=4.0 * zfun.EPS, maxiter=200)
    root = float(root)
    resid = abs(hlmass.hl_mass_probe(root, cfg=cfg, ckpt=ckpt) - target)
    if resid > _LATTICE_RTOL * max(1.0, abs(target)):
        raise NoConvergence(
            f"lattice solve residual {resid:.3g} at target {target:g}"
        )
    return root


def _advance(T_prev: float, target: float, omega: float,
             cfg: hlmass.QuadratureConfig, ckpt: hlmass.MassCheckpoint,
             jobs: int = 1) -> float:
    """Next lattice point after T_prev with I(T) = target."""
    z = zfun.z_eval(T_prev, target_abs_err=1e-6)
    step = omega / max(z.z * z.z, 0.01)
    lo = T_prev
    hi = T_prev + step
    for _ in range(200):
        if hlmass.hl_mass_probe(hi, cfg=cfg, ckpt=ckpt, jobs=jobs) >= target:
            break
        lo = hi
        step *= 2.0
        hi = T_prev + step
    else:
        raise NoConvergence("bracket expansion failed in _advance")
    return _solve_lattice(target, lo, hi, cfg, ckpt, jobs=jobs)


def seed_point(params: PartitionParams,
               cfg: hlmass.QuadratureConfig = hlmass.DEFAULT_CONFIG,
               ckpt: hlmass.MassCheckpoint | None = None,
               k: LadderConstants = DEFAULT_CONSTANTS,
               jobs: int = 1):
    """(nu0, T) anchoring the sequence: first lattice point at or above T_start."""
    if ckpt is None:
        ckpt = hlmass.new_checkpoint(cfg)
    i_start = hlmass.hl_mass(params.T_start, cfg=cfg, ckpt=ckpt, jobs=jobs)
    nu0 = int(math.ceil((i_start - params.tau) / params.omega))
    target = params.omega * nu0 + params.tau
    if target == i_start:
        return nu0, params.T_start
    t = _advance(params.T_start, target, params.omega, cfg, ckpt, jobs=jobs)
    return nu0, t


def next_point(T_prev: float, omega: float,
               cfg: hlmass.QuadratureConfig = hlmass.DEFAULT_CONFIG,
               ckpt: hlmass.MassCheckpoint | None = None,
               jobs: int = 1) -> float:
    """T with mass exactly omega over [T_prev, T]."""
    T_prev = float(T_prev)
    if not (T_prev >= 100.0):
        raise DomainError("next_point requires T_prev >= 100")
    if not (omega > 0.0):
        raise DomainError("next_point requires omega > 0")
    if ckpt is None:
        ckpt = hlmass.new_checkpoint(cfg)
    i_prev = hlmass.hl_mass_probe(T_prev, cfg=cfg, ckpt=ckpt, jobs=jobs)
    return _advance(T_prev, i_prev + omega, omega, cfg, ckpt, jobs=jobs)


def generate(params: PartitionParams,
             cfg: hlmass.QuadratureConfig = hlmass.DEFAULT_CONFIG,
             ckpt: hlmass.MassCheckpoint | None = None,
             k: LadderConstants = DEFAULT_CONSTANTS,
             jobs: int = 1) -> list[PartitionRecord]:
    """count+1 lattice points as records; the last row is the bare endpoint.

    Masses are re-integrated independently of the lattice construction; phi
    values for the chord diagnostics come from the realized cumulative
    masses at the endpoints.
    """
    if ckpt is None:
        ckpt = hlmass.new_checkpoint(cfg)
    nu0, t0 = seed_point(params, cfg, ckpt, k, jobs=jobs)
    points = [t0]
    for i in range(1, params.count + 1):
        target = params.omega * (nu0 + i) + params.tau
        points.append(_advance(points[-1], target, params.omega, cfg, ckpt, jobs=jobs))
    masses_i = [hlmass.hl_mass(t, cfg=cfg, ckpt=ckpt) for t in points]
    lps = [LadderPoint(T=t, phi=F_inverse(mi, k), mass=mi)
           for t, mi in zip(points, masses_i)]

    def recheck(i):
        return hlmass.hl_mass_between(points[i], points[i + 1], cfg=cfg,
                                      ckpt=ckpt, _nodes_bump=_RECHECK_BUMP)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            masses = list(ex.map(recheck, range(params.count)))
    else:
        masses = [recheck(i) for i in range(params.count)]

    records = []
    for i in range(params.count):
        gap = points[i + 1] - points[i]
        tan = chord_tan_alpha(lps[i], lps[i + 1])
        pred = predicted_gap(lps[i], lps[i + 1], params.omega, k)
        records.append(PartitionRecord(
            nu=nu0 + i,
            T=points[i],
            gap=gap,
            mass=masses[i],
            tan_alpha=tan,
            predicted_gap=pred,
            rel_gap_err=abs(gap - pred) / gap,
        ))
    records.append(PartitionRecord(
        nu=nu0 + params.count, T=points[-1], gap=None, mass=None,
        tan_alpha=None, predicted_gap=None, rel_gap_err=None,
    ))
    return records


@dataclass(frozen=True)
class MeanGapStat:
    mean_gap: float
    predicted: float
    ratio: float
    predicted_asymptotic: float
    ratio_asymptotic: float
    n0: int
    span: float
    u0: float
    anchor_t: float


def mean_gap_stat(records: list[PartitionRecord], params: PartitionParams,
                  k: LadderConstants = DEFAULT_CONSTANTS) -> MeanGapStat:
    """Mean gap over the span U0 = T^(1/3+2*epsilon) from the first record.

    predicted uses the local mean of Z^2, ln(T/2pi) + 2c; the quoted
    asymptotic form omega/ln(T) agrees with it to leading order and is
    reported as predicted_asymptotic.
    """
    pts = [r.T for r in records]
    if len(pts) < 2:
        raise InsufficientSpan("need at least two partition points")
    t0 = pts[0]
    u0 = t0 ** (1.0 / 3.0 + 2.0 * params.epsilon)
    if pts[-1] - t0 < u0:
        raise InsufficientSpan(
            f"records span {pts[-1] - t0:.4g} < U0 = {u0:.4g}"
        )
    n0 = max(i for i in range(1, len(pts)) if pts[i] - t0 <= u0)
    span = pts[n0] - t0
    mean_gap = span / n0
    dens_sharp = math.log(t0 / zfun.TWO_PI) + 2.0 * k.c
    pred = params.omega / dens_sharp
    pred_a = params.omega / math.log(t0)
    return MeanGapStat(
        mean_gap=mean_gap,
        predicted=pred,
        ratio=mean_gap / pred,
        predicted_asymptotic=pred_a,
        ratio_asymptotic=mean_gap / pred_a,
        n0=n0,
        span=span,
        u0=u0,
        anchor_t=t0,
    )


def planck_sequence(T0: float, count: int,
                    cfg: hlmass.QuadratureConfig = hlmass.DEFAULT_CONFIG):
    """Micro-interval walk with omega = 6.6e-27/pi in a local frame.

    Returns count (offset, gap) pairs with T_nu = T0 + offset; offsets are
    accumulated with compensated summation.  Within one walk the offsets
    stay far below the scale on which Z varies, so Z^2 is frozen between
    re-evaluations (triggered each accumulated 1e-6) and each gap is
    omega / Z^2 at the frozen height.
    """
    T0 = float(T0)
    if not (1e3 <= T0 <= 1e5):
        raise DomainError("planck walk requires T0 in [1e3, 1e5]")
    count = int(count)
    if not (1 <= count <= 10 ** 6):
        raise DomainError("count must be in [1, 1e6]")
    omega = PLANCK_H / math.pi
    z = zfun.z_eval(T0, target_abs_err=1e-9)
    if abs(z.z) < 0.5:
        raise DomainError(
            f"|Z(T0)| = {abs(z.z):.3g} < 0.5: anchor too close to a zero"
        )
    z2 = z.z * z.z
    gap = omega / z2
    out = []
    s = 0.0        # compensated offset accumulator
    comp = 0.0
    last_eval = 0.0
    for _ in range(count):
        out.append((s, gap))
        y = gap + comp
        t = s + y
        comp = y - (t - s)
        s = t
        if s - last_eval > 1e-6:
            zz = zfun.z_eval(T0 + s, target_abs_err=1e-9)
            if abs(zz.z) < 1e-5:
                raise NearZeroAbort(
                    f"|Z| = {abs(zz.z):.3g} below 1e-5 at offset {s:.3g}"
                )
            z2 = zz.z * zz.z
            gap = omega / z2
            last_eval = s
    return out
