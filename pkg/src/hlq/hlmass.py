"""Cumulative second-moment integral I(T) = int_0^T Z(t)^2 dt.

Quadrature layout
-----------------
The axis is cut at integer boundaries into unit cells.  A cell at height t
is split into equal panels no wider than half the local mean zero spacing
2*pi/ln(t/2pi), and each panel gets a fixed Gauss-Legendre rule.  Since a
panel then spans at most half an oscillation of Z^2, the rule is far inside
its spectral-accuracy regime and the limiting error is the certified
envelope of the point evaluations, which is accumulated explicitly and
checked against the requested relative tolerance.

Below ``zfun.T_SWITCH`` the integrand is evaluated through the reference
route and integrated with fixed-step Simpson (step 1e-3).

Checkpoints
-----------
Cumulative values are anchored at every integer plus every requested T, so
any value is reproducible from its own coordinates alone; the checkpoint
file (JSON header line, then "T<TAB>I" rows at 17 significant digits) is
therefore byte-identical across reruns and worker counts.
"""

from __future__ import annotations

import bisect
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaincc

from . import zfun
from ._util import atomic_write_text, fmt17, pairwise_sum
from .errors import (
    CheckpointConflict,
    CheckpointIOError,
    DomainError,
    FormatError,
    PrecisionUnreachable,
)

CHECKPOINT_VERSION = "1"
SIMPSON_STEP = 1e-3

# crude empirical envelope Z(t)^2 <= C * sqrt(t), calibrated on [1, 1e4]
# (observed max 3.62); used only for damped-integral tail bounds and
# reported alongside any result that relies on it
Z2_ENVELOPE_C = 8.0


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    nodes_per_oscillation: int = 16
    max_panel: float = 1.0
    damped_truncation_eps: float = 1e-14

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-3):
            raise DomainError("rel_tol must be in (0, 1e-3]")
        if not (4 <= int(self.nodes_per_oscillation) <= 64):
            raise DomainError("nodes_per_oscillation must be in 4..64")
        if not (0.01 <= self.max_panel <= 10.0):
            raise DomainError("max_panel must be in [0.01, 10]")
        if not (0.0 < self.damped_truncation_eps <= 1e-6):
            raise DomainError("damped_truncation_eps must be in (0, 1e-6]")

    def eval_config(self, z_config: zfun.ZConfig = zfun.DEFAULT_Z_CONFIG) -> dict:
        """Dict identifying every knob that affects stored values."""
        d = z_config.as_dict()
        d["nodes_per_panel"] = int(self.nodes_per_oscillation)
        d["max_panel"] = float(self.max_panel)
        return d


DEFAULT_CONFIG = QuadratureConfig()


class MassCheckpoint:
    """In-memory cumulative grid; see module docstring for the file format."""

    def __init__(self, tol: float, z_config: dict):
        self.version = CHECKPOINT_VERSION
        self.tol = float(tol)
        self.z_config = dict(z_config)
        self._ts: list[float] = [0.0]
        self._is: list[float] = [0.0]
        self._index = {0.0: 0}
        self._int_cover = 0  # all integers 0.._int_cover are present
        self._env = 0.0      # in-memory envelope accumulated this session

    # -- queries ------------------------------------------------------
    def __len__(self) -> int:
        return len(self._ts)

    def lookup(self, t: float):
        i = self._index.get(float(t))
        return None if i is None else self._is[i]

    def floor_anchor(self, t: float):
        """Greatest integer row <= t (always exists up to _int_cover)."""
        m = min(int(math.floor(t)), self._int_cover)
        return float(m), self._is[self._index[float(m)]]

    def rows(self):
        return zip(self._ts, self._is)

    @property
    def max_t(self) -> float:
        return self._ts[-1]

    @property
    def int_cover(self) -> int:
        return self._int_cover

    # -- mutation -----------------------------------------------------
    def insert(self, t: float, i_val: float) -> None:
        t = float(t)
        if t in self._index:
            return
        pos = bisect.bisect_left(self._ts, t)
        prev_i = self._is[pos - 1] if pos else 0.0
        next_i = self._is[pos] if pos < len(self._is) else None
        if i_val < prev_i or (next_i is not None and i_val > next_i):
            raise FormatError("insert would break monotonicity of the grid")
        self._ts.insert(pos, t)
        self._is.insert(pos, i_val)
        for k, v in list(self._index.items()):
            if v >= pos:
                self._index[k] = v + 1
        self._index[t] = pos
        if t == float(self._int_cover + 1):
            m = self._int_cover + 1
            while float(m + 1) in self._index:
                m += 1
            self._int_cover = m

    def append_integer(self, m: int, i_val: float) -> None:
        """Fast path used while extending coverage cell by cell."""
        if m != self._int_cover + 1:
            self.insert(float(m), i_val)
            return
        t = float(m)
        if self._ts[-1] < t:
            if i_val < self._is[-1]:
                raise FormatError("nonmonotone extension")
            self._ts.append(t)
            self._is.append(i_val)
            self._index[t] = len(self._ts) - 1
            self._int_cover = m
        else:
            self.insert(t, i_val)


def new_checkpoint(cfg: QuadratureConfig = DEFAULT_CONFIG,
                   z_config: zfun.ZConfig = zfun.DEFAULT_Z_CONFIG) -> MassCheckpoint:
    return MassCheckpoint(cfg.rel_tol, cfg.eval_config(z_config))


def check_compat(ckpt: MassCheckpoint, cfg: QuadratureConfig,
                 z_config: zfun.ZConfig = zfun.DEFAULT_Z_CONFIG) -> None:
    if ckpt.version != CHECKPOINT_VERSION:
        raise CheckpointConflict(f"checkpoint version {ckpt.version!r} unsupported")
    want = cfg.eval_config(z_config)
    if ckpt.z_config != want:
        raise CheckpointConflict(
            f"checkpoint evaluation config {ckpt.z_config} != requested {want}"
        )
    if ckpt.tol > cfg.rel_tol:
        raise CheckpointConflict(
            f"checkpoint tol {ckpt.tol:g} is coarser than requested {cfg.rel_tol:g}"
        )


def save_checkpoint(ckpt: MassCheckpoint, path: str) -> None:
    header = json.dumps(
        {"version": ckpt.version, "tol": ckpt.tol, "z_config": ckpt.z_config},
        sort_keys=True,
    )
    lines = [header]
    lines.extend(f"{fmt17(t)}\t{fmt17(v)}" for t, v in ckpt.rows())
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_checkpoint(path: str) -> MassCheckpoint:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise CheckpointIOError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty checkpoint file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise FormatError(f"checkpoint header is not JSON: {exc}") from exc
    if not isinstance(header, dict) or {"version", "tol", "z_config"} - set(header):
        raise FormatError("checkpoint header missing version/tol/z_config")
    if header["version"] != CHECKPOINT_VERSION:
        raise FormatError(f"unsupported checkpoint version {header['version']!r}")
    try:
        tol = float(header["tol"])
        zc = dict(header["z_config"])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed checkpoint header: {exc}") from exc
    ck = MassCheckpoint(tol, zc)
    ts, is_ = [], []
    for ln_no, ln in enumerate(lines[1:], start=2):
        if not ln:
            continue
        parts = ln.split("\t")
        if len(parts) != 2:
            raise FormatError(f"line {ln_no}: expected 'T<TAB>I'")
        try:
            t, v = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise FormatError(f"line {ln_no}: {exc}") from exc
        if not (math.isfinite(t) and math.isfinite(v)):
            raise FormatError(f"line {ln_no}: non-finite value")
        ts.append(t)
        is_.append(v)
    if ts:
        if ts[0] != 0.0 or is_[0] != 0.0:
            raise FormatError("first row must be 0<TAB>0")
        dt = np.diff(ts)
        if np.any(dt <= 0):
            raise FormatError("T column must be strictly increasing")
        if np.any(np.diff(is_) < 0):
            raise FormatError("I column must be nondecreasing")
        ck._ts = ts
        ck._is = is_
        ck._index = {t: i for i, t in enumerate(ts)}
        m = 0
        while float(m + 1) in ck._index:
            m += 1
        ck._int_cover = m
    return ck


# ---------------------------------------------------------------------------
# panel machinery
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _gl_rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_width(b: float, cfg: QuadratureConfig) -> float:
    # half the local mean zero spacing, judged at the right endpoint
    dens = math.log(max(b, TWO_PI_E) / zfun.TWO_PI)
    return min(cfg.max_panel, math.pi / max(1.0, dens))


TWO_PI_E = zfun.TWO_PI * math.e


def _interval_nodes(a: float, b: float, cfg: QuadratureConfig, n_panels: int = 0):
    """Equal-split panels of [a,b] with the GL rule; returns (nodes, weights)."""
    if n_panels <= 0:
        n_panels = max(1, int(math.ceil((b - a) / _panel_width(b, cfg))))
    edges = np.linspace(a, b, n_panels + 1)
    x, w = _gl_rule(int(cfg.nodes_per_oscillation))
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _integrate_nodes(nodes, weights, z_config, damp: float = 0.0):
    """Weighted sum of Z^2 (optionally * exp(-2*damp*t)) over given nodes.

    Returns (value, envelope): envelope covers the certified point errors
    |d(f^2)| <= (2|f|+e)*e plus summation roundoff.
    """
    f, e = zfun.z_many(nodes, z_config)
    fsq = f * f
    if damp:
        att = np.exp(-2.0 * damp * nodes)
        contrib = weights * fsq * att
        env_terms = np.abs(weights) * (2.0 * np.abs(f) + e) * e * att
    else:
        contrib = weights * fsq
        env_terms = np.abs(weights) * (2.0 * np.abs(f) + e) * e
    val = float(contrib.sum())
    env = float(env_terms.sum()) + 8.0 * zfun.EPS * float(np.abs(contrib).sum())
    return val, env


# ---------------------------------------------------------------------------
# low region: fixed-step Simpson on the reference integrand
# ---------------------------------------------------------------------------

def _simpson_reference(a: float, b: float, damp: float = 0.0):
    """Simpson on [a,b] subset of [0, T_SWITCH], fixed step <= 1e-3."""
    if b <= a:
        return 0.0, 0.0
    n = int(math.ceil((b - a) / SIMPSON_STEP))
    n += n % 2
    n = max(n, 2)
    xs = np.linspace(a, b, n + 1)
    vals, rem, ro = zfun._zeta_em_block(xs, 50, 14)
    f = np.abs(vals) ** 2
    if damp:
        f = f * np.exp(-2.0 * damp * xs)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    h = (b - a) / n
    val = float((w * f).sum() * h / 3.0)
    point_env = float(((2.0 * np.abs(vals) + rem + ro) * (rem + ro) * w).sum() * h / 3.0)
    trunc = (b - a) * h ** 4 / 180.0 * 50.0  # coarse |f''''| <= 50 on [0,10]
    return val, point_env + trunc


# ---------------------------------------------------------------------------
# cell evaluation (integer-aligned unit cells)
# ---------------------------------------------------------------------------

_CELL_BLOCK = 256


def _eval_cell_block(m0: int, m1: int, cfg: QuadratureConfig,
                     z_config: zfun.ZConfig, damp: float = 0.0):
    """Masses of unit cells [m, m+1) for m in [m0, m1); vectorized."""
    lo_switch = int(zfun.T_SWITCH)
    out_vals = np.empty(m1 - m0)
    out_envs = np.empty(m1 - m0)
    for m in range(m0, min(m1, lo_switch)):
        v, e = _simpson_reference(float(m), float(m + 1), damp)
        out_vals[m - m0], out_envs[m - m0] = v, e
    first_gl = max(m0, lo_switch)
    if first_gl >= m1:
        return out_vals, out_envs
    nodes_list, weights_list, offsets = [], [], [0]
    count = 0
    for m in range(first_gl, m1):
        n, w = _interval_nodes(float(m), float(m + 1), cfg)
        nodes_list.append(n)
        weights_list.append(w)
        count += len(n)
        offsets.append(count)
    nodes = np.concatenate(nodes_list)
    weights = np.concatenate(weights_list)
    f, e = zfun.z_many(nodes, z_config)
    fsq = f * f
    if damp:
        att = np.exp(-2.0 * damp * nodes)
        contrib = weights * fsq * att
        env_terms = weights * (2.0 * np.abs(f) + e) * e * att
    else:
        contrib = weights * fsq
        env_terms = weights * (2.0 * np.abs(f) + e) * e
    cell_vals = np.add.reduceat(contrib, offsets[:-1])
    cell_envs = np.add.reduceat(env_terms, offsets[:-1])
    cell_envs += 8.0 * zfun.EPS * np.add.reduceat(np.abs(contrib), offsets[:-1])
    out_vals[first_gl - m0 :] = cell_vals
    out_envs[first_gl - m0 :] = cell_envs
    return out_vals, out_envs


def _cells_masses(m0: int, m1: int, cfg: QuadratureConfig,
                  z_config: zfun.ZConfig, jobs: int = 1, damp: float = 0.0):
    """Per-cell masses for integer cells m0..m1-1, worker-count independent."""
    blocks = [(b, min(b + _CELL_BLOCK, m1)) for b in range(m0, m1, _CELL_BLOCK)]
    if jobs > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(
                ex.map(lambda ab: _eval_cell_block(ab[0], ab[1], cfg, z_config, damp), blocks)
            )
    else:
        results = [_eval_cell_block(a, b, cfg, z_config, damp) for a, b in blocks]
    vals = np.concatenate([r[0] for r in results]) if results else np.zeros(0)
    envs = np.concatenate([r[1] for r in results]) if results else np.zeros(0)
    return vals, envs


# ---------------------------------------------------------------------------
# public integration API
# ---------------------------------------------------------------------------

def _partial_from_integer(m: float, t: float, cfg: QuadratureConfig,
                          z_config: zfun.ZConfig):
    """Integral over [m, t] with m = floor anchor, t - m <= 1 + cell slack."""
    if t <= m:
        return 0.0, 0.0
    if t <= zfun.T_SWITCH:
        return _simpson_reference(m, t)
    if m < zfun.T_SWITCH:
        v1, e1 = _simpson_reference(m, zfun.T_SWITCH)
        n, w = _interval_nodes(zfun.T_SWITCH, t, cfg)
        v2, e2 = _integrate_nodes(n, w, z_config)
        return v1 + v2, e1 + e2
    n, w = _interval_nodes(m, t, cfg)
    return _integrate_nodes(n, w, z_config)


def _ensure_cover(ckpt: MassCheckpoint, target_m: int, cfg: QuadratureConfig,
                  z_config: zfun.ZConfig, jobs: int) -> None:
    """Extend integer coverage up to target_m, enforcing the error budget.

    Every extension's certified envelope must fit half the relative budget
    at its endpoint; the other half is reserved for partial cells.  After
    extending under a coarser tolerance the checkpoint records it, so the
    header never promises more than the loosest pass that built the grid.
    """
    if target_m <= ckpt.int_cover:
        return
    m0 = ckpt.int_cover
    vals, envs = _cells_masses(m0, target_m, cfg, z_config, jobs=jobs)
    env_new = float(envs.sum())
    end_val = ckpt.lookup(float(m0)) + float(vals.sum())
    budget = 0.5 * cfg.rel_tol * max(1.0, end_val)
    if env_new > budget:
        raise PrecisionUnreachable(
            f"certified envelope {env_new:.3g} exceeds budget {budget:.3g} "
            f"extending to T={target_m}"
        )
    acc = ckpt.lookup(float(m0))
    for k, v in enumerate(vals):
        acc += float(v)
        ckpt.append_integer(m0 + k + 1, acc)
    ckpt._env += env_new
    ckpt.tol = max(ckpt.tol, cfg.rel_tol)


def _mass_at(t: float, cfg: QuadratureConfig, ckpt: MassCheckpoint,
             jobs: int, z_config: zfun.ZConfig):
    """(I(t), partial-cell envelope) from the integer grid plus a stub."""
    _ensure_cover(ckpt, int(math.floor(t)), cfg, z_config, jobs)
    anchor_t, anchor_i = ckpt.floor_anchor(t)
    part, part_env = _partial_from_integer(anchor_t, t, cfg, z_config)
    return anchor_i + part, part_env


def hl_mass(t: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
            ckpt: MassCheckpoint | None = None, jobs: int = 1,
            z_config: zfun.ZConfig = zfun.DEFAULT_Z_CONFIG) -> float:
    """Cumulative mass I(t); extends (and reuses) the checkpoint grid."""
    t = float(t)
    if not (t >= 0.0 and math.isfinite(t)):
        raise DomainError("hl_mass requires finite T >= 0")
    if ckpt is None:
        ckpt = new_checkpoint(cfg)
    check_compat(ckpt, cfg)
    hit = ckpt.lookup(t)
    if hit is not None:
        return hit
    total, part_env = _mass_at(t, cfg, ckpt, jobs, z_config)
    ckpt._env += part_env
    budget = 0.5 * cfg.rel_tol * max(1.0, total)
    if part_env > budget:
        raise PrecisionUnreachable(
            f"certified envelope {part_env:.3g} exceeds rel_tol budget "
            f"{budget:.3g} at T={t:g}"
        )
    ckpt.insert(t, total)
    return total


def hl_mass_probe(t: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                  ckpt: MassCheckpoint | None = None, jobs: int = 1,
                  z_config: zfun.ZConfig = zfun.DEFAULT_Z_CONFIG) -> float:
    """I(t) without recording t itself in the grid.

    Root-finding probes go through here so a checkpoint only ever contains
    the integer grid plus deliberately requested heights, keeping its bytes
    independent of the search path that produced them.
    """
    t = float(t)
    if not (t >= 0.0 and math.isfinite(t)):
        raise DomainError("hl_mass_probe requires finite T >= 0")
    if ckpt is None:
        ckpt = new_checkpoint(cfg)
    check_compat(ckpt, cfg)
    hit = ckpt.lookup(t)
    if hit is not None:
        return hit
    total, _ = _mass_at(t, cfg, ckpt, jobs, z_config)
    return total


def hl_mass_between(t1: float, t2: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                    ckpt: MassCheckpoint | None = None,
                    z_config: zfun.ZConfig = zfun.DEFAULT_Z_CONFIG,
                    _nodes_bump: int = 0) -> float:
    """Mass of [t1, t2] by direct panel quadrature (no large-value subtraction).

    ``_nodes_bump`` raises the per-panel rule order; the partition recheck
    pass uses it to re-integrate with a different discretization.
    """
    t1, t2 = float(t1), float(t2)
    if not (0.0 <= t1 <= t2 and math.isfinite(t2)):
        raise DomainError("hl_mass_between requires 0 <= T1 <= T2")
    if t1 == t2:
        return 0.0
    if ckpt is not None:
        check_compat(ckpt, cfg)
    if _nodes_bump:
        cfg = QuadratureConfig(
            rel_tol=cfg.rel_tol,
            nodes_per_oscillation=min(64, cfg.nodes_per_oscillation + _nodes_bump),
            max_panel=cfg.max_panel * 0.7,
            damped_truncation_eps=cfg.damped_truncation_eps,
        )
    pieces = []
    lo = t1
    if lo < zfun.T_SWITCH:
        hi = min(t2, zfun.T_SWITCH)
        pieces.append(_simpson_reference(lo, hi))
        lo = hi
    if lo < t2:
        # split long spans at integer boundaries to match the cell layout
        first_int = math.ceil(lo)
        last_int = math.floor(t2)
        if last_int - first_int >= 2 and first_int > lo - 1:
            if lo < first_int:
                n, w = _interval_nodes(lo, float(first_int), cfg)
                pieces.append(_integrate_nodes(n, w, z_config))
            for m in range(int(first_int), int(last_int)):
                n, w = _interval_nodes(float(m), float(m + 1), cfg)
                pieces.append(_integrate_nodes(n, w, z_config))
            if last_int < t2:
                n, w = _interval_nodes(float(last_int), t2, cfg)
                pieces.append(_integrate_nodes(n, w, z_config))
        else:
            n, w = _interval_nodes(lo, t2, cfg)
            pieces.append(_integrate_nodes(n, w, z_config))
    return pairwise_sum(v for v, _ in pieces)


def damped_mass(delta: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                z_config: zfun.ZConfig = zfun.DEFAULT_Z_CONFIG,
                jobs: int = 1) -> float:
    """int_0^inf Z(t)^2 exp(-2 delta t) dt, truncated where the integrand
    weight reaches ``cfg.damped_truncation_eps``; the dropped tail is covered
    by the analytic bound from ``Z2_ENVELOPE_C`` and must fit the tolerance.
    """
    delta = float(delta)
    if not (0.0 < delta <= 1.0):
        raise DomainError("damped_mass requires 0 < delta <= 1")
    t_max = math.log(1.0 / cfg.damped_truncation_eps) / (2.0 * delta)
    m1 = int(math.floor(t_max))
    vals, envs = _cells_masses(0, m1, cfg, z_config, jobs=jobs, damp=delta)
    pieces = [float(v) for v in vals]
    env = float(envs.sum())
    if t_max > m1:
        if t_max <= zfun.T_SWITCH:
            v, e = _simpson_reference(float(m1), t_max, damp=delta)
        else:
            n, w = _interval_nodes(float(max(m1, zfun.T_SWITCH)), t_max, cfg)
            v, e = _integrate_nodes(n, w, z_config, damp=delta)
            if m1 < zfun.T_SWITCH:
                v0, e0 = _simpson_reference(float(m1), zfun.T_SWITCH, damp=delta)
                v, e = v + v0, e + e0
        pieces.append(v)
        env += e
    # analytic tail: Z^2 <= C sqrt(t)  =>  C * Gamma(3/2, 2 d tmax) / (2d)^(3/2)
    x = 2.0 * delta * t_max
    tail = Z2_ENVELOPE_C * float(gammaincc(1.5, x)) * math.gamma(1.5) / (2.0 * delta) ** 1.5
    env += tail
    total = pairwise_sum(pieces)
    if env > 10.0 * cfg.rel_tol * max(1.0, abs(total)):
        raise PrecisionUnreachable(
            f"damped integral envelope {env:.3g} exceeds tolerance at delta={delta:g}"
        )
    return total


def checkpoint_env(ckpt: MassCheckpoint) -> float:
    """Envelope accumulated by extensions in this session (diagnostic)."""
    return ckpt._env
