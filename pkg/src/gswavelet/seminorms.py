"""Gelfand-Shilov seminorms on R^n and on the upper half-space.

Suprema over unbounded index sets are truncated at caps and judged by a
two-level stability rule: a value counts as finite when raising the caps
from (8, 8, 8) to (10, 10, 10) moves it by at most 1% and when the supremum
over the full sampled domain agrees within 1% with the supremum over an
inner domain (|b| <= 3L/4, a trimmed by 1/8 of the log range at each end).
All weights are handled in log space via ``lgamma``.

Also provided: log-slice fits of the decay exponents of a half-space field
and the index arithmetic relating the function spaces.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import DecayFitError, ParameterError, PreconditionError, TruncationError
from .grid_io import HalfSpaceField, SampledSignal, fft_slabs
from .transform import derivative_symbol

MAX_CAP = 12
CAPS_LO = (8, 8, 8)
CAPS_HI = (10, 10, 10)
DEFAULT_H_SWEEP = (0.25, 0.5, 1.0, 2.0)
STABILITY = 0.01
FLOOR = 1e-300
# relative roundoff assumed in sampled spectra; amplified by |xi^beta| it
# sets the floor below which spectral derivatives are treated as zero
NOISE = 1e-14
INNER_B = 0.75
INNER_LOG_TRIM = 0.125


# -- helpers ----------------------------------------------------------------

def _check_caps(caps):
    caps = tuple(int(c) for c in caps)
    if any(c < 0 for c in caps):
        raise ParameterError(f"caps must be nonnegative, got {caps}")
    if any(c > MAX_CAP for c in caps):
        raise TruncationError(f"caps {caps} exceed {MAX_CAP}: factorial weights leave double "
                              f"precision; lower the caps")
    return caps


def _log_abs(x):
    with np.errstate(divide="ignore"):
        return np.log(np.abs(x))


def _log_bracket(b):
    """``log <b>`` with ``<b> = (1 + |b|^2)^(1/2)``."""
    return 0.5 * np.log1p(np.sum(b ** 2, axis=-1))


def _multi(dim, cap):
    return [m for m in itertools.product(range(cap + 1), repeat=dim) if sum(m) <= cap]


def _log_fact(m):
    return float(np.sum(gammaln(np.asarray(m, dtype=float) + 1)))


def _log_derivative_max(spec_slabs, grid, h, smooth, cap):
    """``max_beta log(h^|beta| / beta!^smooth |d^beta Phi|)`` pointwise.

    ``spec_slabs`` holds b-spectra of shape ``(K,) + grid.shape`` (or a
    single ``grid.shape`` slab).
    """
    best = None
    log_h = math.log(h)
    axes = tuple(range(-grid.dim, 0))
    peak = np.max(np.abs(spec_slabs), axis=axes, keepdims=True)
    for beta in _multi(grid.dim, cap):
        sym = derivative_symbol(grid, beta)
        vals = fft_slabs(spec_slabs * sym, grid, inverse=True)
        floor = NOISE * peak * np.sum(np.abs(sym)) / (2 * grid.half_extent) ** grid.dim
        vals = np.where(np.abs(vals) > floor, vals, 0.0)
        cur = _log_abs(vals) + sum(beta) * log_h - smooth * _log_fact(beta)
        best = cur if best is None else np.maximum(best, cur)
    return best


def _power_max(log_base, exponent, cap):
    """``max_{0<=k<=cap} k log_base - exponent log k!`` elementwise."""
    k = np.arange(cap + 1)
    terms = np.multiply.outer(log_base, k) - exponent * gammaln(k + 1)
    return terms.max(axis=-1)


def _result(log_vals, inner_mask=None):
    full = float(np.max(log_vals)) if log_vals.size else -np.inf
    inner = full
    if inner_mask is not None:
        sub = log_vals[inner_mask]
        inner = float(np.max(sub)) if sub.size else -np.inf
    return full, inner


def _exp(v):
    return 0.0 if v == -np.inf else math.exp(v) if v < 709 else float("inf")


# -- seminorm on R^n --------------------------------------------------------

def _gs_log_map(f: SampledSignal, rho1, rho2, h, alpha_max, beta_max):
    g = f.grid
    spec = fft_slabs(f.values, g)
    deriv = _log_derivative_max(spec, g, h, rho1, beta_max)
    decay = _power_max(math.log(h) + _log_bracket(g.mesh()), rho2, alpha_max)
    return deriv + decay


def _inner_space_mask(grid):
    inner = np.abs(grid.axis()) <= INNER_B * grid.half_extent
    mask = inner
    for _ in range(grid.dim - 1):
        mask = np.multiply.outer(mask, inner)
    return mask


def gs_seminorm(f: SampledSignal, rho1, rho2, h, alpha_max=10, beta_max=10) -> float:
    """``sup h^(|a|+|b|) / (a!^rho2 b!^rho1) <x>^|a| |f^(b)(x)|`` over the grid."""
    if not h > 0:
        raise ParameterError("h must be positive")
    alpha_max, beta_max = _check_caps((alpha_max, beta_max))
    if not np.any(f.values):
        return 0.0
    full, _ = _result(_gs_log_map(f, rho1, rho2, h, alpha_max, beta_max))
    return _exp(full)


# -- seminorms on the half-space --------------------------------------------

@dataclass(frozen=True)
class HalfSpaceIndices:
    s: float
    t: float
    tau1: float
    tau2: float

    def __post_init__(self):
        for name in ("s", "t", "tau1", "tau2"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive")
        if self.s + self.t < 1:
            raise ParameterError(f"s + t = {self.s + self.t} < 1: the space is trivial")

    def to_dict(self):
        return {"s": self.s, "t": self.t, "tau1": self.tau1, "tau2": self.tau2}


def _b_spectra(fld: HalfSpaceField):
    if fld.domain == "frequency":
        return fld.values
    return fft_slabs(fld.values, fld.sgrid)


def _inner_half_mask(fld: HalfSpaceField):
    a = fld.agrid.values
    span = math.log(fld.agrid.a_max / fld.agrid.a_min)
    lo = fld.agrid.a_min * math.exp(INNER_LOG_TRIM * span)
    hi = fld.agrid.a_max * math.exp(-INNER_LOG_TRIM * span)
    a_in = (a >= lo * (1 - 1e-12)) & (a <= hi * (1 + 1e-12))
    return np.multiply.outer(a_in, _inner_space_mask(fld.sgrid))


def _p_log_map(fld, idx, h, caps):
    beta_max, k_max, l_max = caps
    g = fld.sgrid
    deriv = _log_derivative_max(_b_spectra(fld), g, h, idx.s, beta_max)
    b_part = _power_max(math.log(h) + _log_bracket(g.mesh()), idx.t, k_max)
    log_a = np.log(fld.agrid.values)
    l = np.arange(l_max + 1)
    l1, l2 = np.meshgrid(l, l, indexing="ij")
    # log(a^l1 + a^-l2) for every (a, l1, l2)
    mix = np.logaddexp(np.multiply.outer(log_a, l1), -np.multiply.outer(log_a, l2))
    w = (l1 + l2) * math.log(h) - idx.tau1 * gammaln(l1 + 1) - idx.tau2 * gammaln(l2 + 1)
    a_part = (mix + w).reshape(len(log_a), -1).max(axis=1)
    shape = (len(log_a),) + (1,) * g.dim
    return deriv + b_part[None] + a_part.reshape(shape)


def _q_log_map(fld, idx, h, beta_max):
    g = fld.sgrid
    deriv = _log_derivative_max(_b_spectra(fld), g, h, idx.s, beta_max)
    a = fld.agrid.values
    a_w = h * (a ** (1.0 / idx.tau1) + a ** (-1.0 / idx.tau2))
    b_w = h * np.sqrt(np.sum(g.mesh() ** 2, axis=-1)) ** (1.0 / idx.t)
    shape = (len(a),) + (1,) * g.dim
    return deriv + b_w[None] + a_w.reshape(shape)


def halfspace_seminorm_p(fld: HalfSpaceField, idx: HalfSpaceIndices, h, caps=CAPS_HI) -> float:
    """``sup h^(|b|+k+l1+l2)/(b!^s k!^t l1!^tau1 l2!^tau2) (a^l1 + a^-l2) <b>^k |d_b^beta Phi|``."""
    if not h > 0:
        raise ParameterError("h must be positive")
    caps = _check_caps(caps)
    if not np.any(fld.values):
        return 0.0
    return _exp(_result(_p_log_map(fld, idx, h, caps))[0])


def halfspace_seminorm_q(fld: HalfSpaceField, idx: HalfSpaceIndices, h, caps=CAPS_HI) -> float:
    """``sup h^|beta|/beta!^s exp(h(a^(1/tau1) + a^(-1/tau2) + |b|^(1/t))) |d_b^beta Phi|``.

    Only the first cap (on ``beta``) is used.
    """
    if not h > 0:
        raise ParameterError("h must be positive")
    caps = _check_caps(caps)
    if not np.any(fld.values):
        return 0.0
    return _exp(_result(_q_log_map(fld, idx, h, caps[0]))[0])


# -- sweeps and verdicts ----------------------------------------------------

@dataclass(frozen=True)
class SeminormReport:
    """Seminorm values over an ``h`` sweep.

    ``values[i]`` is the supremum at the upper caps, or ``inf`` when the
    stability rule fails at ``h_sweep[i]`` or at any smaller ``h``.
    """

    kind: str
    h_sweep: tuple
    values: tuple
    raw_log10: tuple
    cap_change: tuple
    domain_change: tuple
    finite_up_to: float
    truncation: tuple
    truncation_lo: tuple

    @property
    def finite(self) -> bool:
        return self.finite_up_to is not None

    def to_dict(self):
        def enc(v):
            return None if not math.isfinite(v) else v
        return {"kind": self.kind, "h_sweep": list(self.h_sweep),
                "values": [enc(v) for v in self.values],
                "log10_values": [enc(math.log10(v)) if v > 0 else enc(-math.inf) if v == 0
                                 else None for v in self.values],
                "divergent": [not math.isfinite(v) for v in self.values],
                "raw_log10": [enc(v) for v in self.raw_log10],
                "cap_change": [enc(v) for v in self.cap_change],
                "domain_change": [enc(v) for v in self.domain_change],
                "finite": self.finite, "finite_up_to": self.finite_up_to,
                "truncation": list(self.truncation), "truncation_lo": list(self.truncation_lo)}


def _rel_change(x, y):
    """Relative change between two log-values."""
    if x == y:
        return 0.0
    if x == -np.inf or y == -np.inf or abs(x - y) > 700:
        return math.inf
    return abs(math.expm1(x - y))


def _sweep(kind, log_map, inner, h_sweep, caps_lo, caps_hi):
    values, raws, cap_ch, dom_ch = [], [], [], []
    finite_up_to = None
    broken = False
    for h in h_sweep:
        hi_full, hi_inner = _result(log_map(h, caps_hi), inner)
        lo_full, _ = _result(log_map(h, caps_lo))
        cc = _rel_change(hi_full, lo_full)
        dc = _rel_change(hi_full, hi_inner)
        raws.append(hi_full / math.log(10) if hi_full > -np.inf else -np.inf)
        cap_ch.append(cc)
        dom_ch.append(dc)
        stable = cc <= STABILITY and dc <= STABILITY
        broken = broken or not stable
        if broken:
            values.append(math.inf)
        else:
            values.append(_exp(hi_full))
            finite_up_to = float(h)
    return SeminormReport(kind, tuple(float(h) for h in h_sweep), tuple(values), tuple(raws),
                          tuple(cap_ch), tuple(dom_ch), finite_up_to, tuple(caps_hi),
                          tuple(caps_lo))


def _zero_report(kind, h_sweep, caps_lo, caps_hi):
    n = len(h_sweep)
    return SeminormReport(kind, tuple(float(h) for h in h_sweep), (0.0,) * n, (-math.inf,) * n,
                          (0.0,) * n, (0.0,) * n, float(max(h_sweep)), tuple(caps_hi),
                          tuple(caps_lo))


def gs_sweep(f: SampledSignal, rho1, rho2, h_sweep=(0.5, 1.0, 2.0), caps_lo=CAPS_LO[:2],
             caps_hi=CAPS_HI[:2]) -> SeminormReport:
    caps_lo, caps_hi = _check_caps(caps_lo), _check_caps(caps_hi)
    h_sweep = sorted(h_sweep)
    if not np.any(f.values):
        return _zero_report("gs_p", h_sweep, caps_lo, caps_hi)
    inner = _inner_space_mask(f.grid)
    return _sweep("gs_p", lambda h, c: _gs_log_map(f, rho1, rho2, h, c[0], c[1]), inner,
                  h_sweep, caps_lo, caps_hi)


def halfspace_sweep(fld: HalfSpaceField, idx: HalfSpaceIndices, kind="half_p",
                    h_sweep=DEFAULT_H_SWEEP, caps_lo=CAPS_LO, caps_hi=CAPS_HI) -> SeminormReport:
    """Evaluate ``half_p`` or ``half_q`` over ``h_sweep`` with finiteness verdicts."""
    caps_lo, caps_hi = _check_caps(caps_lo), _check_caps(caps_hi)
    h_sweep = sorted(h_sweep)
    if kind not in ("half_p", "half_q"):
        raise ParameterError(f"unknown seminorm kind {kind!r}")
    if not np.any(fld.values):
        return _zero_report(kind, h_sweep, caps_lo, caps_hi)
    inner = _inner_half_mask(fld)
    if kind == "half_p":
        fn = lambda h, c: _p_log_map(fld, idx, h, c)  # noqa: E731
    else:
        fn = lambda h, c: _q_log_map(fld, idx, h, c[0])  # noqa: E731
    return _sweep(kind, fn, inner, h_sweep, caps_lo, caps_hi)


# -- decay exponents --------------------------------------------------------

@dataclass(frozen=True)
class DecayFit:
    rates: dict
    exponents_used: dict
    r_squared: dict
    bands: dict
    n_points: dict

    def to_dict(self):
        return {"rates": dict(self.rates), "exponents_used": dict(self.exponents_used),
                "r_squared": dict(self.r_squared),
                "bands": {k: list(v) for k, v in self.bands.items()},
                "n_points": dict(self.n_points)}


def _line_fit(x, y):
    slope, icpt = np.polyfit(x, y, 1)
    ss = float(np.sum((y - y.mean()) ** 2))
    if ss <= 1e-24 * max(1.0, float(np.mean(y ** 2))):
        return 0.0, 0.0
    res = float(np.sum((y - (slope * x + icpt)) ** 2))
    return float(slope), float(min(1.0, max(0.0, 1.0 - res / ss)))


def _fit_band(name, var, slice_vals, lo, hi, exponent, sign):
    # widen the band outward to the nearest sample nodes
    below, above = var[var <= lo], var[var >= hi]
    lo = below.max() if below.size else lo
    hi = above.min() if above.size else hi
    sel = (var >= lo * (1 - 1e-12)) & (var <= hi * (1 + 1e-12)) & (slice_vals > FLOOR)
    if sel.sum() < 4:
        raise DecayFitError(f"{name}: fewer than four usable points in [{lo:.4g}, {hi:.4g}]")
    v = var[sel]
    if v.max() / v.min() < 10 * (1 - 1e-9):
        raise DecayFitError(f"{name}: usable band [{v.min():.4g}, {v.max():.4g}] spans less than "
                            f"one decade")
    x = v ** (sign * exponent)
    slope, r2 = _line_fit(x, np.log(slice_vals[sel]))
    return -slope, r2, (float(v.min()), float(v.max())), int(sel.sum())


def decay_fit(fld: HalfSpaceField, s, t, rho1, rho2) -> DecayFit:
    """Fit ``log sup|Phi|`` slices against the exponents of the decay bound.

    (i) ``a^(1/(t-rho2))`` on the upper scale decade, (ii)
    ``a^(-1/(s-rho1))`` on the lower decade, (iii) ``|b|^(1/t)`` on
    ``L/20 <= |b| <= L/2`` using the outer envelope of ``sup_a |Phi|``.
    Bands shrink past slices that underflow ``1e-300``.
    """
    if not t > rho2:
        raise PreconditionError(f"decay fit needs t > rho2, got t={t}, rho2={rho2}")
    if not s > rho1:
        raise PreconditionError(f"decay fit needs s > rho1, got s={s}, rho1={rho1}")
    if fld.domain != "space":
        raise ParameterError("decay fit needs a field sampled in b")
    mag = np.abs(fld.values)
    if not np.any(mag):
        raise DecayFitError("field is identically zero")
    a = fld.agrid.values
    k = fld.agrid.count
    sup_b = mag.reshape(k, -1).max(axis=1)
    e_inf, e_zero, e_b = 1.0 / (t - rho2), 1.0 / (s - rho1), 1.0 / t

    def upper_band():
        live = a[sup_b > FLOOR]
        if live.size == 0:
            raise DecayFitError("a-slices all below the floor")
        top = live.max()
        return top / 10, top

    def lower_band():
        live = a[sup_b > FLOOR]
        if live.size == 0:
            raise DecayFitError("a-slices all below the floor")
        bot = live.min()
        return bot, bot * 10

    lo, hi = upper_band()
    r_inf, r2_inf, band_inf, n_inf = _fit_band("upper scale decade", a, sup_b, lo, hi, e_inf, 1)
    lo, hi = lower_band()
    r_zero, r2_zero, band_zero, n_zero = _fit_band("lower scale decade", a, sup_b, lo, hi,
                                                   e_zero, -1)

    g = fld.sgrid
    radius = np.sqrt(np.sum(g.mesh() ** 2, axis=-1)).reshape(-1)
    sup_a = mag.reshape(k, -1).max(axis=0)
    order = np.argsort(radius)
    rad_sorted = radius[order]
    env = np.maximum.accumulate(sup_a[order][::-1])[::-1]
    # one value per distinct radius
    uniq, first = np.unique(rad_sorted, return_index=True)
    env_u = env[first]
    r_b, r2_b, band_b, n_b = _fit_band("outer b band", uniq, env_u, g.half_extent / 20,
                                       g.half_extent / 2, e_b, 1)
    return DecayFit(
        rates={"h_a_inf": r_inf, "h_a_zero": r_zero, "h_b": r_b},
        exponents_used={"e_inf": e_inf, "e_zero": e_zero, "e_b": e_b},
        r_squared={"a_inf": r2_inf, "a_zero": r2_zero, "b": r2_b},
        bands={"a_inf": band_inf, "a_zero": band_zero, "b": band_b},
        n_points={"a_inf": n_inf, "a_zero": n_zero, "b": n_b})


# -- index calculus ---------------------------------------------------------

@dataclass(frozen=True)
class IndexCalculus:
    theorem: str
    wavelet: dict
    domain: dict
    codomain: dict
    hypotheses: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.hypotheses.values())

    def to_dict(self):
        return {"theorem": self.theorem, "wavelet": self.wavelet, "domain": self.domain,
                "codomain": self.codomain, "hypotheses": dict(self.hypotheses),
                "valid": self.valid}


def _space(smooth, decay):
    return {"space": "S", "smoothness": smooth, "decay": decay}


def _half(s, t, tau1, tau2):
    return {"space": "S_half", "s": s, "t": t, "tau1": tau1, "tau2": tau2}


THEOREMS = ("T3", "T3-remark", "T4a", "T4b")


def index_calculus(rho1, rho2, s, t, tau1=None, tau2=None, theorem="T3") -> IndexCalculus:
    """Index bookkeeping of the continuity statements.

    ``T3``: analysis maps wavelets in S^rho1_rho2 and signals in
    S^{min(s, tau2-rho2+1)}_{1-rho1+min(t-rho2, tau1)} into
    S^s_{t,tau1,tau2}.  ``T3-remark`` fixes ``tau1 = t - rho2`` and
    ``tau2 = s + rho2 - 1``.  ``T4a``/``T4b``: synthesis maps fields in
    S^tau_{t,t-rho2,s-rho1} (resp. S^s_{t,t-rho2,tau}) into S^s_t, where
    ``tau`` is passed as ``tau1``.
    """
    base = {"rho1 > 0": rho1 > 0, "rho2 > 1": rho2 > 1, "s > 0": s > 0}
    wav = _space(rho1, rho2)
    if theorem in ("T3", "T3-remark"):
        if theorem == "T3-remark":
            tau1, tau2 = t - rho2, s + rho2 - 1
        if tau1 is None or tau2 is None:
            raise ParameterError("T3 needs tau1 and tau2")
        hyp = dict(base)
        hyp["t > rho1 + rho2"] = t > rho1 + rho2
        hyp["tau1 > rho1"] = tau1 > rho1
        hyp["tau2 > rho2 - 1"] = tau2 > rho2 - 1
        dom = _space(min(s, tau2 - rho2 + 1), 1 - rho1 + min(t - rho2, tau1))
        return IndexCalculus(theorem, wav, dom, _half(s, t, tau1, tau2), hyp)
    if theorem in ("T4a", "T4b"):
        tau = tau1
        if tau is None:
            raise ParameterError("T4 needs the free index tau (passed as tau1)")
        hyp = dict(base)
        hyp["t > rho2"] = t > rho2
        hyp["tau > 0"] = tau > 0
        if theorem == "T4a":
            hyp["s > rho1"] = s > rho1
            dom = _half(tau, t, t - rho2, s - rho1)
        else:
            dom = _half(s, t, t - rho2, tau)
        return IndexCalculus(theorem, wav, dom, _space(s, t), hyp)
    raise ParameterError(f"unknown theorem {theorem!r}; choose from {THEOREMS}")
