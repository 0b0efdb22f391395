"""Wavelets defined on the Fourier side, with moment and non-degeneracy checks.

A :class:`WaveletSpec` carries its spectrum sampled on the frequency lattice
of a :class:`~gswavelet.grid_io.SignalGrid` and, when available, the
closed-form profile it was built from.  Off-lattice evaluation (needed for
dilated spectra) uses the closed form when present and otherwise the
band-limited interpolant of the samples restricted to their support.
"""

from __future__ import annotations

import base64
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .errors import GridError, ParameterError, ResolutionError, TrivialWaveletError
from .grid_io import (FrequencyGrid, SampledSignal, SampledSpectrum, SignalGrid, forward_fft,
                      from_bytes, inverse_fft, to_bytes)
from .profiles import BallBump, BumpSum, Conjugated, GevreyBump, RadialBump, Scaled, \
    profile_from_dict

MAX_MOMENT_ORDER = 12


@dataclass(frozen=True)
class GevreyIndices:
    """Indices of the Gelfand-Shilov space: smoothness ``rho1``, decay ``rho2``."""

    rho1: float
    rho2: float

    def __post_init__(self):
        if not self.rho1 > 0:
            raise ParameterError(f"rho1 must be positive, got {self.rho1}")
        if not self.rho2 > 1:
            raise ParameterError(
                f"rho2 must exceed 1 for compactly supported spectra, got {self.rho2}")

    def to_dict(self):
        return {"rho1": self.rho1, "rho2": self.rho2}


class _SampledProfile:
    """Band-limited interpolant of a sampled spectrum, zero off its support."""

    def __init__(self, spectrum: SampledSpectrum):
        g = spectrum.grid
        self.dim = g.dim
        self._grid = g
        self._samples = inverse_fft(spectrum).values
        live = spectrum.values != 0
        # dilate the support by one lattice cell in every direction
        mask = live.copy()
        for ax in range(g.dim):
            mask |= np.roll(live, 1, axis=ax) | np.roll(live, -1, axis=ax)
        self._mask = mask
        dxi = FrequencyGrid(g).spacing
        rad = FrequencyGrid(g).radius()
        if np.any(live):
            self._extent = (max(0.0, float(rad[live].min()) - dxi), float(rad[live].max()) + dxi)
        else:
            self._extent = (0.0, 0.0)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        flat = xi.reshape(-1, self.dim)
        g = self._grid
        dxi = math.pi / g.half_extent
        idx = np.rint(flat / dxi).astype(np.int64) + g.n // 2
        inside = np.all((idx >= 0) & (idx < g.n), axis=1)
        keep = np.zeros(flat.shape[0], dtype=bool)
        keep[inside] = self._mask[tuple(idx[inside].T)]
        out = np.zeros(flat.shape[0], dtype=np.complex128)
        if np.any(keep):
            pts = flat[keep] if self.dim == 2 else flat[keep, 0]
            out[keep] = _kernels.dtft(self._samples, -g.half_extent, g.spacing, pts) * g.cell_volume
        return out.reshape(xi.shape[:-1])

    def radial_extent(self):
        return self._extent

    def to_dict(self):
        return None


@dataclass(frozen=True)
class WaveletSpec:
    """A wavelet given by its spectrum.

    Attributes
    ----------
    indices : GevreyIndices
    spectrum : SampledSpectrum
        psi^ on the frequency lattice of ``spectrum.grid``.
    profile : callable or None
        Closed-form spectrum, preferred for off-lattice evaluation.
    label : str
    """

    indices: GevreyIndices
    spectrum: SampledSpectrum
    profile: object = None
    label: str = "wavelet"
    _sampled: list = field(default_factory=list, repr=False, compare=False)

    @property
    def grid(self) -> SignalGrid:
        return self.spectrum.grid

    @property
    def dim(self) -> int:
        return self.grid.dim

    def as_profile(self):
        if self.profile is not None:
            return self.profile
        if not self._sampled:
            self._sampled.append(_SampledProfile(self.spectrum))
        return self._sampled[0]

    def evaluate(self, xi) -> np.ndarray:
        """psi^ at arbitrary frequencies ``xi`` of shape ``(..., dim)``."""
        return np.asarray(self.as_profile()(xi), dtype=np.complex128)

    def support_radii(self):
        """Radial interval ``(r_lo, r_hi)`` containing the support of psi^."""
        ext = None
        if self.profile is not None and hasattr(self.profile, "radial_extent"):
            ext = self.profile.radial_extent()
        if ext is None:
            ext = _SampledProfile(self.spectrum).radial_extent() if not self._sampled \
                else self._sampled[0].radial_extent()
        return float(ext[0]), float(ext[1])

    def space_values(self) -> SampledSignal:
        return inverse_fft(self.spectrum)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.spectrum.values)))

    def conjugate(self) -> "WaveletSpec":
        """The wavelet ``conj(psi)``, whose spectrum is ``conj(psi^(-xi))``."""
        if self.profile is not None:
            prof = Conjugated(self.profile)
            spec = sample_profile(prof, self.grid)
        else:
            prof = None
            spec = forward_fft(SampledSignal(self.grid, np.conj(self.space_values().values)))
        return WaveletSpec(self.indices, spec, prof, f"conj({self.label})")

    def scaled(self, factor) -> "WaveletSpec":
        prof = Scaled(self.profile, factor) if self.profile is not None else None
        return WaveletSpec(self.indices, self.spectrum * factor, prof, self.label)

    def to_dict(self, embed_spectrum=False) -> dict:
        prof = self.profile.to_dict() if self.profile is not None else None
        d = {"label": self.label, "indices": self.indices.to_dict(), "grid": self.grid.to_dict(),
             "profile": prof, "spectrum": None}
        if prof is None or embed_spectrum:
            d["spectrum"] = base64.b64encode(to_bytes(self.spectrum)).decode("ascii")
        return d

    @classmethod
    def from_dict(cls, d) -> "WaveletSpec":
        try:
            indices = GevreyIndices(**d["indices"])
            grid = SignalGrid.from_dict(d["grid"])
            prof = profile_from_dict(d["profile"]) if d.get("profile") else None
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed wavelet description: {exc}") from exc
        if d.get("spectrum"):
            spec = from_bytes(base64.b64decode(d["spectrum"]))
            if not isinstance(spec, SampledSpectrum) or spec.grid != grid:
                raise ParameterError("embedded spectrum does not match the wavelet grid")
        elif prof is not None:
            spec = sample_profile(prof, grid)
        else:
            raise ParameterError("wavelet description has neither profile nor spectrum")
        return cls(indices, spec, prof, d.get("label", "wavelet"))


def sample_profile(profile, grid: SignalGrid) -> SampledSpectrum:
    """Sample a closed-form spectrum on the frequency lattice of ``grid``."""
    vals = profile(FrequencyGrid(grid).mesh())
    return SampledSpectrum(grid, np.asarray(vals, dtype=np.complex128))


def wavelet_from_profile(profile, grid: SignalGrid, indices: GevreyIndices, label="wavelet"):
    if profile.dim != grid.dim:
        raise GridError(f"profile is {profile.dim}D but the grid is {grid.dim}D")
    return WaveletSpec(indices, sample_profile(profile, grid), profile, label)


def wavelet_from_spectrum(spectrum: SampledSpectrum, indices: GevreyIndices, label="sampled"):
    return WaveletSpec(indices, spectrum, None, label)


def _check_resolved(grid: SignalGrid, r_hi):
    nyq = FrequencyGrid(grid).nyquist
    if nyq < 2.0 * r_hi:
        raise GridError(f"grid Nyquist frequency {nyq:.4g} does not resolve the spectral support "
                        f"(need at least {2.0 * r_hi:.4g}); increase N or decrease L")


def design_directional_wavelet(dim, indices: GevreyIndices, grid: SignalGrid) -> WaveletSpec:
    """Sum of Gevrey bumps of order ``rho2`` on the balls ``B(+-e_j/2, 1/2)``.

    The spectrum is real, nonnegative and even, vanishes on a neighbourhood
    of the origin, and every ray from the origin meets its support.
    """
    if dim not in (1, 2):
        raise GridError(f"dim must be 1 or 2, got {dim}")
    if grid.dim != dim:
        raise GridError(f"grid is {grid.dim}D, requested a {dim}D wavelet")
    _check_resolved(grid, 1.0)
    balls = []
    for j in range(dim):
        for sign in (1.0, -1.0):
            center = [0.0] * dim
            center[j] = 0.5 * sign
            balls.append(BallBump(indices.rho2, center, 0.5))
    return wavelet_from_profile(BumpSum(balls), grid, indices, f"directional-{dim}d")


def radial_wavelet(dim, indices: GevreyIndices, grid: SignalGrid, r0=0.25, r1=1.0) -> WaveletSpec:
    """Rotation-invariant wavelet with spectrum ``bump(|xi|)`` on ``r0 < |xi| < r1``."""
    if grid.dim != dim:
        raise GridError(f"grid is {grid.dim}D, requested a {dim}D wavelet")
    if not r0 > 0:
        raise ParameterError("a radial wavelet needs r0 > 0 to vanish near the origin")
    _check_resolved(grid, r1)
    prof = RadialBump(GevreyBump(indices.rho2, r0, r1), dim)
    return wavelet_from_profile(prof, grid, indices, f"radial-{dim}d")


# -- vanishing moments ------------------------------------------------------

def fornberg_weights(nodes, order):
    """Finite-difference weights for the ``order``-th derivative at 0."""
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    c = np.zeros((n, order + 1))
    c1, c4 = 1.0, nodes[0]
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2, c5, c4 = 1.0, c4, nodes[i]
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def _stencil(order):
    half = order // 2 + 1
    offsets = np.arange(-half, half + 1)
    return offsets, fornberg_weights(offsets, order)


def multi_indices(dim, max_order):
    """All multi-indices of length ``dim`` with total order at most ``max_order``."""
    return [m for m in itertools.product(range(max_order + 1), repeat=dim) if sum(m) <= max_order]


def _derivative_at_zero(values_fn, m, h):
    """Tensor finite-difference estimate of the ``m``-th derivative at 0."""
    stencils = [_stencil(k) for k in m]
    grids = np.meshgrid(*[s[0] * h for s in stencils], indexing="ij")
    pts = np.stack(grids, axis=-1)
    w = stencils[0][1]
    for s in stencils[1:]:
        w = np.multiply.outer(w, s[1])
    return complex(np.sum(w * values_fn(pts)) / h ** sum(m))


def lattice_moments(spectrum: SampledSpectrum, max_order):
    """``|mu_m|`` from central differences of sampled spectrum values around 0.

    Returns an array aligned with :func:`multi_indices`.
    """
    g = spectrum.grid
    center = g.n // 2
    if max_order // 2 + 1 > center - 1:
        raise ResolutionError("moment stencil does not fit on the frequency lattice")
    dxi = math.pi / g.half_extent
    vals = spectrum.values

    def lattice(pts):
        idx = np.rint(pts / dxi).astype(int) + center
        return vals[tuple(np.moveaxis(idx, -1, 0))]

    return np.array([abs(_derivative_at_zero(lattice, m, dxi))
                     for m in multi_indices(g.dim, max_order)])


@dataclass(frozen=True)
class MomentReport:
    max_order: int
    orders: list
    moment_bounds: list
    verdict: bool
    tolerance: float
    spectrum_norm: float

    def to_dict(self):
        return {"max_order": self.max_order, "orders": [list(o) for o in self.orders],
                "moment_bounds": list(self.moment_bounds), "verdict": self.verdict,
                "tolerance": self.tolerance, "spectrum_norm": self.spectrum_norm}


def check_vanishing_moments(w: WaveletSpec, max_order=10, tol=1e-8) -> MomentReport:
    """Estimate ``mu_m = i^|m| d^m psi^(0)`` for ``|m| <= max_order``.

    With a closed-form spectrum the difference step is refined geometrically
    from the lattice spacing and the most stable estimate is kept; with
    samples only, a single stencil on the lattice is used.
    """
    if max_order < 0 or max_order > MAX_MOMENT_ORDER:
        raise ResolutionError(f"max_order must lie in [0, {MAX_MOMENT_ORDER}], got {max_order}")
    norm = w.sup_norm()
    if norm == 0:
        raise TrivialWaveletError("spectrum is identically zero")
    g = w.grid
    dxi = math.pi / g.half_extent
    orders = multi_indices(g.dim, max_order)
    bounds = []
    if w.profile is None:
        bounds = list(lattice_moments(w.spectrum, max_order))
    else:
        prof = w.profile
        steps = dxi * 2.0 ** -np.arange(49)
        for m in orders:
            est = np.array([_derivative_at_zero(prof, m, h) for h in steps])
            diffs = np.abs(np.diff(est))
            diffs[~np.isfinite(diffs)] = np.inf
            j = int(np.argmin(diffs))
            bounds.append(abs(est[j + 1]))
    verdict = all(b <= tol * norm for b in bounds)
    return MomentReport(max_order, orders, [float(b) for b in bounds], bool(verdict), float(tol),
                        norm)


# -- non-degeneracy ---------------------------------------------------------

@dataclass(frozen=True)
class NondegeneracyReport:
    verdict: bool
    worst_direction: tuple
    worst_mass: float
    masses: list
    tolerance: float

    def to_dict(self):
        return {"verdict": self.verdict, "worst_direction": list(self.worst_direction),
                "worst_mass": self.worst_mass, "tolerance": self.tolerance}


def sample_directions(dim, n_directions=256):
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    theta = 2 * math.pi * np.arange(n_directions) / n_directions
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def check_nondegenerate(w: WaveletSpec, n_directions=256, n_radii=256, tol=1e-8):
    """Check that psi^ does not vanish identically along any sampled ray.

    ``mass(omega)`` is the maximum of ``|psi^(r omega)|`` over
    ``r in (0, xi_nyq]``: a geometric radial scan refined by a bounded
    maximisation around the best node.
    """
    if w.dim == 2 and n_directions < 2:
        raise ParameterError("need at least two directions")
    if n_radii < 16:
        raise ParameterError("need at least 16 radii")
    norm = w.sup_norm()
    if norm == 0:
        raise TrivialWaveletError("spectrum is identically zero")
    nyq = FrequencyGrid(w.grid).nyquist
    radii = np.geomspace(nyq * 1e-4, nyq, n_radii)
    dirs = sample_directions(w.dim, n_directions)
    scan = np.abs(w.evaluate(radii[None, :, None] * dirs[:, None, :]))
    masses = []
    for i, om in enumerate(dirs):
        j = int(np.argmax(scan[i]))
        best = scan[i, j]
        if best > 0:
            lo, hi = radii[max(j - 1, 0)], radii[min(j + 1, n_radii - 1)]
            res = minimize_scalar(lambda r: -abs(w.evaluate((r * om)[None, :])[0]),
                                  bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-10 * hi})
            best = max(best, -res.fun)
        masses.append(float(best))
    k = int(np.argmin(masses))
    return NondegeneracyReport(bool(masses[k] > tol * norm), tuple(float(v) for v in dirs[k]),
                               masses[k], masses, float(tol))


def fit_spatial_decay(w: WaveletSpec, x_min=2.0, x_max=None):
    """Fit ``log env(x) ~ log C - h x^(1/rho2)`` to the outer envelope of ``|psi|``.

    Returns ``(h, C, r_squared)``.  The envelope at radius ``x`` is the
    largest ``|psi|`` at radius ``>= x``, which removes oscillation zeros.
    """
    g = w.grid
    x_max = g.half_extent / 2 if x_max is None else x_max
    psi = np.abs(w.space_values().values)
    r = g.radius().reshape(-1)
    psi = psi.reshape(-1)
    order = np.argsort(r)[::-1]
    env = np.maximum.accumulate(psi[order])[::-1]
    rs = r[order][::-1]
    sel = (rs >= x_min) & (rs <= x_max) & (env > 0)
    if sel.sum() < 4:
        raise ResolutionError("too few samples in the spatial decay band")
    u = rs[sel] ** (1.0 / w.indices.rho2)
    y = np.log(env[sel])
    slope, icpt = np.polyfit(u, y, 1)
    resid = y - (slope * u + icpt)
    ss = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid ** 2) / ss if ss > 0 else 0.0
    return float(-slope), float(math.exp(icpt)), float(max(0.0, r2))
