"""Closed-form spectral profiles.

A profile is a callable mapping frequency points of shape ``(..., dim)`` to
complex values of shape ``(...)``.  Profiles know the radial extent of their
support, which drives aliasing checks and quadrature ranges, and serialise
to plain dicts.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import expit

from .errors import ParameterError


def _exponent(order):
    # exp(-u**-p) is Gevrey of order 1 + 1/p
    return 1.0 / (order - 1.0)


class GevreyBump:
    """Scalar bump ``r -> exp(-((r - r0)(r1 - r))**(-1/(order-1)))`` on ``(r0, r1)``.

    Rescaled so that the value at the midpoint equals ``amplitude``; zero
    with all derivatives outside ``(r0, r1)``.
    """

    def __init__(self, order, r0, r1, amplitude=1.0):
        if not order > 1:
            raise ParameterError(f"Gevrey order must exceed 1, got {order}")
        if not (0 <= r0 < r1) or not math.isfinite(r1):
            raise ParameterError(f"invalid bump interval [{r0}, {r1}]")
        self.order = float(order)
        self.r0 = float(r0)
        self.r1 = float(r1)
        self.amplitude = float(amplitude)
        self._p = _exponent(self.order)
        self._peak = (0.25 * (self.r1 - self.r0) ** 2) ** (-self._p)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        q = (r - self.r0) * (self.r1 - r)
        out = np.zeros(r.shape)
        inside = q > 0
        out[inside] = self.amplitude * np.exp(self._peak - q[inside] ** (-self._p))
        return out if out.ndim else float(out)

    def to_dict(self):
        return {"type": "gevrey_bump", "order": self.order, "r0": self.r0, "r1": self.r1,
                "amplitude": self.amplitude}

    def __repr__(self):
        return f"GevreyBump(order={self.order}, r0={self.r0}, r1={self.r1})"


def gevrey_bump(order, r0, r1):
    return GevreyBump(order, r0, r1)


class BallBump:
    """Bump supported on the closed ball ``B(center, radius)``, peak at the centre."""

    def __init__(self, order, center, radius, amplitude=1.0):
        if not order > 1:
            raise ParameterError(f"Gevrey order must exceed 1, got {order}")
        if not radius > 0:
            raise ParameterError("ball radius must be positive")
        self.order = float(order)
        self.center = tuple(float(c) for c in center)
        self.radius = float(radius)
        self.amplitude = float(amplitude)
        self._p = _exponent(self.order)
        self._peak = (self.radius ** 2) ** (-self._p)

    @property
    def dim(self):
        return len(self.center)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        d2 = np.sum((xi - np.asarray(self.center)) ** 2, axis=-1)
        q = self.radius ** 2 - d2
        out = np.zeros(q.shape)
        inside = q > 0
        out[inside] = self.amplitude * np.exp(self._peak - q[inside] ** (-self._p))
        return out

    def radial_extent(self):
        d = math.hypot(*self.center)
        return max(0.0, d - self.radius), d + self.radius

    def to_dict(self):
        return {"type": "ball_bump", "order": self.order, "center": list(self.center),
                "radius": self.radius, "amplitude": self.amplitude}


class RadialBump:
    """Rotation-invariant profile ``xi -> bump(|xi|)``."""

    def __init__(self, bump: GevreyBump, dim):
        self.bump = bump
        self.dim = int(dim)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return np.asarray(self.bump(np.sqrt(np.sum(xi ** 2, axis=-1))), dtype=float)

    def radial_extent(self):
        return self.bump.r0, self.bump.r1

    def to_dict(self):
        return {"type": "radial_bump", "dim": self.dim, "bump": self.bump.to_dict()}


class BumpSum:
    def __init__(self, terms):
        terms = tuple(terms)
        if not terms:
            raise ParameterError("a bump sum needs at least one term")
        dims = {t.dim for t in terms}
        if len(dims) != 1:
            raise ParameterError("bump terms disagree on dimension")
        self.terms = terms
        self.dim = dims.pop()

    def __call__(self, xi):
        out = self.terms[0](xi).astype(np.complex128)
        for t in self.terms[1:]:
            out += t(xi)
        return out

    def radial_extent(self):
        ext = [t.radial_extent() for t in self.terms]
        return min(e[0] for e in ext), max(e[1] for e in ext)

    def to_dict(self):
        return {"type": "bump_sum", "terms": [t.to_dict() for t in self.terms]}


class PlateauProfile:
    """Radial cutoff equal to 1 on ``[r1, r2]``, vanishing outside
    ``(r1 - margin, r2 + margin)``.

    The transition is the Gevrey smooth step ``f(u)/(f(u)+f(1-u))`` with
    ``f(u) = exp(-u**(-1/(order-1)))``.
    """

    def __init__(self, r1, r2, margin, order=2.0):
        if not (0 < r1 < r2):
            raise ParameterError(f"need 0 < r1 < r2, got [{r1}, {r2}]")
        if not (0 < margin < r1):
            raise ParameterError("margin must be positive and keep the support away from 0")
        if not order > 1:
            raise ParameterError("order must exceed 1")
        self.r1, self.r2 = float(r1), float(r2)
        self.margin, self.order = float(margin), float(order)
        self._p = _exponent(self.order)

    def _step(self, u):
        u = np.clip(u, 0.0, 1.0)
        out = np.where(u >= 1.0, 1.0, 0.0)
        mid = (u > 0) & (u < 1)
        um = u[mid]
        out[mid] = expit((1.0 - um) ** (-self._p) - um ** (-self._p))
        return out

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        lo = self._step((r - (self.r1 - self.margin)) / self.margin)
        hi = self._step(((self.r2 + self.margin) - r) / self.margin)
        return np.minimum(lo, hi)

    def support(self):
        return self.r1 - self.margin, self.r2 + self.margin

    def scaled(self, factor):
        return PlateauProfile(self.r1 * factor, self.r2 * factor, self.margin, self.order)

    def to_dict(self):
        return {"type": "plateau", "r1": self.r1, "r2": self.r2, "margin": self.margin,
                "order": self.order}


class AngularTable:
    """Values of a function on the unit circle at ``n`` equally spaced angles
    (2D) or at the two directions ``+1, -1`` (1D).

    In 2D the table is interpolated by a periodic cubic spline in the angle.
    """

    def __init__(self, dim, values):
        self.dim = int(dim)
        self.values = np.asarray(values, dtype=float)
        if self.dim == 1 and self.values.shape != (2,):
            raise ParameterError("1D angular table holds exactly two values")
        if self.dim == 2:
            n = self.values.size
            if n < 4:
                raise ParameterError("2D angular table needs at least four angles")
            nodes = 2 * math.pi * np.arange(n + 1) / n
            self._spline = CubicSpline(nodes, np.append(self.values, self.values[0]),
                                       bc_type="periodic")

    @staticmethod
    def directions(dim, n=2048):
        if dim == 1:
            return np.array([[1.0], [-1.0]])
        theta = 2 * math.pi * np.arange(n) / n
        return np.stack([np.cos(theta), np.sin(theta)], axis=-1)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        if self.dim == 1:
            return np.where(xi[..., 0] >= 0, self.values[0], self.values[1])
        theta = np.mod(np.arctan2(xi[..., 1], xi[..., 0]), 2 * math.pi)
        return self._spline(theta)

    def to_dict(self):
        return {"type": "angular_table", "dim": self.dim, "values": [float(v) for v in self.values]}


class Reconstructed:
    """``xi -> eta(|xi|) psi^(xi) / g(xi/|xi|)``, zero at the origin."""

    def __init__(self, psi_profile, eta: PlateauProfile, g: AngularTable):
        self.psi = psi_profile
        self.eta = eta
        self.g = g
        self.dim = psi_profile.dim

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        r = np.sqrt(np.sum(xi ** 2, axis=-1))
        e = self.eta(r)
        out = np.zeros(r.shape, dtype=np.complex128)
        live = e > 0
        if np.any(live):
            pts = xi[live]
            out[live] = e[live] * self.psi(pts) / self.g(pts)
        return out

    def radial_extent(self):
        lo, hi = self.eta.support()
        plo, phi = self.psi.radial_extent()
        return max(lo, plo), min(hi, phi)

    def to_dict(self):
        psi = self.psi.to_dict()
        if psi is None:
            return None
        return {"type": "reconstructed", "psi": psi, "eta": self.eta.to_dict(),
                "g": self.g.to_dict()}


class Conjugated:
    """Spectrum of the complex-conjugate function: ``xi -> conj(inner(-xi))``."""

    def __init__(self, inner):
        self.inner = inner
        self.dim = inner.dim

    def __call__(self, xi):
        return np.conj(self.inner(-np.asarray(xi, dtype=float)))

    def radial_extent(self):
        return self.inner.radial_extent()

    def to_dict(self):
        inner = self.inner.to_dict()
        return None if inner is None else {"type": "conjugated", "inner": inner}


class Scaled:
    def __init__(self, inner, factor):
        self.inner = inner
        self.factor = complex(factor)
        self.dim = inner.dim

    def __call__(self, xi):
        return self.factor * self.inner(xi)

    def radial_extent(self):
        return self.inner.radial_extent()

    def to_dict(self):
        inner = self.inner.to_dict()
        if inner is None:
            return None
        return {"type": "scaled", "inner": inner, "factor": [self.factor.real, self.factor.imag]}


def profile_from_dict(d):
    kind = d["type"]
    if kind == "gevrey_bump":
        return GevreyBump(d["order"], d["r0"], d["r1"], d.get("amplitude", 1.0))
    if kind == "ball_bump":
        return BallBump(d["order"], d["center"], d["radius"], d.get("amplitude", 1.0))
    if kind == "radial_bump":
        return RadialBump(profile_from_dict(d["bump"]), d["dim"])
    if kind == "bump_sum":
        return BumpSum(profile_from_dict(t) for t in d["terms"])
    if kind == "plateau":
        return PlateauProfile(d["r1"], d["r2"], d["margin"], d.get("order", 2.0))
    if kind == "angular_table":
        return AngularTable(d["dim"], d["values"])
    if kind == "reconstructed":
        return Reconstructed(profile_from_dict(d["psi"]), profile_from_dict(d["eta"]),
                             profile_from_dict(d["g"]))
    if kind == "conjugated":
        return Conjugated(profile_from_dict(d["inner"]))
    if kind == "scaled":
        re, im = d["factor"]
        return Scaled(profile_from_dict(d["inner"]), complex(re, im))
    raise ParameterError(f"unknown profile type {kind!r}")


class FunctionProfile:
    """Wrap an arbitrary callable spectrum.

    Not serialisable as construction parameters; wavelets built on it are
    saved with their sampled spectrum only.
    """

    def __init__(self, func, dim, extent=None):
        self.func = func
        self.dim = int(dim)
        self.extent = None if extent is None else (float(extent[0]), float(extent[1]))

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return np.asarray(self.func(xi), dtype=np.complex128).reshape(xi.shape[:-1])

    def radial_extent(self):
        return self.extent

    def to_dict(self):
        return None
