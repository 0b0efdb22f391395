"""Reconstruction wavelets and the admissibility constant.

Given a non-degenerate wavelet psi and a radial plateau eta, the companion

    phi^(xi) = eta(|xi|) psi^(xi) / g(xi/|xi|),
    g(omega) = int_0^inf eta(r) |psi^(r omega)|^2 dr/r,

satisfies ``c_{psi,phi}(omega) = 1`` for every direction.  All radial
integrals use the trapezoid rule in ``log r``, where ``dr/r`` is uniform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, DegenerateWaveletError, NotReconstructionPairError, \
    ParameterError, TrivialWaveletError
from .profiles import AngularTable, PlateauProfile, Reconstructed
from .wavelet_design import WaveletSpec, sample_directions, wavelet_from_profile

N_RADIAL = 2048
N_ANGLES = 2048


def _log_nodes(lo, hi, n):
    if lo <= 0:
        lo = hi * 1e-12
    u = np.linspace(math.log(lo), math.log(hi), n)
    return np.exp(u), u[1] - u[0]


def _log_trapezoid(values, step):
    return step * (np.sum(values, axis=-1) - 0.5 * (values[..., 0] + values[..., -1]))


def _ray_integral(fn, dirs, lo, hi, n_nodes):
    r, step = _log_nodes(0.5 * lo, 2.0 * hi, n_nodes)
    pts = r[None, :, None] * dirs[:, None, :]
    return _log_trapezoid(fn(pts, r), step)


def _g_values(psi: WaveletSpec, eta: PlateauProfile, dirs, n_nodes):
    lo, hi = eta.support()
    return _ray_integral(lambda pts, r: eta(r)[None, :] * np.abs(psi.evaluate(pts)) ** 2,
                         dirs, lo, hi, n_nodes).real


def _check_plateau(psi: WaveletSpec, eta: PlateauProfile):
    r_lo, r_hi = psi.support_radii()
    if eta.r2 <= r_lo or eta.r1 >= r_hi:
        raise ConstructionError(f"plateau [{eta.r1}, {eta.r2}] misses the spectral support "
                                f"({r_lo}, {r_hi}) of the wavelet")


def auxiliary_g(psi: WaveletSpec, eta: PlateauProfile, omega, n_nodes=N_RADIAL, tol=1e-14):
    """``g(omega) = int eta(r) |psi^(r omega)|^2 dr/r`` for a single direction."""
    _check_plateau(psi, eta)
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    if om.shape != (psi.dim,):
        raise ParameterError(f"direction must have {psi.dim} components")
    om = om / np.linalg.norm(om)
    val = float(_g_values(psi, eta, om[None, :], n_nodes)[0])
    if val <= tol * max(psi.sup_norm(), 1e-300) ** 2:
        raise DegenerateWaveletError(f"wavelet is degenerate along {tuple(om)}", tuple(om))
    return val


def default_plateau(psi: WaveletSpec) -> PlateauProfile:
    """Plateau over the middle half of the radial support of a designed wavelet."""
    if psi.profile is None:
        raise ParameterError("wavelets without a closed form need an explicit plateau")
    r_lo, r_hi = psi.support_radii()
    width = r_hi - r_lo
    return PlateauProfile(r_lo + width / 4, r_hi - width / 4, width / 8)


@dataclass(frozen=True)
class ReconstructionPair:
    psi: WaveletSpec
    phi: WaveletSpec
    c: complex
    direction_spread: float
    per_direction: tuple = ()

    def to_dict(self, embed_spectrum=False):
        return {"psi": self.psi.to_dict(embed_spectrum), "phi": self.phi.to_dict(embed_spectrum),
                "c": [self.c.real, self.c.imag], "direction_spread": self.direction_spread}

    @classmethod
    def from_dict(cls, d):
        try:
            psi = WaveletSpec.from_dict(d["psi"])
            phi = WaveletSpec.from_dict(d["phi"])
            c = complex(*d["c"])
            spread = float(d["direction_spread"])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed pair description: {exc}") from exc
        return cls(psi, phi, c, spread)


@dataclass(frozen=True)
class AdmissibilityReport:
    c: complex
    direction_spread: float
    per_direction: np.ndarray
    directions: np.ndarray


def admissibility_constant(psi: WaveletSpec, phi: WaveletSpec, n_directions=256,
                           n_nodes=N_RADIAL, tol=1e-12, directions=None) -> AdmissibilityReport:
    """Per-direction ``c(omega) = int conj(psi^(r omega)) phi^(r omega) dr/r``."""
    if psi.grid != phi.grid:
        raise ParameterError("psi and phi live on different grids")
    dirs = sample_directions(psi.dim, n_directions) if directions is None \
        else np.asarray(directions, dtype=float).reshape(-1, psi.dim)
    p_lo, p_hi = psi.support_radii()
    f_lo, f_hi = phi.support_radii()
    lo, hi = max(p_lo, f_lo), min(p_hi, f_hi)
    if not hi > lo:
        raise NotReconstructionPairError("spectral supports of psi and phi do not overlap")
    vals = _ray_integral(lambda pts, r: np.conj(psi.evaluate(pts)) * phi.evaluate(pts),
                         dirs, lo, hi, n_nodes)
    scale = psi.sup_norm() * phi.sup_norm()
    if scale == 0:
        raise TrivialWaveletError("zero spectrum")
    worst = int(np.argmin(np.abs(vals)))
    if abs(vals[worst]) <= tol * scale:
        raise NotReconstructionPairError(
            f"c(omega) vanishes along {tuple(dirs[worst])}: not a reconstruction pair")
    c = complex(np.mean(vals))
    spread = float(np.max(np.abs(vals - c)) / abs(c))
    return AdmissibilityReport(c, spread, vals, dirs)


def build_reconstruction_wavelet(psi: WaveletSpec, eta: PlateauProfile = None,
                                 n_angles=N_ANGLES, n_nodes=N_RADIAL,
                                 n_check=256) -> ReconstructionPair:
    """Construct ``phi^ = eta psi^ / g`` so that ``c_{psi,phi} = 1``."""
    if psi.sup_norm() == 0:
        raise TrivialWaveletError("spectrum is identically zero")
    eta = default_plateau(psi) if eta is None else eta
    _check_plateau(psi, eta)
    dirs = AngularTable.directions(psi.dim, n_angles)
    g = _g_values(psi, eta, dirs, n_nodes)
    bad = int(np.argmin(g))
    if g[bad] <= 1e-14 * psi.sup_norm() ** 2:
        raise DegenerateWaveletError(f"wavelet is degenerate along {tuple(dirs[bad])}",
                                     tuple(dirs[bad]))
    prof = Reconstructed(psi.as_profile(), eta, AngularTable(psi.dim, g))
    phi = wavelet_from_profile(prof, psi.grid, psi.indices, f"recon({psi.label})")
    rep = admissibility_constant(psi, phi, n_check, n_nodes)
    return ReconstructionPair(psi, phi, rep.c, rep.direction_spread, tuple(rep.per_direction))


def self_pair(psi: WaveletSpec, n_directions=256, n_nodes=N_RADIAL) -> ReconstructionPair:
    """Use ``psi`` as its own reconstruction wavelet (rotation-invariant case)."""
    rep = admissibility_constant(psi, psi, n_directions, n_nodes)
    return ReconstructionPair(psi, psi, rep.c, rep.direction_spread, tuple(rep.per_direction))
