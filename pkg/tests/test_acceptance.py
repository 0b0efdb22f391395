"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines go straight to the
terminal) or as a script, ``python tests/test_acceptance.py``.
"""

import math
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gswavelet._direct import UnderresolvedScaleWarning  # noqa: E402
from gswavelet.calderon import desingularized_pairing, grid_pairing, reconstruct  # noqa: E402
from gswavelet.grid_io import (HalfSpaceField, SampledSignal, ScaleGrid, SignalGrid,  # noqa: E402
                               forward_fft, inverse_fft, l2_norm_squared, spectral_l2_norm_squared)
from gswavelet.profiles import BallBump  # noqa: E402
from gswavelet.reconstruction import (admissibility_constant,  # noqa: E402
                                      build_reconstruction_wavelet)
from gswavelet.seminorms import decay_fit, halfspace_sweep  # noqa: E402
from gswavelet.synthesis import synthesis_direct, synthesis_fourier  # noqa: E402
from gswavelet.transform import TransformRequest, cwt_direct, cwt_fourier  # noqa: E402
from gswavelet.wavelet_design import (GevreyIndices, check_vanishing_moments,  # noqa: E402
                                      design_directional_wavelet, wavelet_from_profile)

from _support import bump_signal, seminorm_suite, separable  # noqa: E402

IDX = GevreyIndices(0.5, 2.0)
BAND = ScaleGrid(1 / 16, 16.0, 64)


def _reference():
    g = SignalGrid(1, 1024, 32.0)
    psi = design_directional_wavelet(1, IDX, g)
    return g, psi, build_reconstruction_wavelet(psi), bump_signal(g)


def crit_pair_constant():
    t0 = time.perf_counter()
    _, _, pair1, _ = _reference()
    err1 = max(abs(c - 1) for c in pair1.per_direction)
    g2 = SignalGrid(2, 64, 16.0)
    pair2 = build_reconstruction_wavelet(design_directional_wavelet(2, IDX, g2))
    theta = 2 * math.pi * (np.arange(256) + 0.37) / 256
    dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    rep = admissibility_constant(pair2.psi, pair2.phi, directions=dirs)
    err2 = float(np.max(np.abs(rep.per_direction - 1)))
    dt = time.perf_counter() - t0
    ok = err1 <= 1e-6 and err2 <= 1e-5 and dt < 5
    return ok, f"1D |c-1|={err1:.2e} (<=1e-6), 2D max|c-1|={err2:.2e} (<=1e-5)", dt


def crit_calderon():
    t0 = time.perf_counter()
    _, _, pair, f = _reference()
    errs = [reconstruct(f, pair, ScaleGrid(1 / 16, 16.0, k))[1].rel_l2_error
            for k in (16, 32, 64)]
    dt = time.perf_counter() - t0
    ok = errs[2] <= 1e-3 and errs[0] > errs[1] > errs[2] and dt < 10
    return ok, "rel L2 K=16,32,64: " + ", ".join(f"{e:.2e}" for e in errs) + " (<=1e-3)", dt


def crit_desingularization():
    t0 = time.perf_counter()
    g, _, pair, f = _reference()
    phi = SampledSignal(g, np.exp(-(g.axis() - 1) ** 2 / 2))
    lhs = desingularized_pairing(f, phi, pair, BAND)
    rhs = grid_pairing(f, phi)
    err = abs(lhs - rhs) / abs(rhs)
    return err <= 1e-4, f"relative pairing error {err:.2e} (<=1e-4)", time.perf_counter() - t0


def crit_oracles():
    t0 = time.perf_counter()
    g, psi, pair, f = _reference()
    fld = cwt_fourier(TransformRequest(f, psi, BAND))
    ks, js = np.arange(0, 64, 8) + 3, np.arange(0, 1024, 128) + 17
    pts = [(g.axis()[j], BAND.values[k]) for k in ks for j in js]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnderresolvedScaleWarning)
        direct = cwt_direct(f, psi, pts)
    ref = np.array([fld.values[k, j] for k in ks for j in js])
    e1 = np.max(np.abs(direct - ref)) / np.max(np.abs(ref))
    out = synthesis_fourier(fld, pair.phi).values
    sel = np.arange(8, 1024, 64)
    syn = synthesis_direct(fld, pair.phi, g.axis()[sel])
    e2 = np.max(np.abs(syn - out[sel])) / np.max(np.abs(out))
    ok = e1 <= 1e-6 and e2 <= 1e-6
    return ok, f"analysis 8x8 {e1:.2e}, synthesis 16 pts {e2:.2e} (<=1e-6)", \
        time.perf_counter() - t0


def _smooth(rng, x, count):
    v = np.zeros(x.shape, dtype=np.complex128)
    for _ in range(count):
        c, s = rng.uniform(-8, 8), rng.uniform(0.7, 2.0)
        v += (rng.normal() + 1j * rng.normal()) * np.exp(-(x - c) ** 2 / (2 * s ** 2))
    return v


def crit_adjoint():
    t0 = time.perf_counter()
    g = SignalGrid(1, 1024, 32.0)
    psi = wavelet_from_profile(BallBump(2, (0.5,), 0.5), g, IDX)
    ag = ScaleGrid(1 / 8, 8.0, 33)
    la, x = np.log(ag.values), g.axis()
    errs = []
    for seed in range(3):
        rng = np.random.default_rng(seed)
        vals = sum(np.outer(np.exp(-(la - rng.uniform(-1.5, 1.5)) ** 2), _smooth(rng, x, 2))
                   for _ in range(4))
        phi = HalfSpaceField(g, ag, vals)
        f = SampledSignal(g, _smooth(rng, x, 6))
        wf = cwt_fourier(TransformRequest(f, psi, ag)).values
        lhs = np.dot(ag.weights(), np.sum(phi.values * wf, axis=1)) * g.spacing
        rhs = np.sum(synthesis_fourier(phi, psi.conjugate()).values * f.values) * g.spacing
        errs.append(abs(lhs - rhs) / abs(rhs))
    return max(errs) <= 1e-8, "relative gaps " + ", ".join(f"{e:.1e}" for e in errs) + \
        " (<=1e-8)", time.perf_counter() - t0


def crit_seminorms():
    t0 = time.perf_counter()
    bad = []
    for name, fld, idx in seminorm_suite():
        p = halfspace_sweep(fld, idx, "half_p").finite
        q = halfspace_sweep(fld, idx, "half_q").finite
        if p != q:
            bad.append(name)
        if name == "separable":
            p5 = halfspace_sweep(fld, idx, "half_p", (0.5,))
            q5 = halfspace_sweep(fld, idx, "half_q", (0.5,))
            sep = p5.finite and q5.finite and max(p5.cap_change[0], q5.cap_change[0]) <= 0.01
    ok = not bad and sep
    detail = "p/q verdicts agree on 6 fields" if not bad else f"disagree on {bad}"
    return ok, detail + f"; separable finite at h=0.5: {sep}", time.perf_counter() - t0


def crit_decay():
    t0 = time.perf_counter()
    g = SignalGrid(1, 2048, 128.0)
    w = design_directional_wavelet(1, GevreyIndices(0.25, 2.0), g)
    fld = cwt_fourier(TransformRequest(bump_signal(g, 0.0, 2.0), w, ScaleGrid(1 / 16, 4, 64)))
    fit = decay_fit(fld, 1.25, 3.0, 0.25, 2.0)
    decades = min(math.log10(hi / lo) for lo, hi in fit.bands.values())
    gl = SignalGrid(1, 1024, 64.0)
    a = BAND.values
    sep = separable(gl, BAND, np.exp(-a - 1 / a), np.exp(-gl.axis() ** 2 / 2))
    rate = decay_fit(sep, 1.25, 3.0, 0.25, 2.0).rates["h_a_inf"]
    r2 = min(fit.r_squared.values())
    ok = (r2 >= 0.95 and decades >= 1 - 1e-9 and all(v > 0 for v in fit.rates.values())
          and abs(rate - 1) <= 0.1)
    rates = ", ".join(f"{v:.3g}" for v in fit.rates.values())
    return ok, f"min R^2={r2:.3f}, rates ({rates}), e^-a rate {rate:.3f}", \
        time.perf_counter() - t0


def crit_invariance():
    t0 = time.perf_counter()
    g, psi, _, f = _reference()
    psi2 = design_directional_wavelet(2, IDX, SignalGrid(2, 64, 16.0))
    moments = all(check_vanishing_moments(w, 10, 1e-8).verdict for w in (psi, psi2))
    a = cwt_fourier(TransformRequest(f, psi, BAND)).values
    b = cwt_fourier(TransformRequest(SampledSignal(g, np.roll(f.values, 37)), psi, BAND)).values
    trans = np.max(np.abs(np.roll(a, 37, axis=1) - b))
    rng = np.random.default_rng(0)
    v = SampledSignal(g, rng.normal(size=g.n) + 1j * rng.normal(size=g.n))
    spec = forward_fft(v)
    pars = abs(l2_norm_squared(v) - spectral_l2_norm_squared(spec)) / l2_norm_squared(v)
    rt = np.max(np.abs(inverse_fft(spec).values - v.values)) / np.max(np.abs(v.values))
    ok = moments and trans <= 1e-10 and pars <= 1e-10 and rt <= 1e-12
    return ok, (f"moments {moments}, translation {trans:.1e}, Parseval {pars:.1e}, "
                f"round trip {rt:.1e}"), time.perf_counter() - t0


CRITERIA = [
    ("1 reconstruction constant", crit_pair_constant),
    ("2 Calderon identity", crit_calderon),
    ("3 desingularization", crit_desingularization),
    ("4 oracle equivalence", crit_oracles),
    ("5 adjointness", crit_adjoint),
    ("6 seminorm equivalence", crit_seminorms),
    ("7 decay exponents", crit_decay),
    ("8 moments and invariances", crit_invariance),
]


def _line(name, fn):
    ok, detail, dt = fn()
    return ok, f"{'PASS' if ok else 'FAIL'}  {name:28s} {detail} [{dt:.2f} s]"


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, line = _line(name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(name, fn) for name, fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
