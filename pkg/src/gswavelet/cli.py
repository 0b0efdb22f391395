"""Command-line front end: ``gsw <command> [options]``.

Every run prints one JSON document on stdout holding the resolved run
configuration and the result; diagnostics and warnings go to stderr.
Passing the echoed configuration back through ``--config`` repeats the run
bit for bit.  Exit codes: 0 success, 1 usage, 2 numerical precondition or
verdict failure, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from ._parallel import set_threads
from .calderon import reconstruct
from .errors import FormatError, GSWError, ParameterError
from .grid_io import (FrequencyGrid, HalfSpaceField, SampledSignal, SampledSpectrum, ScaleGrid,
                      SignalGrid, export_csv, inverse_fft, read_array_file, write_array_file)
from .profiles import GevreyBump, RadialBump
from .reconstruction import ReconstructionPair, build_reconstruction_wavelet, self_pair
from .seminorms import (CAPS_HI, CAPS_LO, DEFAULT_H_SWEEP, HalfSpaceIndices, decay_fit,
                        gs_sweep, halfspace_sweep)
from .synthesis import synthesis_fourier
from .transform import TransformRequest, cwt_fourier
from .wavelet_design import (GevreyIndices, WaveletSpec, check_nondegenerate,
                             check_vanishing_moments, design_directional_wavelet, radial_wavelet,
                             sample_profile)

GRID_DEFAULTS = {"dim": None, "n": 1024, "l": 32.0}
BAND_DEFAULTS = {"a_min": 1 / 16, "a_max": 16.0, "k": 64}

# defaults per command; ``None`` marks a required parameter
DEFAULTS = {
    "design": {**GRID_DEFAULTS, "kind": "directional", "rho1": 0.5, "rho2": 2.0, "r0": 0.25,
               "r1": 1.0, "moment_order": 10, "tol": 1e-8, "out": "", "pair": "",
               "self_pair": False},
    "signal": {**GRID_DEFAULTS, "kind": "bump", "lo": 0.5, "hi": 2.0, "order": 2.0,
               "seed": 0, "modes": 8, "out": None, "csv": ""},
    "transform": {"signal": None, "wavelet": None, **BAND_DEFAULTS, "derivative": [],
                  "out": None, "csv": ""},
    "synthesize": {"field": None, "wavelet": "", "pair": "", "out": None, "csv": ""},
    "verify-calderon": {"signal": None, "pair": None, **BAND_DEFAULTS, "tol": 1e-3,
                        "acknowledge": False, "out": ""},
    "seminorm": {"kind": None, "signal": "", "field": "", "rho1": None, "rho2": None,
                 "s": None, "t": None, "tau1": None, "tau2": None, "h": [], "caps_lo": [],
                 "caps_hi": []},
    "fit-decay": {"field": None, "s": None, "t": None, "rho1": None, "rho2": None},
}


@dataclass
class RunConfig:
    command: str
    params: dict
    threads: int = None
    version: str = __version__

    def to_dict(self):
        return asdict(self)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _number(text):
    """Float that also accepts fractions such as ``1/16``."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _grid_args(p):
    p.add_argument("--dim", type=int, choices=(1, 2), help="signal dimension (required)")
    p.add_argument("--n", type=int, help="samples per axis, a power of two (default 1024)")
    p.add_argument("--l", type=_number, help="half-extent L of [-L, L)^n (default 32)")


def _band_args(p):
    p.add_argument("--a-min", type=_number, help="smallest scale (default 1/16)")
    p.add_argument("--a-max", type=_number, help="largest scale (default 16)")
    p.add_argument("--k", type=int, help="number of log-spaced scales (default 64)")


def build_parser():
    parser = _Parser(prog="gsw", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gsw {__version__}")
    parser.add_argument("--threads", type=int, default=None,
                        help="FFT worker cap (falls back to GSW_THREADS)")
    parser.add_argument("--config", default=None,
                        help="JSON run configuration echoed by an earlier run")
    sub = parser.add_subparsers(dest="command", metavar="command")
    mk = lambda name, text: sub.add_parser(  # noqa: E731
        name, help=text, description=text, argument_default=argparse.SUPPRESS)

    p = mk("design", "design a wavelet and check moments and non-degeneracy")
    _grid_args(p)
    p.add_argument("--kind", choices=("directional", "radial"))
    p.add_argument("--rho1", type=_number)
    p.add_argument("--rho2", type=_number)
    p.add_argument("--r0", type=_number, help="inner radius of a radial wavelet")
    p.add_argument("--r1", type=_number, help="outer radius of a radial wavelet")
    p.add_argument("--moment-order", type=int)
    p.add_argument("--tol", type=_number)
    p.add_argument("--out", help="wavelet JSON file")
    p.add_argument("--pair", help="also build the reconstruction pair and write it here")
    p.add_argument("--self-pair", action="store_true",
                   help="pair the wavelet with itself instead (rotation-invariant wavelets)")

    p = mk("signal", "sample a test signal")
    _grid_args(p)
    p.add_argument("--kind", choices=("bump", "gaussian", "random"))
    p.add_argument("--lo", type=_number, help="inner spectral radius of the bump")
    p.add_argument("--hi", type=_number, help="outer spectral radius of the bump")
    p.add_argument("--order", type=_number, help="Gevrey order of the bump")
    p.add_argument("--seed", type=int)
    p.add_argument("--modes", type=int, help="random translates in the random signal")
    p.add_argument("--out", help="signal file (required)")
    p.add_argument("--csv")

    p = mk("transform", "continuous wavelet transform of a signal")
    p.add_argument("--signal")
    p.add_argument("--wavelet", help="wavelet JSON file")
    _band_args(p)
    p.add_argument("--derivative", type=int, nargs="+", help="b-derivative multi-index")
    p.add_argument("--out")
    p.add_argument("--csv")

    p = mk("synthesize", "wavelet synthesis of a half-space field")
    p.add_argument("--field")
    p.add_argument("--wavelet", help="synthesis wavelet JSON file")
    p.add_argument("--pair", help="pair JSON: synthesise with phi and divide by c")
    p.add_argument("--out")
    p.add_argument("--csv")

    p = mk("verify-calderon", "reconstruct a signal and report the error")
    p.add_argument("--signal")
    p.add_argument("--pair")
    _band_args(p)
    p.add_argument("--tol", type=_number, help="exit 2 when the relative L2 error exceeds this")
    p.add_argument("--acknowledge", action="store_true",
                   help="accept signals outside the Lizorkin class")
    p.add_argument("--out", help="reconstructed signal file")

    p = mk("seminorm", "Gelfand-Shilov or half-space seminorm sweep")
    p.add_argument("--kind", choices=("gs", "half_p", "half_q"))
    p.add_argument("--signal", help="signal file (kind gs)")
    p.add_argument("--field", help="field file (kinds half_p, half_q)")
    for name in ("rho1", "rho2", "s", "t", "tau1", "tau2"):
        p.add_argument(f"--{name}", type=_number)
    p.add_argument("--h", type=_number, nargs="+", help="h sweep")
    p.add_argument("--caps-lo", type=int, nargs="+")
    p.add_argument("--caps-hi", type=int, nargs="+")

    p = mk("fit-decay", "fit the decay exponents of a half-space field")
    p.add_argument("--field")
    for name in ("s", "t", "rho1", "rho2"):
        p.add_argument(f"--{name}", type=_number)
    return parser


def resolve(ns, parser):
    """Merge command defaults, a config file and explicit flags into a RunConfig."""
    given = {k: v for k, v in vars(ns).items() if k not in ("command", "threads", "config")}
    command, threads, base = ns.command, ns.threads, {}
    if ns.config:
        try:
            cfg = json.loads(Path(ns.config).read_text())
        except OSError as exc:
            raise FormatError(f"cannot read config {ns.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise FormatError(f"config {ns.config} is not JSON: {exc}") from exc
        if isinstance(cfg, dict) and isinstance(cfg.get("config"), dict):
            cfg = cfg["config"]
        if not isinstance(cfg, dict) or "command" not in cfg:
            raise FormatError(f"config {ns.config} has no command")
        if command is not None and command != cfg["command"]:
            parser.error(f"config is for {cfg['command']!r}, not {command!r}")
        command = cfg["command"]
        base = dict(cfg.get("params") or {})
        threads = threads if threads is not None else cfg.get("threads")
    if command is None:
        parser.error("a command is required")
    if command not in DEFAULTS:
        parser.error(f"unknown command {command!r}")
    unknown = set(base) - set(DEFAULTS[command])
    if unknown:
        parser.error(f"unknown parameters in config: {sorted(unknown)}")
    params = {**DEFAULTS[command], **base, **given}
    if command == "seminorm":
        need = {"gs": ("rho1", "rho2"), "half_p": ("s", "t", "tau1", "tau2"),
                "half_q": ("s", "t", "tau1", "tau2")}.get(params["kind"], ())
        missing = [n for n in need if params[n] is None]
        if missing:
            parser.error(f"seminorm --kind {params['kind']} needs "
                         + ", ".join("--" + m for m in missing))
        params = {k: v for k, v in params.items() if v is not None or k in need}
    missing = [k for k, v in params.items() if v is None]
    if missing:
        parser.error("the following arguments are required: "
                     + ", ".join("--" + m.replace("_", "-") for m in missing))
    return RunConfig(command, params, threads)


# -- helpers ----------------------------------------------------------------

def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not JSON: {exc}") from exc


def _write_json(path, obj):
    try:
        Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True))
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc}") from exc


def _load(path, cls):
    obj = read_array_file(path)
    if cls is SampledSignal and (isinstance(obj, HalfSpaceField) or obj.kind != "signal"):
        raise FormatError(f"{path} does not hold a space-domain signal")
    if cls is HalfSpaceField and not isinstance(obj, HalfSpaceField):
        raise FormatError(f"{path} does not hold a half-space field")
    return obj


def _load_pair(path):
    return ReconstructionPair.from_dict(_read_json(path))


def _band(p):
    return ScaleGrid(p["a_min"], p["a_max"], p["k"])


def _grid(p):
    return SignalGrid(p["dim"], p["n"], p["l"])


def _summary(obj):
    vals = obj.values
    return {"shape": list(vals.shape), "sup": float(np.max(np.abs(vals), initial=0.0)),
            "l2": float(np.sqrt(np.sum(np.abs(vals) ** 2)))}


def _write_outputs(obj, p):
    write_array_file(p["out"], obj)
    if p.get("csv"):
        try:
            export_csv(obj, p["csv"])
        except OSError as exc:
            raise FormatError(f"cannot write {p['csv']}: {exc}") from exc


# -- commands ---------------------------------------------------------------

def cmd_design(p):
    grid = _grid(p)
    idx = GevreyIndices(p["rho1"], p["rho2"])
    if p["kind"] == "directional":
        w = design_directional_wavelet(p["dim"], idx, grid)
    else:
        w = radial_wavelet(p["dim"], idx, grid, p["r0"], p["r1"])
    moments = check_vanishing_moments(w, p["moment_order"], p["tol"])
    nondeg = check_nondegenerate(w, tol=p["tol"])
    out = {"wavelet": w.label, "support_radii": list(w.support_radii()),
           "moments": moments.to_dict(), "nondegeneracy": nondeg.to_dict()}
    if p["out"]:
        _write_json(p["out"], w.to_dict())
    if p["pair"]:
        pair = self_pair(w) if p["self_pair"] else build_reconstruction_wavelet(w)
        _write_json(p["pair"], pair.to_dict())
        out["pair"] = {"c": [pair.c.real, pair.c.imag],
                       "direction_spread": pair.direction_spread}
    return out, 0


def cmd_signal(p):
    grid = _grid(p)
    if p["kind"] == "gaussian":
        sig = SampledSignal(grid, np.exp(-0.5 * grid.radius() ** 2))
    else:
        prof = RadialBump(GevreyBump(p["order"], p["lo"], p["hi"]), p["dim"])
        spec = sample_profile(prof, grid).values
        if p["kind"] == "random":
            # random translates and weights of the bump keep the spectral support
            rng = np.random.default_rng(p["seed"])
            xi = FrequencyGrid(grid).mesh()
            phase = np.zeros(grid.shape, dtype=np.complex128)
            for _ in range(p["modes"]):
                shift = rng.uniform(-0.25, 0.25, grid.dim) * grid.half_extent
                phase += rng.normal() * np.exp(-1j * (xi @ shift))
            spec = spec * phase
        vals = inverse_fft(SampledSpectrum(grid, spec)).values
        if p["kind"] == "bump" or np.allclose(vals.imag, 0, atol=1e-14 * np.abs(vals).max()):
            vals = vals.real
        sig = SampledSignal(grid, vals)
    _write_outputs(sig, p)
    return {"signal": _summary(sig), "grid": grid.to_dict()}, 0


def cmd_transform(p):
    f = _load(p["signal"], SampledSignal)
    w = WaveletSpec.from_dict(_read_json(p["wavelet"]))
    beta = tuple(p["derivative"]) or None
    fld = cwt_fourier(TransformRequest(f, w, _band(p), beta))
    _write_outputs(fld, p)
    return {"field": _summary(fld), "grid": f.grid.to_dict(), "scale_grid": fld.agrid.to_dict()}, 0


def cmd_synthesize(p):
    fld = _load(p["field"], HalfSpaceField)
    if bool(p["wavelet"]) == bool(p["pair"]):
        raise ParameterError("give exactly one of --wavelet and --pair")
    if p["pair"]:
        pair = _load_pair(p["pair"])
        sig = synthesis_fourier(fld, pair.phi) * (1.0 / pair.c)
        extra = {"c": [pair.c.real, pair.c.imag]}
    else:
        sig = synthesis_fourier(fld, WaveletSpec.from_dict(_read_json(p["wavelet"])))
        extra = {}
    _write_outputs(sig, p)
    return {"signal": _summary(sig), **extra}, 0


def cmd_verify_calderon(p):
    f = _load(p["signal"], SampledSignal)
    pair = _load_pair(p["pair"])
    rec, report = reconstruct(f, pair, _band(p), p["acknowledge"])
    if p["out"]:
        write_array_file(p["out"], rec)
    ok = report.rel_l2_error <= p["tol"]
    return {"report": report.to_dict(), "tol": p["tol"], "passed": ok}, 0 if ok else 2


def cmd_seminorm(p):
    kind = p["kind"]
    h = tuple(p["h"])
    caps_lo, caps_hi = tuple(p["caps_lo"]), tuple(p["caps_hi"])
    if kind == "gs":
        f = _load(p["signal"], SampledSignal) if p["signal"] else None
        if f is None:
            raise ParameterError("seminorm --kind gs needs --signal")
        rep = gs_sweep(f, p["rho1"], p["rho2"], h or (0.5, 1.0, 2.0),
                       caps_lo or CAPS_LO[:2], caps_hi or CAPS_HI[:2])
    else:
        if not p["field"]:
            raise ParameterError(f"seminorm --kind {kind} needs --field")
        fld = _load(p["field"], HalfSpaceField)
        idx = HalfSpaceIndices(p["s"], p["t"], p["tau1"], p["tau2"])
        rep = halfspace_sweep(fld, idx, kind, h or DEFAULT_H_SWEEP,
                              caps_lo or CAPS_LO, caps_hi or CAPS_HI)
    return {"seminorm": rep.to_dict()}, 0


def cmd_fit_decay(p):
    fld = _load(p["field"], HalfSpaceField)
    fit = decay_fit(fld, p["s"], p["t"], p["rho1"], p["rho2"])
    return {"fit": fit.to_dict()}, 0


COMMANDS = {"design": cmd_design, "signal": cmd_signal, "transform": cmd_transform,
            "synthesize": cmd_synthesize, "verify-calderon": cmd_verify_calderon,
            "seminorm": cmd_seminorm, "fit-decay": cmd_fit_decay}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve(ns, parser)
        if cfg.threads is not None:
            set_threads(cfg.threads)
        result, code = COMMANDS[cfg.command](cfg.params)
    except GSWError as exc:
        print(f"gsw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"gsw: invalid parameter: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"gsw: I/O error: {exc}", file=sys.stderr)
        return 3
    doc = {"config": cfg.to_dict(), "result": result, "exit_code": code}
    print(json.dumps(_jsonable(doc), indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
