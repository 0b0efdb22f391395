"""Grids on R^n and the upper half-space, sampled containers and file formats.

Spatial grids are centred at the origin and periodic: node ``j`` along an
axis sits at ``x_j = -L + j*dx`` with ``dx = 2L/N``.  Spectra live on the
lattice ``xi_m = pi*m/L`` for ``m`` in ``[-N/2, N/2)`` and are stored in
centred order (index ``m + N/2``), matching the convention

    f^(xi) = int f(x) exp(-i x.xi) dx.
"""

from __future__ import annotations

import csv
import json
import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.fft as sfft

from ._parallel import workers
from .errors import FormatError, GridError, ParameterError

MAGIC = b"GSWHSF01"

__all__ = [
    "SignalGrid",
    "ScaleGrid",
    "FrequencyGrid",
    "SampledSignal",
    "SampledSpectrum",
    "HalfSpaceField",
    "fourier_grid",
    "forward_fft",
    "inverse_fft",
    "l2_norm_squared",
    "spectral_l2_norm_squared",
    "to_bytes",
    "from_bytes",
    "write_array_file",
    "read_array_file",
    "export_csv",
]


def _frozen(values):
    arr = np.array(values, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SignalGrid:
    dim: int
    n: int
    half_extent: float

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise GridError(f"dim must be 1 or 2, got {self.dim}")
        n = int(self.n)
        if n < 16 or n & (n - 1):
            raise GridError(f"points per axis must be a power of two >= 16, got {self.n}")
        if not (self.half_extent > 0 and math.isfinite(self.half_extent)):
            raise GridError(f"half extent must be positive, got {self.half_extent}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "half_extent", float(self.half_extent))

    @property
    def spacing(self) -> float:
        # exact: n is a power of two
        return 2.0 * self.half_extent / self.n

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    def axis(self) -> np.ndarray:
        return -self.half_extent + self.spacing * np.arange(self.n)

    def mesh(self) -> np.ndarray:
        """Node coordinates, shape ``shape + (dim,)``."""
        ax = self.axis()
        return np.stack(np.meshgrid(*([ax] * self.dim), indexing="ij"), axis=-1)

    def radius(self) -> np.ndarray:
        return np.sqrt(np.sum(self.mesh() ** 2, axis=-1))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "N": self.n, "L": self.half_extent}

    @classmethod
    def from_dict(cls, d) -> "SignalGrid":
        return cls(int(d["dim"]), int(d["N"]), float(d["L"]))


@dataclass(frozen=True)
class ScaleGrid:
    a_min: float
    a_max: float
    count: int

    def __post_init__(self):
        if not (0 < self.a_min < self.a_max) or not math.isfinite(self.a_max):
            raise GridError(f"need 0 < a_min < a_max, got [{self.a_min}, {self.a_max}]")
        if int(self.count) < 2:
            raise GridError("a scale grid needs at least two nodes")
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "a_min", float(self.a_min))
        object.__setattr__(self, "a_max", float(self.a_max))

    @property
    def values(self) -> np.ndarray:
        k = np.arange(self.count)
        a = self.a_min * (self.a_max / self.a_min) ** (k / (self.count - 1))
        a[0], a[-1] = self.a_min, self.a_max
        return a

    @property
    def log_step(self) -> float:
        return math.log(self.a_max / self.a_min) / (self.count - 1)

    def weights(self) -> np.ndarray:
        """Composite trapezoid weights for the measure da/a."""
        w = np.full(self.count, self.log_step)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def to_dict(self) -> dict:
        return {"a_min": self.a_min, "a_max": self.a_max, "K": self.count}

    @classmethod
    def from_dict(cls, d) -> "ScaleGrid":
        return cls(float(d["a_min"]), float(d["a_max"]), int(d["K"]))


@dataclass(frozen=True)
class FrequencyGrid:
    grid: SignalGrid

    @property
    def spacing(self) -> float:
        return math.pi / self.grid.half_extent

    @property
    def nyquist(self) -> float:
        """Magnitude of the most negative lattice frequency, pi*N/(2L)."""
        return self.spacing * (self.grid.n // 2)

    @property
    def axes(self) -> tuple:
        n = self.grid.n
        ax = self.spacing * np.arange(-(n // 2), n // 2)
        return (ax,) * self.grid.dim

    def mesh(self) -> np.ndarray:
        return np.stack(np.meshgrid(*self.axes, indexing="ij"), axis=-1)

    def radius(self) -> np.ndarray:
        return np.sqrt(np.sum(self.mesh() ** 2, axis=-1))


def fourier_grid(sgrid: SignalGrid) -> FrequencyGrid:
    return FrequencyGrid(sgrid)


@dataclass(frozen=True)
class SampledSignal:
    grid: SignalGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.size != self.grid.n ** self.grid.dim:
            raise GridError(f"expected {self.grid.n ** self.grid.dim} samples, got {v.size}")
        v = _frozen(v.reshape(self.grid.shape))
        if not np.all(np.isfinite(v)):
            raise ParameterError("signal samples must be finite")
        object.__setattr__(self, "values", v)

    kind = "signal"

    def __mul__(self, other):
        return type(self)(self.grid, self.values * other)

    __rmul__ = __mul__


@dataclass(frozen=True)
class SampledSpectrum(SampledSignal):
    kind = "spectrum"

    @property
    def frequencies(self) -> FrequencyGrid:
        return FrequencyGrid(self.grid)


@dataclass(frozen=True)
class HalfSpaceField:
    """Samples Phi(b_j, a_k), scale-major: ``values[k]`` is one scale slab.

    ``domain`` is ``"space"`` for b-samples or ``"frequency"`` after a
    partial Fourier transform in b.
    """

    sgrid: SignalGrid
    agrid: ScaleGrid
    values: np.ndarray
    domain: str = "space"

    def __post_init__(self):
        v = np.asarray(self.values)
        shape = (self.agrid.count,) + self.sgrid.shape
        if v.size != math.prod(shape):
            raise GridError(f"expected {math.prod(shape)} samples, got {v.size}")
        v = _frozen(v.reshape(shape))
        if not np.all(np.isfinite(v)):
            raise ParameterError("field samples must be finite")
        if self.domain not in ("space", "frequency"):
            raise ParameterError(f"unknown field domain {self.domain!r}")
        object.__setattr__(self, "values", v)

    kind = "field"

    def __mul__(self, other):
        return HalfSpaceField(self.sgrid, self.agrid, self.values * other, self.domain)

    __rmul__ = __mul__

    def __add__(self, other):
        if other.sgrid != self.sgrid or other.agrid != self.agrid or other.domain != self.domain:
            raise GridError("fields live on different grids")
        return HalfSpaceField(self.sgrid, self.agrid, self.values + other.values, self.domain)


# -- discrete Fourier transform with the continuous normalisation -----------

def _axes(dim):
    return tuple(range(-dim, 0))


def _fft(values, dim, inverse=False):
    ax = _axes(dim)
    shifted = sfft.ifftshift(values, axes=ax)
    if inverse:
        out = sfft.ifftn(shifted, axes=ax, workers=workers())
    else:
        out = sfft.fftn(shifted, axes=ax, workers=workers())
    return sfft.fftshift(out, axes=ax)


def forward_fft(sig: SampledSignal) -> SampledSpectrum:
    g = sig.grid
    return SampledSpectrum(g, _fft(sig.values, g.dim) * g.cell_volume)


def inverse_fft(spec: SampledSpectrum) -> SampledSignal:
    g = spec.grid
    return SampledSignal(g, _fft(spec.values, g.dim, inverse=True) / g.cell_volume)


def fft_slabs(values, sgrid: SignalGrid, inverse=False) -> np.ndarray:
    """Per-slab transform of a stack shaped ``(K,) + sgrid.shape``."""
    if inverse:
        return _fft(values, sgrid.dim, inverse=True) / sgrid.cell_volume
    return _fft(values, sgrid.dim) * sgrid.cell_volume


def l2_norm_squared(sig: SampledSignal) -> float:
    return float(np.sum(np.abs(sig.values) ** 2) * sig.grid.cell_volume)


def spectral_l2_norm_squared(spec: SampledSpectrum) -> float:
    g = spec.grid
    dxi = math.pi / g.half_extent
    return float(np.sum(np.abs(spec.values) ** 2) * dxi ** g.dim / (2 * math.pi) ** g.dim)


# -- binary field format ----------------------------------------------------

def _header(obj) -> dict:
    if isinstance(obj, HalfSpaceField):
        head = {"kind": "field", "domain": obj.domain}
        head.update(obj.sgrid.to_dict())
        head.update(obj.agrid.to_dict())
        return head
    if isinstance(obj, SampledSignal):
        head = {"kind": obj.kind}
        head.update(obj.grid.to_dict())
        head.update({"a_min": None, "a_max": None, "K": None})
        return head
    raise FormatError(f"cannot serialise {type(obj).__name__}")


def to_bytes(obj) -> bytes:
    head = json.dumps(_header(obj), sort_keys=True).encode("utf-8")
    payload = np.ascontiguousarray(obj.values, dtype="<c16").tobytes(order="C")
    return MAGIC + struct.pack("<I", len(head)) + head + payload


def from_bytes(blob: bytes):
    if blob[:8] != MAGIC:
        raise FormatError("bad magic: not a GSW field file")
    try:
        (hlen,) = struct.unpack("<I", blob[8:12])
        head = json.loads(blob[12:12 + hlen].decode("utf-8"))
        sgrid = SignalGrid.from_dict(head)
    except (struct.error, ValueError, KeyError) as exc:
        raise FormatError(f"corrupt header: {exc}") from exc
    values = np.frombuffer(blob[12 + hlen:], dtype="<c16").astype(np.complex128)
    kind = head.get("kind", "field")
    if kind == "field":
        agrid = ScaleGrid.from_dict(head)
        expected = agrid.count * sgrid.n ** sgrid.dim
        if values.size != expected:
            raise FormatError(f"payload holds {values.size} samples, header implies {expected}")
        return HalfSpaceField(sgrid, agrid, values, head.get("domain", "space"))
    if values.size != sgrid.n ** sgrid.dim:
        raise FormatError("payload size does not match header")
    cls = SampledSpectrum if kind == "spectrum" else SampledSignal
    return cls(sgrid, values)


def write_array_file(path, obj) -> None:
    try:
        Path(path).write_bytes(to_bytes(obj))
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc}") from exc


def read_array_file(path):
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return from_bytes(blob)


def export_csv(obj, dest) -> None:
    """Write samples as CSV: ``b`` (or ``b1,b2``), ``a``, ``re``, ``im``.

    Signals are written with ``x`` columns and no ``a`` column.  ``dest``
    may be a path or an open text stream.
    """
    own = not hasattr(dest, "write")
    fh = open(dest, "w", newline="") if own else dest
    try:
        w = csv.writer(fh)
        if isinstance(obj, HalfSpaceField):
            g = obj.sgrid
            names = ["b"] if g.dim == 1 else ["b1", "b2"]
            w.writerow(names + ["a", "re", "im"])
            pts = g.mesh().reshape(-1, g.dim)
            for a, slab in zip(obj.agrid.values, obj.values):
                flat = slab.reshape(-1)
                for p, v in zip(pts, flat):
                    w.writerow([repr(float(c)) for c in p]
                               + [repr(float(a)), repr(float(v.real)), repr(float(v.imag))])
        else:
            g = obj.grid
            names = ["x"] if g.dim == 1 else ["x1", "x2"]
            w.writerow(names + ["re", "im"])
            pts = g.mesh().reshape(-1, g.dim)
            for p, v in zip(pts, obj.values.reshape(-1)):
                w.writerow([repr(float(c)) for c in p] + [repr(float(v.real)), repr(float(v.imag))])
    finally:
        if own:
            fh.close()
