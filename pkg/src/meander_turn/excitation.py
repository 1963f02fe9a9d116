"""Excitation pulses, exact pulse trains, and sampled waveforms.

Every analytic response in this package is a sum of scaled, delayed copies of
the input voltage ``V_in(t) = E(t) / 2``.  Such responses are carried as a
:class:`PulseTrain` of ``(gain, delay)`` terms and only turned into samples at
the very end, so no interpolation error enters the closed-form models.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyWindow

DELAY_MERGE_TOL = 1e-18  # s
GAIN_DROP_TOL = 1e-15

GAUSSIAN_SPAN_FWHM = 6.0


@dataclass(frozen=True)
class Waveform:
    """Uniformly sampled record: sample ``j`` is at ``t0 + j * dt``."""

    t0: float
    dt: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if s.ndim != 1 or s.size < 2:
            raise ValueError("a waveform needs at least 2 samples")
        if not np.all(np.isfinite(s)):
            raise ValueError("waveform samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.n - 1)

    def __add__(self, other: "Waveform") -> "Waveform":
        if other.n != self.n or other.t0 != self.t0 or other.dt != self.dt:
            raise ValueError("waveforms are on different grids")
        return Waveform(self.t0, self.dt, self.samples + other.samples)

    def __sub__(self, other: "Waveform") -> "Waveform":
        return self + other.scaled(-1.0)

    def scaled(self, a: float) -> "Waveform":
        return Waveform(self.t0, self.dt, a * self.samples)

    def interp(self, t) -> np.ndarray:
        """Piecewise-linear value at ``t``; zero outside the record."""
        return np.interp(t, self.times, self.samples, left=0.0, right=0.0)


def _piecewise_linear_spectrum(knots_t: np.ndarray, knots_v: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Continuous Fourier transform of a piecewise-linear function, zero outside its knots.

    Uses the midpoint form of each segment integral so small ``omega * h`` stays accurate.
    """
    w = 2 * np.pi * np.asarray(f, dtype=float)
    out = np.zeros(w.shape, dtype=complex)
    for a, b, va, vb in zip(knots_t[:-1], knots_t[1:], knots_v[:-1], knots_v[1:]):
        h = b - a
        if h <= 0 or (va == 0 and vb == 0):
            continue
        mid, mean, slope = 0.5 * (a + b), 0.5 * (va + vb), (vb - va) / h
        x = 0.5 * w * h
        sx, cx = np.sin(x), np.cos(x)
        small = np.abs(x) < 1e-3
        xs = np.where(small, 1.0, x)
        sinc = np.where(small, 1.0 - x * x / 6, sx / xs)
        odd = np.where(small, x / 3 - x**3 / 30, (sx - xs * cx) / (xs * xs))
        ph = w * mid
        out += (np.cos(ph) - 1j * np.sin(ph)) * (h * mean * sinc - 1j * (slope * 0.5 * h * h) * odd)
    return out


@dataclass(frozen=True)
class Trapezoid:
    rise: float
    top: float
    fall: float

    def __post_init__(self):
        for name in ("rise", "top", "fall"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"trapezoid {name} must be positive, got {v!r}")

    @property
    def duration(self) -> float:
        return self.rise + self.top + self.fall

    @property
    def support_end(self) -> float:
        return self.duration

    @property
    def rise_time(self) -> float:
        return self.rise

    def unit(self, t: np.ndarray) -> np.ndarray:
        t1 = self.rise
        t2 = t1 + self.top
        t3 = t2 + self.fall
        return np.interp(t, [0.0, t1, t2, t3], [0.0, 1.0, 1.0, 0.0], left=0.0, right=0.0)

    def spectrum(self, f) -> np.ndarray:
        t1 = self.rise
        t2 = t1 + self.top
        knots = np.array([0.0, t1, t2, t2 + self.fall])
        return _piecewise_linear_spectrum(knots, np.array([0.0, 1.0, 1.0, 0.0]), f)


@dataclass(frozen=True)
class Gaussian:
    """Gaussian truncated to ``center +/- 3 * fwhm`` (and to t >= 0)."""

    fwhm: float
    center: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.fwhm) and self.fwhm > 0):
            raise ValueError("gaussian fwhm must be positive")
        if self.center is None:
            object.__setattr__(self, "center", GAUSSIAN_SPAN_FWHM / 2 * self.fwhm)
        if not (math.isfinite(self.center) and self.center > 0):
            raise ValueError("gaussian center must be positive")

    @property
    def duration(self) -> float:
        return GAUSSIAN_SPAN_FWHM * self.fwhm

    @property
    def support_end(self) -> float:
        return self.center + GAUSSIAN_SPAN_FWHM / 2 * self.fwhm

    @property
    def rise_time(self) -> float:
        # 10-90 % rise of a Gaussian edge
        return 0.7167 * self.fwhm

    def unit(self, t: np.ndarray) -> np.ndarray:
        half = GAUSSIAN_SPAN_FWHM / 2 * self.fwhm
        x = (t - self.center) / self.fwhm
        v = np.exp(-4.0 * math.log(2.0) * x * x)
        return np.where((t >= 0) & (np.abs(t - self.center) <= half), v, 0.0)

    def spectrum(self, f) -> np.ndarray:
        # untruncated Gaussian; the clipped tails are below 2e-11 of the peak
        a = 4.0 * math.log(2.0) / self.fwhm**2
        f = np.asarray(f, dtype=float)
        return math.sqrt(math.pi / a) * np.exp(-(np.pi * f) ** 2 / a - 2j * np.pi * f * self.center)


@dataclass(frozen=True)
class Sampled:
    """Tabulated e.m.f. shape, linearly interpolated and zero outside its span.

    The grid is normalized so its largest absolute sample is 1; the scale is
    carried by ``ExcitationSpec.emf_amplitude``.
    """

    grid: Waveform

    def __post_init__(self):
        peak = float(np.max(np.abs(self.grid.samples)))
        if peak == 0:
            raise ValueError("sampled excitation is identically zero")
        if self.grid.t0 < 0:
            raise ValueError("sampled excitation must start at t >= 0")
        object.__setattr__(self, "grid", self.grid.scaled(1.0 / peak))

    @property
    def duration(self) -> float:
        return self.grid.t_end - self.grid.t0

    @property
    def support_end(self) -> float:
        return self.grid.t_end

    @property
    def rise_time(self) -> float:
        return self.grid.dt * 10

    def unit(self, t: np.ndarray) -> np.ndarray:
        return self.grid.interp(t)

    def spectrum(self, f) -> np.ndarray:
        g = self.grid
        t = np.concatenate(([g.t0], g.times, [g.t_end]))
        v = np.concatenate(([0.0], g.samples, [0.0]))
        return _piecewise_linear_spectrum(t, v, f)


Shape = Trapezoid | Gaussian | Sampled


@dataclass(frozen=True)
class ExcitationSpec:
    """Source e.m.f. ``E(t) = emf_amplitude * shape(t)``."""

    shape: Shape
    emf_amplitude: float

    def __post_init__(self):
        if not (math.isfinite(self.emf_amplitude) and self.emf_amplitude != 0):
            raise ValueError("emf_amplitude must be finite and nonzero")

    def total_duration(self) -> float:
        return self.shape.duration

    def support_end(self) -> float:
        return self.shape.support_end

    @property
    def vin_peak(self) -> float:
        return abs(self.emf_amplitude) / 2

    def emf(self, t) -> np.ndarray:
        return self.emf_amplitude * self.shape.unit(np.asarray(t, dtype=float))

    def emf_spectrum(self, f) -> np.ndarray:
        """Continuous-time Fourier transform of ``E(t)`` (V/Hz), ``exp(-j 2 pi f t)`` kernel."""
        return self.emf_amplitude * self.shape.spectrum(f)


def default_excitation() -> ExcitationSpec:
    """50/100/50 ps trapezoid with E = 2 V, so the V_in peak is 1 V."""
    return ExcitationSpec(Trapezoid(50e-12, 100e-12, 50e-12), 2.0)


def vin_value(ex: ExcitationSpec, t):
    """Input voltage ``V_in(t) = E(t) / 2``; scalar in, scalar out."""
    v = 0.5 * ex.emf(t)
    return float(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class PulseTrain:
    """Exact response ``sum_i gain_i * V_in(t - delay_i)``."""

    terms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        terms = tuple((float(g), float(d)) for g, d in self.terms)
        for g, d in terms:
            if not math.isfinite(g) or not math.isfinite(d) or d < 0:
                raise ValueError(f"bad pulse term (gain={g}, delay={d})")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, terms: Iterable[tuple[float, float]]) -> "PulseTrain":
        return cls(tuple(terms)).normalized()

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def gains(self) -> np.ndarray:
        return np.array([g for g, _ in self.terms], dtype=float)

    @property
    def delays(self) -> np.ndarray:
        return np.array([d for _, d in self.terms], dtype=float)

    def normalized(self) -> "PulseTrain":
        """Sort by delay, merge near-coincident delays, drop negligible gains."""
        merged: list[list[float]] = []
        for g, d in sorted(self.terms, key=lambda term: term[1]):
            if merged and d - merged[-1][1] < DELAY_MERGE_TOL:
                merged[-1][0] += g
            else:
                merged.append([g, d])
        return PulseTrain(tuple((g, d) for g, d in merged if abs(g) >= GAIN_DROP_TOL))

    def __add__(self, other: "PulseTrain") -> "PulseTrain":
        return PulseTrain(self.terms + other.terms).normalized()

    def __sub__(self, other: "PulseTrain") -> "PulseTrain":
        return self + other.scaled(-1.0)

    def scaled(self, a: float) -> "PulseTrain":
        return PulseTrain(tuple((a * g, d) for g, d in self.terms))

    def shifted(self, delta: float) -> "PulseTrain":
        return PulseTrain(tuple((g, d + delta) for g, d in self.terms))

    def last_delay(self) -> float:
        return max((d for _, d in self.terms), default=0.0)


def sample_train(train: PulseTrain, ex: ExcitationSpec, t0: float, dt: float, n: int) -> Waveform:
    if n < 2:
        raise ValueError("need at least 2 samples")
    t = t0 + dt * np.arange(n)
    out = np.zeros(n)
    for g, d in train.terms:
        out += g * (0.5 * ex.emf(t - d))
    return Waveform(t0, dt, out)


def measure_pulse_peaks(w: Waveform, windows: Sequence[tuple[float, float]]) -> list[float]:
    """Signed sample of largest magnitude inside each ``(t_start, t_end)`` window."""
    t = w.times
    peaks = []
    for t_start, t_end in windows:
        mask = (t >= t_start) & (t <= t_end)
        if not mask.any():
            raise EmptyWindow(f"no samples in window [{t_start:g}, {t_end:g}]")
        seg = w.samples[mask]
        peaks.append(float(seg[np.argmax(np.abs(seg))]))
    return peaks


def waveforms_to_csv(columns: dict[str, Waveform]) -> str:
    """CSV text with header ``time_s,<name>_V,...``; all columns share one grid."""
    if not columns:
        raise ValueError("no columns to write")
    first = next(iter(columns.values()))
    for w in columns.values():
        if w.n != first.n or w.t0 != first.t0 or w.dt != first.dt:
            raise ValueError("all CSV columns must share a time grid")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["time_s"] + [f"{name}_V" for name in columns])
    data = np.column_stack([first.times] + [w.samples for w in columns.values()])
    for row in data:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()
