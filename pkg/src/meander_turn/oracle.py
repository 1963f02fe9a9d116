"""Frequency-domain reference solver for the meander turn.

Each mode is treated as a lossless line driven through ``Y0`` and terminated
at the far end; node voltages come from input-admittance algebra at every FFT
bin, not from a reflection series.  The modal node spectra are combined by
half-sums/differences and transformed back to the time domain.

The e.m.f. enters through its continuous-time spectrum.  Each DFT bin sums
the node spectrum over ``2 * alias_orders + 1`` alias bands (Poisson
summation), so the inverse transform returns samples of the continuous
response rather than a band-limited interpolation of sampled input; the
latter smears every fractional delay across the pulse corners.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bounce import Termination, TerminationKind
from .errors import ResonancePole, WindowTooShort
from .excitation import Waveform, sample_train
from .turn import TurnConfig, incident_train, turn_responses

POLE_TOL = 1e-300
IMAG_TOL = 1e-10


class Node(str, Enum):
    NEAR = "near"
    FAR = "far"


@dataclass(frozen=True)
class OracleConfig:
    n_samples: int = 2**14
    dt: float = 2.5e-12
    settle_margin: float = 3.0
    alias_orders: int = 8

    def __post_init__(self):
        n = self.n_samples
        if n < 1024 or n & (n - 1):
            raise ValueError("n_samples must be a power of two >= 1024")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError("dt must be positive")
        if not self.settle_margin >= 1:
            raise ValueError("settle_margin must be >= 1")
        if self.alias_orders < 0:
            raise ValueError("alias_orders must be >= 0")

    @property
    def window(self) -> float:
        return self.n_samples * self.dt

    @classmethod
    def for_excitation(cls, cfg: TurnConfig, n_samples: int = 2**14, settle_margin: float = 3.0, **kw):
        """Default grid: ``dt = rise / 20``."""
        return cls(n_samples, cfg.excitation.shape.rise_time / 20, settle_margin, **kw)


def mode_transfer(y0: float, y_mode: float, tau_mode: float, length: float, far: Termination, node, f):
    """Node voltage per unit source e.m.f. for one mode, at frequency ``f`` (Hz).

    ``f`` may be a scalar or array.  Negative frequencies return the complex
    conjugate of the positive-frequency value.
    """
    near_h, far_h = _mode_nodes(y0, y_mode, tau_mode, length, far, np.asarray(f, dtype=float))
    return near_h if Node(node) is Node.NEAR else far_h


def _mode_nodes(y0, y, tau, length, far: Termination, f: np.ndarray):
    bl = 2 * np.pi * tau * length * f
    c, s = np.cos(bl), np.sin(bl)
    # Y_in = y * num / den for the terminated line
    if far.kind is TerminationKind.OPEN:
        num, den = 1j * y * s, y * c
    elif far.kind is TerminationKind.SHORT:
        num, den = y * c, 1j * y * s
    else:
        y2 = far.value
        num, den = y2 * c + 1j * y * s, y * c + 1j * y2 * s
    # H = Y0 / (Y0 + Y_in)
    total = y0 * den + y * num
    if np.any(np.abs(total) < POLE_TOL):
        raise ResonancePole("near-end transfer denominator vanished")
    h_near = y0 * den / total
    if far.kind is TerminationKind.SHORT:
        return h_near, np.zeros_like(h_near)
    # V(l) = V(0) * y / (y cos + j Y2 sin)
    y2 = 0.0 if far.kind is TerminationKind.OPEN else far.value
    d_far = y * c + 1j * y2 * s
    if np.any(np.abs(d_far) < POLE_TOL):
        raise ResonancePole("far-end transfer denominator vanished")
    return h_near, h_near * y / d_far


def required_window(cfg: TurnConfig) -> float:
    """Last analytic delay plus pulse support, the span the oracle must settle over."""
    r = turn_responses(cfg)
    last = max(r.v1.last_delay(), r.v2.last_delay(), r.v3.last_delay())
    return last + cfg.excitation.support_end()


def _folded(fn, n: int, dt: float, orders: int) -> list[np.ndarray]:
    """DFT-bin spectra ``sum_m fn(f_k + m / dt)`` over ``|m| <= orders``.

    ``fn`` maps a frequency array to a tuple of same-shaped spectra.  The
    Nyquist bin folds the symmetric band set ``(m + 1/2) / dt`` with
    ``-orders - 1 <= m <= orders`` so each result stays conjugate-symmetric.
    """
    fs = 1.0 / dt
    base = np.fft.fftfreq(n, dt)
    m = np.arange(-orders, orders + 1)[:, None]
    outs = [x.sum(axis=0) for x in fn(base[None, :] + m * fs)]
    nyquist = fn((np.arange(-orders - 1, orders + 1) + 0.5) * fs)
    for out, x in zip(outs, nyquist):
        out[n // 2] = x.sum()
    return outs


def _to_time(spectrum: np.ndarray) -> np.ndarray:
    x = np.fft.ifft(spectrum)
    scale = max(float(np.max(np.abs(x.real))), 1e-300)
    if float(np.max(np.abs(x.imag))) > IMAG_TOL * scale:
        raise ArithmeticError("inverse transform is not real; spectrum lost conjugate symmetry")
    return x.real


def turn_oracle(cfg: TurnConfig, ocfg: OracleConfig) -> tuple[Waveform, Waveform, Waveform]:
    """Physical voltages at nodes 1, 2, 3 on the grid ``t = j * ocfg.dt``.

    Node 1 is the actual driven-node voltage, which includes the incident
    ``V_in``.
    """
    need = ocfg.settle_margin * required_window(cfg)
    if ocfg.window < need:
        raise WindowTooShort(
            f"n_samples * dt = {ocfg.window:.4g} s < settle_margin * span = {need:.4g} s"
        )
    n, dt = ocfg.n_samples, ocfg.dt
    m, l, y0 = cfg.modal, cfg.length, cfg.y0
    even, odd = Termination.open(), Termination.short()

    def node_spectra(f):
        emf = cfg.excitation.emf_spectrum(f) / dt
        he_near, he_far = _mode_nodes(y0, m.y_even, m.tau_even, l, even, f)
        ho_near, ho_far = _mode_nodes(y0, m.y_odd, m.tau_odd, l, odd, f)
        return (
            0.5 * (he_near + ho_near) * emf,
            0.5 * (he_near - ho_near) * emf,
            0.5 * (he_far + ho_far) * emf,
        )

    w1, w2, w3 = (_to_time(x) for x in _folded(node_spectra, n, dt, ocfg.alias_orders))
    return Waveform(0.0, dt, w1), Waveform(0.0, dt, w2), Waveform(0.0, dt, w3)


def analytic_on_grid(cfg: TurnConfig, ocfg: OracleConfig) -> tuple[Waveform, Waveform, Waveform]:
    """Sampled closed-form responses on the oracle grid, node 1 with the incident ``V_in``."""
    r = turn_responses(cfg)
    args = (cfg.excitation, 0.0, ocfg.dt, ocfg.n_samples)
    return (
        sample_train(r.v1 + incident_train(), *args),
        sample_train(r.v2, *args),
        sample_train(r.v3, *args),
    )


def oracle_deviation(cfg: TurnConfig, ocfg: OracleConfig | None = None) -> dict[str, float]:
    """Max |oracle - analytic| per node, normalized to the V_in peak."""
    ocfg = ocfg or OracleConfig.for_excitation(cfg)
    ref = turn_oracle(cfg, ocfg)
    ana = analytic_on_grid(cfg, ocfg)
    peak = cfg.excitation.vin_peak
    return {
        name: float(np.max(np.abs(a.samples - b.samples))) / peak
        for name, a, b in zip(("V1", "V2", "V3"), ref, ana)
    }
