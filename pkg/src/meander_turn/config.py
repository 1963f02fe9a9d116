"""JSON run-configuration loader.

Every physical quantity carries its unit in the key name.  Errors are raised
as :class:`ConfigError` naming the offending key path, e.g. ``C_pF_per_m``
or ``excitation.rise_ps``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import ConfigError, MeanderError
from .excitation import ExcitationSpec, Gaussian, Sampled, Trapezoid, Waveform
from .modal_params import MatrixKind, ModalParameters, SymmetricMatrix2, extract_modal
from .oracle import OracleConfig, required_window
from .turn import TurnConfig, k_ref_for_tail

PS = 1e-12
NS = 1e-9
TAIL_TOL = 1e-3


@dataclass(frozen=True)
class RunConfig:
    turn: TurnConfig
    L: SymmetricMatrix2 | None
    C: SymmetricMatrix2 | None
    dt: float
    t_end: float
    oracle: OracleConfig

    @property
    def modal(self) -> ModalParameters:
        return self.turn.modal

    @property
    def n_samples(self) -> int:
        return int(math.floor(self.t_end / self.dt + 1e-9)) + 1


def _number(d: dict, key: str, path: str, positive: bool = True) -> float:
    if key not in d:
        raise ConfigError(path + key, "missing")
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(path + key, f"expected a finite number, got {v!r}")
    if positive and v <= 0:
        raise ConfigError(path + key, f"must be positive, got {v!r}")
    return float(v)


def _pair(d: dict, key: str) -> tuple[float, float]:
    v = d[key]
    if (
        not isinstance(v, list)
        or len(v) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    ):
        raise ConfigError(key, "expected [m11, m12]")
    return float(v[0]), float(v[1])


def _matrices(raw: dict):
    L11, L12 = _pair(raw, "L_nH_per_m")
    C11, C12 = _pair(raw, "C_pF_per_m")
    try:
        L = SymmetricMatrix2(L11 * NS, L12 * NS, MatrixKind.INDUCTANCE)
    except MeanderError as e:
        raise ConfigError("L_nH_per_m", str(e)) from e
    try:
        C = SymmetricMatrix2(C11 * PS, C12 * PS, MatrixKind.CAPACITANCE)
    except MeanderError as e:
        raise ConfigError("C_pF_per_m", str(e)) from e
    return L, C


def _modal_block(block: Any) -> ModalParameters:
    if not isinstance(block, dict):
        raise ConfigError("modal", "expected an object")
    p = "modal."
    return ModalParameters.from_impedances(
        _number(block, "Ze_ohm", p),
        _number(block, "Zo_ohm", p),
        _number(block, "tau_e_ns_per_m", p) * NS,
        _number(block, "tau_o_ns_per_m", p) * NS,
    )


def _excitation(block: Any) -> ExcitationSpec:
    if block is None:
        block = {"shape": "trapezoid"}
    if not isinstance(block, dict):
        raise ConfigError("excitation", "expected an object")
    p = "excitation."
    shape = block.get("shape", "trapezoid")
    if shape == "trapezoid":
        vals = {k: block.get(k, dflt) for k, dflt in (("rise_ps", 50), ("top_ps", 100), ("fall_ps", 50))}
        for k in vals:
            _number(vals, k, p)
        s = Trapezoid(vals["rise_ps"] * PS, vals["top_ps"] * PS, vals["fall_ps"] * PS)
        emf = block.get("emf_V", 2.0)
    elif shape == "gaussian":
        fwhm = _number(block, "fwhm_ps", p)
        center = _number(block, "center_ps", p) if "center_ps" in block else None
        s = Gaussian(fwhm * PS, None if center is None else center * PS)
        emf = block.get("emf_V", 2.0)
    elif shape == "samples":
        vals = block.get("emf_V_samples")
        if not isinstance(vals, list) or len(vals) < 2:
            raise ConfigError(p + "emf_V_samples", "expected a list of at least 2 numbers")
        dt = _number(block, "dt_ps", p) * PS
        t0 = _number(block, "t0_ps", p, positive=False) * PS if "t0_ps" in block else 0.0
        try:
            grid = Waveform(t0, dt, [float(v) for v in vals])
            peak = max(grid.samples, key=abs)
            s = Sampled(grid)
        except (TypeError, ValueError) as e:
            raise ConfigError(p + "emf_V_samples", str(e)) from e
        emf = float(peak)
    else:
        raise ConfigError(p + "shape", f"unknown shape {shape!r}")
    if isinstance(emf, bool) or not isinstance(emf, (int, float)) or not math.isfinite(emf) or emf == 0:
        raise ConfigError(p + "emf_V", "expected a finite nonzero number")
    return ExcitationSpec(s, float(emf))


def _y0(raw: dict, modal: ModalParameters) -> float:
    keys = [k for k in ("y0_S", "z0_ohm") if k in raw]
    if len(keys) != 1:
        raise ConfigError("y0_S", "give exactly one of y0_S or z0_ohm (a number or \"matched\")")
    key = keys[0]
    if raw[key] == "matched":
        return math.sqrt(modal.y_even * modal.y_odd)
    v = _number(raw, key, "")
    return v if key == "y0_S" else 1.0 / v


def parse_config(raw: Any) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "expected a JSON object")
    has_mats = "L_nH_per_m" in raw or "C_pF_per_m" in raw
    has_modal = "modal" in raw
    if has_mats == has_modal:
        raise ConfigError("modal", "give exactly one of the L_nH_per_m/C_pF_per_m pair or a modal block")
    L = C = None
    if has_mats:
        for key in ("L_nH_per_m", "C_pF_per_m"):
            if key not in raw:
                raise ConfigError(key, "missing")
        L, C = _matrices(raw)
        modal = extract_modal(L, C)
    else:
        try:
            modal = _modal_block(raw["modal"])
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError("modal", str(e)) from e

    length = _number(raw, "length_m", "")
    y0 = _y0(raw, modal)
    ex = _excitation(raw.get("excitation"))
    rise = ex.shape.rise_time

    k_ref = raw.get("k_ref", "auto")
    if k_ref == "auto":
        k_ref = k_ref_for_tail(modal, y0, TAIL_TOL)
    elif isinstance(k_ref, bool) or not isinstance(k_ref, int) or k_ref < 2:
        raise ConfigError("k_ref", "expected an integer >= 2 or \"auto\"")
    turn = TurnConfig(modal, length, y0, k_ref, ex)

    sampling = raw.get("sampling", {})
    if not isinstance(sampling, dict):
        raise ConfigError("sampling", "expected an object")
    dt = _number(sampling, "dt_s", "sampling.") if "dt_s" in sampling else rise / 20
    if dt > rise / 10:
        raise ConfigError("sampling.dt_s", f"must be <= rise/10 = {rise / 10:g} s")
    if "t_end_s" in sampling:
        t_end = _number(sampling, "t_end_s", "sampling.")
    else:
        t_end = required_window(turn)
    if t_end < dt:
        raise ConfigError("sampling.t_end_s", "must cover at least one time step")

    ob = raw.get("oracle", {})
    if not isinstance(ob, dict):
        raise ConfigError("oracle", "expected an object")
    n = ob.get("n_samples", 2**14)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1024 or n & (n - 1):
        raise ConfigError("oracle.n_samples", "expected a power of two >= 1024")
    odt = _number(ob, "dt_s", "oracle.") if "dt_s" in ob else rise / 20
    if odt > rise / 10:
        raise ConfigError("oracle.dt_s", f"must be <= rise/10 = {rise / 10:g} s")
    margin = _number(ob, "settle_margin", "oracle.") if "settle_margin" in ob else 3.0
    orders = ob.get("alias_orders", OracleConfig.alias_orders)
    if isinstance(orders, bool) or not isinstance(orders, int) or orders < 0:
        raise ConfigError("oracle.alias_orders", "expected an integer >= 0")
    if margin < 1:
        raise ConfigError("oracle.settle_margin", "must be >= 1")
    return RunConfig(turn, L, C, dt, t_end, OracleConfig(n, odt, margin, orders))


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("<file>", f"cannot read {path}: {e.strerror}") from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("<file>", f"invalid JSON: {e}") from e
    return parse_config(raw)
