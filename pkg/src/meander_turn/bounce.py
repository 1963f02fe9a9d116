"""Multiple-reflection (bounce) model of one lossless line section.

A line of characteristic admittance ``Y1`` and per-unit-length delay ``tau1``
is driven from a source of internal admittance ``Y0`` whose e.m.f. is
``2 * V_in`` and terminated at the far end in ``Y2``.  Near-end trains hold the
node voltage minus the incident ``V_in`` (the reflected part only); far-end
trains hold the full node voltage.

``k_ref`` is the largest number of reflections a kept component may have
undergone: the far-end term with ``k`` extra round trips has ``2k``
reflections and the near-end term ``2k + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateSource
from .excitation import PulseTrain


@dataclass(frozen=True)
class LineSection:
    y1: float
    tau1: float
    length: float

    def __post_init__(self):
        for name in ("y1", "tau1", "length"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")

    @property
    def one_way_delay(self) -> float:
        return self.length * self.tau1


class TerminationKind(str, Enum):
    ADMITTANCE = "admittance"
    OPEN = "open"
    SHORT = "short"


@dataclass(frozen=True)
class Termination:
    """Far-end load: a finite admittance, or the open (Y=0) / short (Y=inf) limits."""

    kind: TerminationKind
    value: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", TerminationKind(self.kind))
        if self.kind is TerminationKind.ADMITTANCE:
            if not (math.isfinite(self.value) and self.value >= 0):
                raise ValueError(f"termination admittance must be >= 0 and finite, got {self.value!r}")

    @classmethod
    def admittance(cls, y: float) -> "Termination":
        return cls(TerminationKind.ADMITTANCE, y)

    @classmethod
    def open(cls) -> "Termination":
        return cls(TerminationKind.OPEN)

    @classmethod
    def short(cls) -> "Termination":
        return cls(TerminationKind.SHORT)


def reflection_far(y1: float, far: Termination) -> float:
    """Voltage reflection ``(Y1 - Y2) / (Y1 + Y2)`` at the far end."""
    if far.kind is TerminationKind.OPEN:
        return 1.0
    if far.kind is TerminationKind.SHORT:
        return -1.0
    return (y1 - far.value) / (y1 + far.value)


def _transmission_far(y1: float, far: Termination) -> float:
    # 2 Y1 / (Y1 + Y2) == 1 + reflection_far
    if far.kind is TerminationKind.OPEN:
        return 2.0
    if far.kind is TerminationKind.SHORT:
        return 0.0
    return 2.0 * y1 / (y1 + far.value)


def reflection_source(y0: float, y1: float) -> float:
    """Reflection ``(Y1 - Y0) / (Y0 + Y1)`` seen by a wave returning to the source."""
    _check_source(y0, y1)
    return (y1 - y0) / (y0 + y1)


def _check_source(y0: float, y1: float):
    if not math.isfinite(y0):
        raise ValueError("source admittance must be finite")
    if y0 + y1 == 0:
        raise DegenerateSource("Y0 + Y1 = 0")


def primary_components(sec: LineSection, y0: float, far: Termination):
    """Gains and delays of the transmitted wave and the first two near-end components.

    Returns ``(v0, v1p, v1pp)``, each a ``(gain, delay)`` pair.
    """
    y1 = sec.y1
    _check_source(y0, y1)
    launch = 2 * y0 / (y0 + y1)
    t = sec.one_way_delay
    v0 = (launch * _transmission_far(y1, far), t)
    v1p = ((y0 - y1) / (y0 + y1), 0.0)
    v1pp = (launch * (2 * y1 / (y0 + y1)) * reflection_far(y1, far), 2 * t)
    return v0, v1p, v1pp


def far_round_trips(k_ref: int) -> int:
    return k_ref // 2


def near_round_trips(k_ref: int) -> int:
    return max((k_ref - 1) // 2, 0)


def far_response(sec: LineSection, y0: float, far: Termination, k_ref: int) -> PulseTrain:
    if k_ref < 0:
        raise ValueError("k_ref must be >= 0")
    (g0, _), _, _ = primary_components(sec, y0, far)
    ratio = reflection_far(sec.y1, far) * reflection_source(y0, sec.y1)
    t = sec.one_way_delay
    terms = [(g0 * ratio**k, (2 * k + 1) * t) for k in range(far_round_trips(k_ref) + 1)]
    return PulseTrain.of(terms)


def near_response(sec: LineSection, y0: float, far: Termination, k_ref: int) -> PulseTrain:
    if k_ref < 0:
        raise ValueError("k_ref must be >= 0")
    _, v1p, (g1, _) = primary_components(sec, y0, far)
    ratio = reflection_far(sec.y1, far) * reflection_source(y0, sec.y1)
    t = sec.one_way_delay
    terms = [v1p] + [(g1 * ratio**k, 2 * (k + 1) * t) for k in range(near_round_trips(k_ref) + 1)]
    return PulseTrain.of(terms)
