"""Per-unit-length matrices of a symmetric coupled pair and their even/odd modes.

Sign convention: the capacitance matrix is the Maxwell matrix, so the mutual
term ``m12`` is stored as given and is negative for a physical pair.  The
even-mode capacitance is therefore ``C11 + C12`` and the odd-mode capacitance
``C11 - C12``; inductances follow the same pattern with a positive ``L12``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .errors import NonPositiveDefinite


class MatrixKind(str, Enum):
    CAPACITANCE = "capacitance"  # F/m
    INDUCTANCE = "inductance"  # H/m
    IMPEDANCE = "impedance"  # ohm


@dataclass(frozen=True)
class SymmetricMatrix2:
    """2x2 symmetric matrix ``[[m11, m12], [m12, m11]]`` in SI units."""

    m11: float
    m12: float
    kind: MatrixKind

    def __post_init__(self):
        object.__setattr__(self, "kind", MatrixKind(self.kind))
        if not (math.isfinite(self.m11) and math.isfinite(self.m12)):
            raise NonPositiveDefinite(f"{self.kind.value} matrix has non-finite entries")
        if self.kind is not MatrixKind.IMPEDANCE:
            if self.m11 <= 0 or self.even <= 0 or self.odd <= 0:
                raise NonPositiveDefinite(
                    f"{self.kind.value} matrix [{self.m11:g}, {self.m12:g}] is not positive definite"
                )

    @property
    def even(self) -> float:
        """Even-mode entry ``m11 + m12``."""
        return self.m11 + self.m12

    @property
    def odd(self) -> float:
        """Odd-mode entry ``m11 - m12``."""
        return self.m11 - self.m12

    def as_list(self) -> list[list[float]]:
        return [[self.m11, self.m12], [self.m12, self.m11]]


@dataclass(frozen=True)
class ModalParameters:
    """Even/odd mode characteristic admittances (S) and per-unit-length delays (s/m)."""

    y_even: float
    y_odd: float
    tau_even: float
    tau_odd: float

    def __post_init__(self):
        for name in ("y_even", "y_odd", "tau_even", "tau_odd"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        if self.y_odd < self.y_even:
            warnings.warn(
                "y_odd < y_even: unusual for a microstrip-like coupled pair",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def z_even(self) -> float:
        return 1.0 / self.y_even

    @property
    def z_odd(self) -> float:
        return 1.0 / self.y_odd

    @classmethod
    def from_impedances(cls, z_even: float, z_odd: float, tau_even: float, tau_odd: float):
        return cls(1.0 / z_even, 1.0 / z_odd, tau_even, tau_odd)


def extract_modal(L: SymmetricMatrix2, C: SymmetricMatrix2) -> ModalParameters:
    """Decompose the inductance and capacitance matrices into modal parameters.

    ``Y = sqrt(C_mode / L_mode)`` and ``tau = sqrt(L_mode * C_mode)`` with
    ``L_mode = L11 +/- L12`` and ``C_mode = C11 +/- C12`` (even uses +).
    """
    if L.kind is not MatrixKind.INDUCTANCE:
        raise TypeError("L must be an inductance matrix")
    if C.kind is not MatrixKind.CAPACITANCE:
        raise TypeError("C must be a capacitance matrix")
    return ModalParameters(
        y_even=math.sqrt(C.even / L.even),
        y_odd=math.sqrt(C.odd / L.odd),
        tau_even=math.sqrt(L.even * C.even),
        tau_odd=math.sqrt(L.odd * C.odd),
    )


def characteristic_impedance_matrix(p: ModalParameters) -> SymmetricMatrix2:
    ze, zo = p.z_even, p.z_odd
    return SymmetricMatrix2((ze + zo) / 2, (ze - zo) / 2, MatrixKind.IMPEDANCE)


def coupling_coefficient(p: ModalParameters) -> float:
    """``k = sqrt(Y_odd / Y_even) = sqrt(Z_even / Z_odd)``."""
    return math.sqrt(p.y_odd / p.y_even)
