"""Amplitudes of the three decomposed pulses at the turn output and the
condition that makes them equal.

With ``k = sqrt(Y_odd / Y_even)`` and ``Y0 = sqrt(Y_even * Y_odd)`` the
crosstalk pulse is ``(k - 1) / (k + 1)`` and both modal pulses are
``2k / (k + 1)**2``.  Equating them gives ``k**2 - 2k - 1 = 0``, or with the
spurious root ``k = -1`` included, ``k**3 - k**2 - 3k - 1 = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .modal_params import ModalParameters, coupling_coefficient

SQRT2 = math.sqrt(2.0)
K_EQUAL = 1.0 + SQRT2


@dataclass(frozen=True)
class EqualizationReport:
    k: float
    y0: float
    y0_matched: float
    amplitudes: tuple[float, float, float]
    eq9_residual: float
    eq9_applicable: bool
    separation_ok: bool

    def to_json_dict(self) -> dict:
        v_c, v_o, v_e = self.amplitudes
        return {
            "k": self.k,
            "y0_S": self.y0,
            "y0_matched_S": self.y0_matched,
            "z0_matched_ohm": 1.0 / self.y0_matched,
            "v_c": v_c,
            "v_o": v_o,
            "v_e": v_e,
            "eq9_residual": self.eq9_residual,
            "eq9_applicable": self.eq9_applicable,
            "separation_ok": self.separation_ok,
        }


def pulse_amplitudes(modal: ModalParameters, y0: float) -> tuple[float, float, float]:
    """Normalized amplitudes ``(v_c, v_o, v_e)`` of the crosstalk, odd and even pulses."""
    ye, yo = modal.y_even, modal.y_odd
    v_c = y0 * (yo - ye) / ((yo + y0) * (ye + y0))
    v_o = 2 * y0 * yo / (yo + y0) ** 2
    v_e = 2 * y0 * ye / (ye + y0) ** 2
    return v_c, v_o, v_e


def matched_admittance(modal: ModalParameters) -> float:
    """Terminal admittance ``sqrt(Y_even * Y_odd)`` that equalizes the two modal pulses."""
    return math.sqrt(modal.y_even * modal.y_odd)


def crosstalk_condition_residual(modal: ModalParameters, y0: float) -> float:
    """Residual of ``(Yo - 3 Ye) / Y0 - Ye / Yo - 1``; zero iff ``v_c == v_o``."""
    ye, yo = modal.y_even, modal.y_odd
    return (yo - 3 * ye) / y0 - ye / yo - 1.0


def cubic(k: float) -> float:
    return k**3 - k**2 - 3 * k - 1


def _polish(root: float, steps: int = 3) -> float:
    for _ in range(steps):
        d = 3 * root**2 - 2 * root - 3
        if d == 0:
            break
        step = cubic(root) / d
        if step == 0:
            break
        root -= step
    return root


def equalization_cubic_roots() -> tuple[float, float, float]:
    """Real roots of ``k**3 - k**2 - 3k - 1`` in ascending order.

    The polynomial factors as ``(k + 1)(k**2 - 2k - 1)``; the only physical
    (k > 1) root is the last one, ``1 + sqrt(2)``.
    """
    return tuple(_polish(r) for r in (-1.0, 1.0 - SQRT2, 1.0 + SQRT2))


def physical_root() -> float:
    return next(r for r in equalization_cubic_roots() if r > 1)


def normalized_equal_amplitude(k: float) -> float:
    if not k > 0:
        raise ValueError("k must be positive")
    return (k - 1) / (k + 1)


def check_separation(modal: ModalParameters, length: float, pulse_duration: float) -> bool:
    """True if crosstalk, odd and even pulses arrive as distinct, non-overlapping peaks."""
    if modal.tau_even == modal.tau_odd:
        return False
    gap = min(2 * length * modal.tau_odd, 2 * length * (modal.tau_even - modal.tau_odd))
    return gap > pulse_duration


def design_equalized(z_even_ohm: float) -> tuple[float, float, float]:
    """Odd-mode impedance, terminal admittance and pulse amplitude for equal pulses.

    Returns ``(z_odd_ohm, y0_S, amplitude)``.
    """
    if not z_even_ohm > 0:
        raise ValueError("z_even must be positive")
    k = physical_root()
    z_odd = z_even_ohm / k**2
    y0 = 1.0 / math.sqrt(z_even_ohm * z_odd)
    return z_odd, y0, 1.0 / (1.0 + SQRT2)


def equalization_report(modal: ModalParameters, y0: float, length: float, pulse_duration: float) -> EqualizationReport:
    k = coupling_coefficient(modal)
    return EqualizationReport(
        k=k,
        y0=y0,
        y0_matched=matched_admittance(modal),
        amplitudes=pulse_amplitudes(modal, y0),
        eq9_residual=crosstalk_condition_residual(modal, y0),
        # equal crosstalk needs coupling; with k <= 1 there is no crosstalk pulse to match
        eq9_applicable=k > 1,
        separation_ok=check_separation(modal, length, pulse_duration),
    )

