"""Node responses of a meander-line turn.

The turn is a symmetric coupled pair whose two signal conductors are joined at
the far end.  The active conductor is driven by an e.m.f. source with internal
admittance ``Y0``; the passive conductor's near end is loaded by ``Y0`` and is
the turn output.  Joining the far ends shorts the odd mode and leaves the even
mode open.

Two independent routes are provided:

* :func:`coupled_node_responses` runs the single-line bounce model per mode and
  combines the modal trains by half-sums and half-differences.
* :func:`turn_responses` evaluates the closed-form turn expressions directly.

Both must agree term by term.  Node 1 (and 2) trains carry the reflected part
of the near-end voltage; the physical node-1 voltage adds the incident
``V_in`` (see :func:`incident_train`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounce import LineSection, Termination, far_response, near_response
from .errors import DegenerateSource
from .excitation import ExcitationSpec, PulseTrain, Waveform, default_excitation, sample_train
from .modal_params import ModalParameters


@dataclass(frozen=True)
class TurnConfig:
    modal: ModalParameters
    length: float
    y0: float
    k_ref: int = 15
    excitation: ExcitationSpec = field(default_factory=default_excitation)

    def __post_init__(self):
        if not (math.isfinite(self.length) and self.length > 0):
            raise ValueError("length must be positive and finite")
        if not (math.isfinite(self.y0) and self.y0 > 0):
            raise ValueError("y0 must be positive and finite")
        if int(self.k_ref) != self.k_ref or self.k_ref < 2:
            raise ValueError("k_ref must be an integer >= 2")


@dataclass(frozen=True)
class NodeResponses:
    v1: PulseTrain
    v2: PulseTrain
    v3: PulseTrain
    v4: PulseTrain

    def as_dict(self) -> dict[str, PulseTrain]:
        return {"v1": self.v1, "v2": self.v2, "v3": self.v3, "v4": self.v4}


def incident_train() -> PulseTrain:
    """The incident ``V_in`` at the driven node, absent from the v1 train."""
    return PulseTrain(((1.0, 0.0),))


def coupled_node_responses(
    modal: ModalParameters,
    y0: float,
    far_even: Termination,
    far_odd: Termination,
    length: float,
    k_ref: int,
) -> NodeResponses:
    even = LineSection(modal.y_even, modal.tau_even, length)
    odd = LineSection(modal.y_odd, modal.tau_odd, length)
    re = near_response(even, y0, far_even, k_ref)
    ro = near_response(odd, y0, far_odd, k_ref)
    te = far_response(even, y0, far_even, k_ref)
    to = far_response(odd, y0, far_odd, k_ref)
    return NodeResponses(
        v1=(re + ro).scaled(0.5),
        v2=(re - ro).scaled(0.5),
        v3=(te + to).scaled(0.5),
        v4=(te - to).scaled(0.5),
    )


def turn_responses(cfg: TurnConfig) -> NodeResponses:
    """Closed-form node trains of the turn (even mode open, odd mode shorted)."""
    ye, yo = cfg.modal.y_even, cfg.modal.y_odd
    y0 = cfg.y0
    if y0 + ye == 0 or y0 + yo == 0:
        raise DegenerateSource("Y0 + Y_mode = 0")
    te = cfg.length * cfg.modal.tau_even
    to = cfg.length * cfg.modal.tau_odd
    # round trips kept: near terms have 2i-1 reflections, far terms 2(i-1)
    n_near = max((cfg.k_ref - 1) // 2, 0) + 1
    n_far = cfg.k_ref // 2 + 1

    g_e = (y0 - ye) / (y0 + ye)
    g_o = (y0 - yo) / (y0 + yo)

    even_rt = [
        (2 * ye * y0 * (-1) ** (i + 1) * (ye + y0) ** -(1 + i) * (y0 - ye) ** (i - 1), 2 * i * te)
        for i in range(1, n_near + 1)
    ]
    odd_rt = [
        (2 * yo * y0 * (yo + y0) ** -(1 + i) * (y0 - yo) ** (i - 1), 2 * i * to)
        for i in range(1, n_near + 1)
    ]
    v1 = [(0.5 * (g_e + g_o), 0.0)] + even_rt + [(-g, d) for g, d in odd_rt]
    v2 = [(0.5 * (g_e - g_o), 0.0)] + even_rt + odd_rt
    v3 = [
        (2 * y0 * (-1) ** (i + 1) * (ye + y0) ** -i * (y0 - ye) ** (i - 1), (2 * i - 1) * te)
        for i in range(1, n_far + 1)
    ]
    t3 = PulseTrain.of(v3)
    return NodeResponses(PulseTrain.of(v1), PulseTrain.of(v2), t3, t3)


def sample_nodes(cfg: TurnConfig, t0: float, dt: float, n: int, physical: bool = False) -> dict[str, Waveform]:
    """Sampled v1..v3 for ``cfg``.

    With ``physical=True`` node 1 includes the incident ``V_in`` so it is the
    actual conductor voltage.
    """
    r = turn_responses(cfg)
    v1 = r.v1 + incident_train() if physical else r.v1
    trains = {"V1": v1, "V2": r.v2, "V3": r.v3}
    return {k: sample_train(t, cfg.excitation, t0, dt, n) for k, t in trains.items()}


def k_ref_for_tail(modal: ModalParameters, y0: float, tol: float = 1e-3) -> int:
    """Smallest reflection count whose dropped bounce terms sum below ``tol`` (units of V_in)."""
    worst = 2
    for ym in (modal.y_even, modal.y_odd):
        ratio = abs((y0 - ym) / (y0 + ym))
        if ratio == 0:
            continue
        if ratio >= 1:
            raise ValueError("bounce series does not decay")
        lead = 2 * y0 / (y0 + ym)  # bounds every per-term gain of either node
        # tail after n round trips: lead * ratio**n / (1 - ratio) <= tol
        n = math.ceil(math.log(tol * (1 - ratio) / lead) / math.log(ratio))
        worst = max(worst, 2 * max(n, 1) + 1)
    return worst
