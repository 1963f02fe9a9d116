"""Random valid turn configurations shared by the oracle and identity suites."""
import math

import numpy as np

from meander_turn.excitation import default_excitation
from meander_turn.modal_params import ModalParameters
from meander_turn.oracle import OracleConfig, required_window
from meander_turn.turn import TurnConfig, k_ref_for_tail

MAX_REFLECTION = 0.9
TAIL_TOL = 1e-3
N_SAMPLES = 2**14


def _ratio_for(gamma_max):
    # |(Y0 - Ym) / (Y0 + Ym)| <= gamma_max  <=>  Ym / Y0 in [1/r, r]
    return (1 + gamma_max) / (1 - gamma_max)


def random_turn_configs(n, seed=20240611):
    rng = np.random.default_rng(seed)
    ex = default_excitation()
    ocfg = OracleConfig(N_SAMPLES, ex.shape.rise_time / 20, 3.0)
    r = _ratio_for(MAX_REFLECTION)
    out = []
    while len(out) < n:
        y0 = 1 / rng.uniform(10, 100)
        ya, yb = sorted(y0 * np.exp(rng.uniform(-math.log(r), math.log(r), size=2)))
        tau_o = rng.uniform(3e-9, 8e-9)
        tau_e = tau_o * rng.uniform(1.0, 1.8)
        modal = ModalParameters(ya, yb, tau_e, tau_o)
        k_ref = k_ref_for_tail(modal, y0, TAIL_TOL)
        # size the length so the oracle window holds the kept bounce terms
        n_rt = (k_ref - 1) // 2 + 1
        budget = ocfg.window / ocfg.settle_margin - ex.support_end()
        l_max = budget / (2 * n_rt * tau_e) * 0.98
        length = l_max * rng.uniform(0.2, 1.0)
        cfg = TurnConfig(modal, length, y0, k_ref, ex)
        assert ocfg.settle_margin * required_window(cfg) <= ocfg.window
        out.append(cfg)
    return out, ocfg
