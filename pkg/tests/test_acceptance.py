"""Acceptance criteria, each checked at its stated tolerance.

Every test records one PASS/FAIL line, echoed in the terminal summary.
"""
import math
import time

import numpy as np
import pytest

from meander_turn.bounce import LineSection, Termination, far_response
from meander_turn.equalization import cubic, equalization_cubic_roots, physical_root, pulse_amplitudes
from meander_turn.modal_params import (
    ModalParameters,
    characteristic_impedance_matrix,
    coupling_coefficient,
    extract_modal,
)
from meander_turn.oracle import oracle_deviation
from meander_turn.turn import TurnConfig, coupled_node_responses, turn_responses

from .conftest import REF_ZE, REF_ZO
from .randomized import random_turn_configs
from .trains import term_error

N_RANDOM = 100
RUNTIME_BUDGET_S = 60.0


@pytest.fixture(scope="module")
def suite():
    return random_turn_configs(N_RANDOM)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_c1_modal_extraction(ref_L, ref_C, report_criterion):
    m = extract_modal(ref_L, ref_C)
    z = characteristic_impedance_matrix(m)
    errs = {
        "Ze": rel(m.z_even, REF_ZE),
        "Zo": rel(m.z_odd, REF_ZO),
        "Z11": rel(z.m11, 50.5516),
        "Z12": rel(z.m12, 35.7304),
    }
    ok = max(errs.values()) < 1e-4
    detail = ", ".join(f"{k} rel err {v:.2e}" for k, v in errs.items()) + " (tol 1e-4)"
    assert report_criterion("C1 modal extraction", ok, detail)


def test_c2_coupling_and_root(ref_L, ref_C, report_criterion):
    k = coupling_coefficient(extract_modal(ref_L, ref_C))
    root = physical_root()
    res = max(abs(cubic(r)) for r in equalization_cubic_roots())
    ok = abs(k - 2.413) <= 1e-3 and root == pytest.approx(1 + math.sqrt(2), rel=1e-15) and res < 1e-12
    detail = f"k = {k:.6f} (2.413 +- 0.001), physical root {root:.15f}, max |p(root)| = {res:.1e}"
    assert report_criterion("C2 coupling coefficient and cubic root", ok, detail)


def test_c3_equal_amplitudes(ref_modal, report_criterion):
    y0 = math.sqrt(ref_modal.y_even * ref_modal.y_odd)
    g = turn_responses(TurnConfig(ref_modal, 0.05, y0, 15)).v2.gains[:3]
    spread = max(g) / min(g) - 1
    ok = spread < 5e-3 and all(0.410 <= x <= 0.418 for x in g)
    detail = f"leading v2 gains {', '.join(f'{x:.6f}' for x in g)}; spread {spread:.2e} (tol 5e-3)"
    assert report_criterion("C3 equal-amplitude reproduction", ok, detail)


def test_c4_oracle_equivalence(suite, report_criterion):
    configs, ocfg = suite
    t0 = time.perf_counter()
    worst = {"V1": 0.0, "V2": 0.0, "V3": 0.0}
    for cfg in configs:
        for node, v in oracle_deviation(cfg, ocfg).items():
            worst[node] = max(worst[node], v)
    elapsed = time.perf_counter() - t0
    ok = len(configs) >= 100 and max(worst.values()) < 1e-2 and elapsed < RUNTIME_BUDGET_S
    detail = (
        f"{len(configs)} configs at n = {ocfg.n_samples}, worst deviation "
        + ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
        + f" (tol 1e-2), {elapsed:.1f} s (budget {RUNTIME_BUDGET_S:.0f} s)"
    )
    assert report_criterion("C4 oracle equivalence", ok, detail)


def test_c5_specialization_identity(suite, report_criterion):
    configs, _ = suite
    worst, identical = 0.0, True
    for cfg in configs:
        a = turn_responses(cfg)
        b = coupled_node_responses(
            cfg.modal, cfg.y0, Termination.open(), Termination.short(), cfg.length, cfg.k_ref
        )
        for x, y in ((a.v1, b.v1), (a.v2, b.v2), (a.v3, b.v3), (a.v4, b.v4)):
            worst = max(worst, term_error(x, y))
        identical &= a.v3 == a.v4 and b.v3 == b.v4
    ok = worst <= 1e-12 and identical
    detail = f"{len(configs)} configs, worst per-term relative error {worst:.1e} (tol 1e-12), V3 == V4: {identical}"
    assert report_criterion("C5 closed form equals modal composition", ok, detail)


def _steady_state_error(y0, y1, y2, k_ref=40):
    train = far_response(LineSection(y1, 5e-9, 0.1), y0, Termination.admittance(y2), k_ref)
    return abs(float(np.sum(train.gains)) - 2 * y0 / (y0 + y2))


def test_c6_step_steady_state(report_criterion):
    rng = np.random.default_rng(7)
    worst, worst_case, n = 0.0, None, 0
    while n < 20000:
        y0, y1, y2 = 10 ** rng.uniform(-3.5, -0.5, size=3)
        q = (y1 - y2) / (y1 + y2) * (y1 - y0) / (y0 + y1)
        if abs(q) > 0.5:
            continue
        n += 1
        err = _steady_state_error(y0, y1, y2)
        if err > worst:
            worst, worst_case = err, (y0, y1, y2, q)
    ok = worst <= 1e-9
    y0, y1, y2, q = worst_case
    detail = (
        f"{n} samples with |q| <= 0.5, worst |sum - 2Y0/(Y0+Y2)| = {worst:.2e} (tol 1e-9) "
        f"at Y0={y0:.4g}, Y1={y1:.4g}, Y2={y2:.4g}, q={q:.4f}"
    )
    assert report_criterion("C6 bounce-model step steady state", ok, detail)


def test_c7_equalization_biconditional(report_criterion):
    rng = np.random.default_rng(11)
    fwd_err = scale_err = 0.0
    reverse_ok = True
    for _ in range(1000):
        ye = 10 ** rng.uniform(-3, 0)
        yo = ye * 10 ** rng.uniform(0, 1.5)
        m = ModalParameters(ye, yo, 6e-9, 5e-9)
        y_star = math.sqrt(ye * yo)
        _, v_o, v_e = pulse_amplitudes(m, y_star)
        fwd_err = max(fwd_err, abs(v_o - v_e) / abs(v_e))
        # reverse: away from sqrt(Ye Yo) the modal pulses differ
        y_off = y_star * 10 ** rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-2, 0)
        _, a, b = pulse_amplitudes(m, y_off)
        if yo / ye > 1 + 1e-9:
            reverse_ok &= abs(a - b) > 1e-12
        s = 10 ** rng.uniform(-3, 3)
        ms = ModalParameters(ye * s, yo * s, 6e-9, 5e-9)
        base = pulse_amplitudes(m, y_off)
        scaled = pulse_amplitudes(ms, y_off * s)
        scale_err = max(scale_err, max(abs(x - y) for x, y in zip(base, scaled)))
    ok = fwd_err <= 1e-12 and reverse_ok and scale_err <= 1e-12
    detail = (
        f"1000 samples: max |v_o - v_e|/v_e at matched Y0 {fwd_err:.1e}, "
        f"unequal off-match: {reverse_ok}, max scaling drift {scale_err:.1e} (tol 1e-12)"
    )
    assert report_criterion("C7 equalization biconditional", ok, detail)
