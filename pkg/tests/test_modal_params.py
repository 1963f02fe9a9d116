import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meander_turn.errors import NonPositiveDefinite
from meander_turn.modal_params import (
    MatrixKind,
    ModalParameters,
    SymmetricMatrix2,
    characteristic_impedance_matrix,
    coupling_coefficient,
    extract_modal,
)


def test_ref_mode_impedances(ref_L, ref_C):
    m = extract_modal(ref_L, ref_C)
    assert 1 / m.y_odd == pytest.approx(14.8211, rel=1e-4)
    assert 1 / m.y_even == pytest.approx(86.282, rel=1e-4)


def test_ref_mode_delays(ref_L, ref_C):
    # sqrt((L11 +/- L12)(C11 +/- C12)) evaluated by hand: 699.37 nH * 93.94 pF, 81.31 nH * 370.18 pF
    m = extract_modal(ref_L, ref_C)
    assert m.tau_even == pytest.approx(8.1055e-9, rel=1e-4)
    assert m.tau_odd == pytest.approx(5.4863e-9, rel=1e-4)


def test_uncoupled_extraction():
    L = SymmetricMatrix2(250e-9, 0.0, MatrixKind.INDUCTANCE)
    C = SymmetricMatrix2(100e-12, 0.0, MatrixKind.CAPACITANCE)
    m = extract_modal(L, C)
    assert m.y_even == pytest.approx(0.02, rel=1e-14)
    assert m.y_odd == pytest.approx(0.02, rel=1e-14)
    assert m.tau_even == pytest.approx(5e-9, rel=1e-14)
    assert m.tau_odd == pytest.approx(5e-9, rel=1e-14)


@pytest.mark.parametrize(
    "m11, m12, kind",
    [
        (100e-12, -100e-12, "capacitance"),
        (100e-12, 150e-12, "capacitance"),
        (-1e-9, 0.0, "inductance"),
        (300e-9, 300e-9, "inductance"),
    ],
)
def test_rejects_non_positive_definite(m11, m12, kind):
    with pytest.raises(NonPositiveDefinite):
        SymmetricMatrix2(m11, m12, kind)


def test_wrong_matrix_kind_rejected(ref_L, ref_C):
    with pytest.raises(TypeError):
        extract_modal(ref_C, ref_L)


def test_ref_impedance_matrix(ref_L, ref_C):
    z = characteristic_impedance_matrix(extract_modal(ref_L, ref_C))
    assert z.kind is MatrixKind.IMPEDANCE
    assert z.m11 == pytest.approx(50.5516, rel=1e-4)
    assert z.m12 == pytest.approx(35.7304, rel=1e-4)


def test_impedance_matrix_uncoupled():
    z = characteristic_impedance_matrix(ModalParameters(0.02, 0.02, 5e-9, 5e-9))
    assert z.m11 == pytest.approx(50.0)
    assert z.m12 == 0.0


def test_impedance_matrix_exact_modes(ref_modal):
    z = characteristic_impedance_matrix(ref_modal)
    assert z.m11 + z.m12 == pytest.approx(1 / ref_modal.y_even, rel=1e-15)
    assert z.m11 - z.m12 == pytest.approx(1 / ref_modal.y_odd, rel=1e-15)


def test_coupling_coefficient(ref_modal):
    assert coupling_coefficient(ref_modal) == pytest.approx(2.413, abs=1e-3)
    assert coupling_coefficient(ModalParameters(0.02, 0.02, 1e-9, 1e-9)) == 1.0
    assert coupling_coefficient(ModalParameters.from_impedances(100.0, 25.0, 1e-9, 1e-9)) == pytest.approx(2.0)


def test_warns_when_odd_admittance_is_smaller():
    with pytest.warns(RuntimeWarning):
        ModalParameters(0.03, 0.01, 5e-9, 5e-9)


@pytest.mark.parametrize("field", ["y_even", "y_odd", "tau_even", "tau_odd"])
def test_modal_rejects_non_positive(field):
    kw = dict(y_even=0.01, y_odd=0.02, tau_even=5e-9, tau_odd=4e-9)
    kw[field] = 0.0
    with pytest.raises(ValueError):
        ModalParameters(**kw)


pd_pair = st.tuples(
    st.floats(1e-8, 1e-6),  # m11
    st.floats(-0.95, 0.95),  # m12 / m11
)


def _pair(kind, p):
    m11, frac = p
    return SymmetricMatrix2(m11, frac * m11, kind)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
@given(pd_pair, pd_pair)
def test_round_trip_matches_direct_impedances(lp, cp):
    L = _pair(MatrixKind.INDUCTANCE, lp)
    C = _pair(MatrixKind.CAPACITANCE, (cp[0] * 1e-3, cp[1]))
    z = characteristic_impedance_matrix(extract_modal(L, C))
    assert z.m11 + z.m12 == pytest.approx(math.sqrt(L.even / C.even), rel=1e-12)
    assert z.m11 - z.m12 == pytest.approx(math.sqrt(L.odd / C.odd), rel=1e-12)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
@given(pd_pair, pd_pair, st.floats(0.01, 100), st.floats(0.01, 100))
def test_extraction_scale_covariance(lp, cp, a, b):
    L = _pair(MatrixKind.INDUCTANCE, lp)
    C = _pair(MatrixKind.CAPACITANCE, (cp[0] * 1e-3, cp[1]))
    m = extract_modal(L, C)
    s = extract_modal(
        SymmetricMatrix2(a * L.m11, a * L.m12, MatrixKind.INDUCTANCE),
        SymmetricMatrix2(b * C.m11, b * C.m12, MatrixKind.CAPACITANCE),
    )
    assert s.z_even == pytest.approx(m.z_even * math.sqrt(a / b), rel=1e-12)
    assert s.z_odd == pytest.approx(m.z_odd * math.sqrt(a / b), rel=1e-12)
    assert s.tau_even == pytest.approx(m.tau_even * math.sqrt(a * b), rel=1e-12)
    assert s.tau_odd == pytest.approx(m.tau_odd * math.sqrt(a * b), rel=1e-12)


@given(st.floats(1e-4, 1.0), st.floats(1.0, 20.0), st.floats(1e-3, 1e3))
def test_coupling_invariant_under_admittance_scaling(ye, ratio, scale):
    m = ModalParameters(ye, ye * ratio, 5e-9, 4e-9)
    s = ModalParameters(ye * scale, ye * ratio * scale, 5e-9, 4e-9)
    assert coupling_coefficient(s) == pytest.approx(coupling_coefficient(m), rel=1e-12)
