import math

import pytest

from meander_turn.modal_params import MatrixKind, ModalParameters, SymmetricMatrix2

# cross-section matrices of the reference turn
REF_L = (390.34e-9, 309.03e-9)
REF_C = (232.06e-12, -138.12e-12)
REF_ZE, REF_ZO = 86.282, 14.8211


@pytest.fixture
def ref_L():
    return SymmetricMatrix2(*REF_L, MatrixKind.INDUCTANCE)


@pytest.fixture
def ref_C():
    return SymmetricMatrix2(*REF_C, MatrixKind.CAPACITANCE)


@pytest.fixture
def ref_modal():
    """Modal parameters built from the reference Z_e, Z_o and the matrix delays."""
    le, lo = REF_L[0] + REF_L[1], REF_L[0] - REF_L[1]
    ce, co = REF_C[0] + REF_C[1], REF_C[0] - REF_C[1]
    return ModalParameters.from_impedances(REF_ZE, REF_ZO, math.sqrt(le * ce), math.sqrt(lo * co))


_ACCEPTANCE = []


@pytest.fixture
def report_criterion():
    """Record one ``PASS``/``FAIL`` line; all lines are echoed in the terminal summary."""

    def record(label: str, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
