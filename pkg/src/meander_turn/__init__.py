"""Closed-form and frequency-domain pulse responses of a meander-line turn."""
from .bounce import LineSection, Termination, far_response, near_response, primary_components, reflection_far
from .equalization import (
    EqualizationReport,
    check_separation,
    design_equalized,
    equalization_cubic_roots,
    matched_admittance,
    normalized_equal_amplitude,
    pulse_amplitudes,
)
from .errors import (
    ConfigError,
    DegenerateSource,
    EmptyWindow,
    MeanderError,
    NonPositiveDefinite,
    ResonancePole,
    WindowTooShort,
)
from .excitation import ExcitationSpec, PulseTrain, Waveform, measure_pulse_peaks, sample_train, vin_value
from .modal_params import (
    MatrixKind,
    ModalParameters,
    SymmetricMatrix2,
    characteristic_impedance_matrix,
    coupling_coefficient,
    extract_modal,
)
from .oracle import OracleConfig, mode_transfer, turn_oracle
from .turn import NodeResponses, TurnConfig, coupled_node_responses, turn_responses

__version__ = "0.1.0"
