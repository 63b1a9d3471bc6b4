"""Key-rate bounds, cloning machines and protocol simulation for a BB84-like QKD scheme."""

__version__ = "0.1.0"

from .bounds import (
    KeyRateReport,
    a_coefficient,
    alpha_window_bh,
    alpha_window_wz,
    binary_entropy,
    delta_z_threshold,
    fidelity_window,
    key_rate_report,
    r_lb,
    r_lb_quadratic,
    shor_preskill_rate,
    woodhead_rate,
)
from .circuits import PrepParams, prepare_alice_state, z_basis_states
from .cloners import (
    CloningMachine,
    bob_qber_oracle,
    clone,
    eve_state_pair,
    fidelity_bh_closed,
    fidelity_wz_closed,
)
from .distances import bh_efficiency_table, condition_check, wz_efficiency_table
from .protocol import EveConfig, ProtocolConfig, expected_delta_z, run_protocol
from .qstate import (
    DensityOperator,
    PureState,
    density_from_pure,
    fidelity_product_form,
    fidelity_trace_norm,
    hs_distance,
    partial_trace,
    tensor,
    trace_distance,
)

__all__ = [
    "__version__",
    "KeyRateReport",
    "a_coefficient",
    "alpha_window_bh",
    "alpha_window_wz",
    "binary_entropy",
    "delta_z_threshold",
    "fidelity_window",
    "key_rate_report",
    "r_lb",
    "r_lb_quadratic",
    "shor_preskill_rate",
    "woodhead_rate",
    "PrepParams",
    "prepare_alice_state",
    "z_basis_states",
    "CloningMachine",
    "bob_qber_oracle",
    "clone",
    "eve_state_pair",
    "fidelity_bh_closed",
    "fidelity_wz_closed",
    "bh_efficiency_table",
    "condition_check",
    "wz_efficiency_table",
    "EveConfig",
    "ProtocolConfig",
    "expected_delta_z",
    "run_protocol",
    "DensityOperator",
    "PureState",
    "density_from_pure",
    "fidelity_product_form",
    "fidelity_trace_norm",
    "hs_distance",
    "partial_trace",
    "tensor",
    "trace_distance",
]
