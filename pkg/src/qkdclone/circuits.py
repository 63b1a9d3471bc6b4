"""Alice's two-qubit preparation circuit and the Z-basis signal states.

Gates are ideal unitaries; qubit 1 is the leftmost tensor factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qstate import PureState, ket

__all__ = [
    "PrepParams",
    "gate_hadamard",
    "gate_cnot12",
    "gate_crot",
    "gate_u1",
    "prepare_alice_state",
    "z_basis_states",
    "alice_measure_and_emit",
]

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class PrepParams:
    """Rotation angles of the preparation circuit.

    ``theta1 = 0`` is accepted as a limiting case (it yields a Bell state)
    although physically meaningful settings have ``0 < theta1 < pi/2``.
    """

    theta1: float
    theta2: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta1 < math.pi / 2:
            raise ValueError(f"theta1 must lie in [0, pi/2), got {self.theta1!r}")
        if not 0.0 <= self.theta2 < math.pi / 2:
            raise ValueError(f"theta2 must lie in [0, pi/2), got {self.theta2!r}")

    @classmethod
    def from_alpha_sq(cls, alpha_sq: float, theta2: float = 0.0) -> "PrepParams":
        if not 0.0 < alpha_sq <= 1.0:
            raise ValueError(f"alpha_sq must lie in (0, 1], got {alpha_sq!r}")
        return cls(math.acos(math.sqrt(alpha_sq)), theta2)

    @property
    def alpha(self) -> float:
        return math.cos(self.theta1)

    @property
    def beta(self) -> float:
        return math.sin(self.theta1)


def gate_hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def gate_cnot12() -> np.ndarray:
    """CNOT with qubit 1 as control: swaps |10> and |11>."""
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )


def gate_crot(theta: float) -> np.ndarray:
    """Controlled rotation by ``theta/2`` on the target, control on qubit 1."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    g = np.eye(4, dtype=complex)
    g[2:, 2:] = [[c, -s], [s, c]]
    return g


def gate_u1(theta1: float) -> np.ndarray:
    """Real single-qubit rotation with |0> -> cos(theta1)|0> + sin(theta1)|1>."""
    c, s = math.cos(theta1), math.sin(theta1)
    return np.array([[c, -s], [s, c]], dtype=complex)


def prepare_alice_state(p: PrepParams) -> PureState:
    """Run |00> through U1 (x) I, CNOT12, CROT12(2 theta2), H (x) I, CNOT12.

    With ``theta2 = 0`` the output is
    (cos t1 (|00> + |11>) + sin t1 (|01> - |10>)) / sqrt(2).
    """
    steps = (
        np.kron(gate_u1(p.theta1), _I2),
        gate_cnot12(),
        gate_crot(2 * p.theta2),
        np.kron(gate_hadamard(), _I2),
        gate_cnot12(),
    )
    v = ket("00").amplitudes
    for g in steps:
        v = g @ v
    return PureState.normalized(v, (2, 2))


def z_basis_states(alpha_sq: float) -> tuple[PureState, PureState]:
    """Return (|phi>, |phi'>) = (a|0> + b|1>, a|1> - b|0>), a = sqrt(alpha_sq)."""
    if not 0.0 < alpha_sq < 1.0:
        raise ValueError(f"alpha_sq must lie in (0, 1), got {alpha_sq!r}")
    a, b = math.sqrt(alpha_sq), math.sqrt(1.0 - alpha_sq)
    return PureState.normalized([a, b]), PureState.normalized([-b, a])


def alice_measure_and_emit(
    state: PureState, rng: np.random.Generator
) -> tuple[int, PureState]:
    """Measure qubit 1 in the computational basis and emit qubit 2.

    Returns the outcome bit and the renormalized post-measurement state of
    the second qubit.
    """
    if len(state.dims) != 2 or state.dims[0] != 2:
        raise ValueError(f"expected a qubit (x) system state, got dims {state.dims}")
    blocks = state.amplitudes.reshape(2, -1)
    p0 = float(np.vdot(blocks[0], blocks[0]).real)
    bit = 0 if rng.random() < p0 else 1
    return bit, PureState.normalized(blocks[bit], state.dims[1:])
