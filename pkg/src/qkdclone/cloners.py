"""Wootters-Zurek and modified Buzek-Hillery (eta = 0) cloning machines.

Both machines are realized as explicit isometries from the intercepted
qubit into B (x) E (x) M: the copy forwarded to Bob, Eve's copy and the
machine register. The BH machine vectors are embedded as

    |Q0> = sqrt(1-2 xi) e0,  |Q1> = sqrt(1-2 xi) e1,
    |Y0> = sqrt(xi) e2,      |Y1> = sqrt(xi) e3,

which satisfies every inner-product constraint of the transformation with
eta = 0. Any other embedding with the same Gram matrix gives the same
reduced states.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .circuits import z_basis_states
from .qstate import DensityOperator, PureState, density_from_pure, partial_trace

__all__ = [
    "MachineKind",
    "CloningMachine",
    "CloneOutput",
    "machine_isometry",
    "clone",
    "eve_state_pair",
    "fidelity_wz_closed",
    "fidelity_bh_closed",
    "fidelity_closed",
    "bob_qber_oracle",
]

# subsystem positions in the clone output B (x) E (x) M
BOB, EVE, MACHINE = 0, 1, 2


class MachineKind(str, enum.Enum):
    WOOTTERS_ZUREK = "wz"
    BUZEK_HILLERY = "bh"


@dataclass(frozen=True)
class CloningMachine:
    kind: MachineKind
    xi: Optional[float] = None

    def __post_init__(self):
        kind = MachineKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is MachineKind.WOOTTERS_ZUREK:
            if self.xi is not None:
                raise ValueError("the Wootters-Zurek machine takes no xi parameter")
        elif self.xi is None or not 0.0 < self.xi <= 0.5:
            raise ValueError(f"modified BH machine needs 0 < xi <= 0.5, got {self.xi!r}")

    @classmethod
    def wootters_zurek(cls) -> "CloningMachine":
        return cls(MachineKind.WOOTTERS_ZUREK)

    @classmethod
    def buzek_hillery(cls, xi: float) -> "CloningMachine":
        """Modified BH machine; ``xi = 0`` reduces to Wootters-Zurek."""
        if xi == 0:
            return cls.wootters_zurek()
        return cls(MachineKind.BUZEK_HILLERY, float(xi))

    @property
    def machine_dim(self) -> int:
        return 2 if self.kind is MachineKind.WOOTTERS_ZUREK else 4

    @property
    def label(self) -> str:
        if self.kind is MachineKind.WOOTTERS_ZUREK:
            return "WZ"
        return f"BH(xi={self.xi:g})"


@dataclass(frozen=True)
class CloneOutput:
    rho_BE: DensityOperator
    rho_E: DensityOperator
    rho_B: DensityOperator
    rho_id: DensityOperator


def machine_isometry(m: CloningMachine) -> np.ndarray:
    """Matrix V of shape (4 * d_M, 2) with columns V|0> and V|1>."""
    d = m.machine_dim
    e = np.eye(d)
    k0, k1 = np.array([1.0, 0.0]), np.array([0.0, 1.0])

    def out(b, e_bit, machine_vec):
        return np.kron(np.kron(b, e_bit), machine_vec)

    if m.kind is MachineKind.WOOTTERS_ZUREK:
        col0 = out(k0, k0, e[0])
        col1 = out(k1, k1, e[1])
    else:
        q = math.sqrt(1.0 - 2.0 * m.xi)
        y = math.sqrt(m.xi)
        sym = lambda vec: out(k0, k1, vec) + out(k1, k0, vec)  # noqa: E731
        col0 = out(k0, k0, q * e[0]) + sym(y * e[2])
        col1 = out(k1, k1, q * e[1]) + sym(y * e[3])
    return np.column_stack([col0, col1]).astype(complex)


def clone(m: CloningMachine, state: PureState) -> CloneOutput:
    if state.dim != 2:
        raise ValueError(f"input must be a single qubit, got dimension {state.dim}")
    v = machine_isometry(m) @ state.amplitudes
    full = density_from_pure(PureState.normalized(v, (2, 2, m.machine_dim)))
    rho_be = partial_trace(full, [BOB, EVE])
    return CloneOutput(
        rho_BE=rho_be,
        rho_E=partial_trace(rho_be, [1]),
        rho_B=partial_trace(rho_be, [0]),
        rho_id=density_from_pure(state),
    )


def eve_state_pair(
    m: CloningMachine, alpha_sq: float
) -> tuple[DensityOperator, DensityOperator]:
    """Eve's copies (rho_E, rho_E') of |phi> and |phi'>."""
    phi, phi_p = z_basis_states(alpha_sq)
    return clone(m, phi).rho_E, clone(m, phi_p).rho_E


def _check_unit(name, value, upper=1.0):
    if not 0.0 <= value <= upper:
        raise ValueError(f"{name} must lie in [0, {upper}], got {value!r}")


def fidelity_wz_closed(alpha_sq: float) -> float:
    _check_unit("alpha_sq", alpha_sq)
    return 4.0 * alpha_sq * (1.0 - alpha_sq)


def fidelity_bh_closed(alpha_sq: float, xi: float) -> float:
    _check_unit("alpha_sq", alpha_sq)
    _check_unit("xi", xi, 0.5)
    return 4.0 * (alpha_sq * (1.0 - alpha_sq) * (1.0 - 2.0 * xi) ** 2 + xi * (1.0 - xi))


def fidelity_closed(m: CloningMachine, alpha_sq: float) -> float:
    if m.kind is MachineKind.WOOTTERS_ZUREK:
        return fidelity_wz_closed(alpha_sq)
    return fidelity_bh_closed(alpha_sq, m.xi)


def bob_qber_oracle(m: CloningMachine, alpha_sq: float) -> float:
    """Z-basis error rate at Bob when every signal is cloned by ``m``.

    Averages 1 - <S| rho_B |S> over the two equiprobable Z states.
    ``alpha_sq`` may be 0 or 1 (a computational basis state is sent).
    """
    _check_unit("alpha_sq", alpha_sq)
    a, b = math.sqrt(alpha_sq), math.sqrt(1.0 - alpha_sq)
    phi = PureState.normalized([a, b])
    phi_p = PureState.normalized([-b, a])
    err = 0.0
    for s in (phi, phi_p):
        err += 1.0 - clone(m, s).rho_B.expectation(s)
    return err / 2.0
