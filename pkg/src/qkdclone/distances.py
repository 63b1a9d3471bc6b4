"""Cloning-efficiency analysis: trace/HS distance bounds and efficiency tables.

The table columns reproduce upper-bound intervals [0, b). Each row also
carries the distances measured on the actual cloner outputs, so the bounds
can be compared with what the machines really produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .bounds import alpha_window_bh, fidelity_window
from .circuits import z_basis_states
from .cloners import CloningMachine, clone, fidelity_closed, fidelity_wz_closed
from .constants import XI_TABLE_CAP
from .qstate import hs_distance, ket, trace_distance

__all__ = [
    "EfficiencyRow",
    "ConditionCheck",
    "trace_dist_sq_upper",
    "hs_upper",
    "condition_check",
    "wz_efficiency_table",
    "bh_efficiency_table",
    "TABLE_WZ_ALPHA_SQ",
    "TABLE_BH_ALPHA_SQ",
]

# alpha^2 rows of the published WZ and modified-BH tables
TABLE_WZ_ALPHA_SQ = (0.293, 0.30, 0.35, 0.40, 0.45, 0.456)
TABLE_BH_ALPHA_SQ = {
    0.1: (0.241, 0.30, 0.35, 0.40, 0.445),
    0.2: (0.155, 0.20, 0.25, 0.30, 0.35, 0.40, 0.426),
    0.3: (0.001, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.39),
    0.4: (0.001, 0.05, 0.10, 0.15, 0.20, 0.25, 0.28),
    0.455: (0.001, 0.011),
}

OK, OUT_OF_DOMAIN, OUT_OF_WINDOW = "ok", "out-of-domain", "out-of-window"


def _unit(name, x):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")


def trace_dist_sq_upper(F: float) -> float:
    """Upper bound 1 - F^2 on the squared trace distance."""
    _unit("F", F)
    return 1.0 - F * F


def hs_upper(F: float) -> float:
    """Upper bound 2 (1 - F^2) on D_HS(rho_E, rho_id)."""
    _unit("F", F)
    return 2.0 * (1.0 - F * F)


@dataclass(frozen=True)
class ConditionCheck:
    """Outcome of testing D_HS(rho_E, rho_id) <= D_HS(rho_E, rho_E')."""

    holds: bool
    hs_eve_ideal: float
    hs_eve_pair: float
    trace_dist_pair: float


def condition_check(m: CloningMachine, alpha_sq: float) -> ConditionCheck:
    """Evaluate the imposed HS condition on the machine's actual outputs.

    ``alpha_sq = 1`` is allowed and sends |0>, the machine's perfect-copy case.
    """
    _unit("alpha_sq", alpha_sq)
    if alpha_sq == 1.0:
        phi, phi_p = ket("0"), ket("1")
    elif alpha_sq == 0.0:
        phi, phi_p = ket("1"), ket("0")
    else:
        phi, phi_p = z_basis_states(alpha_sq)
    out = clone(m, phi)
    rho_e_p = clone(m, phi_p).rho_E
    hs_ideal = hs_distance(out.rho_E, out.rho_id)
    hs_pair = hs_distance(out.rho_E, rho_e_p)
    return ConditionCheck(
        holds=hs_ideal <= hs_pair,
        hs_eve_ideal=hs_ideal,
        hs_eve_pair=hs_pair,
        trace_dist_pair=trace_distance(out.rho_E, rho_e_p),
    )


@dataclass(frozen=True)
class EfficiencyRow:
    xi: Optional[float]
    alpha_sq: float
    fidelity: float
    # half-open intervals [0, bound)
    trace_dist_sq_bound: float
    hs_bound: float
    condition_holds: bool
    measured_trace_dist_sq: float
    measured_hs_pair: float
    measured_hs_ideal: float
    status: str = OK

    @property
    def trace_dist_sq_interval(self) -> tuple[float, float]:
        return (0.0, self.trace_dist_sq_bound)

    @property
    def hs_interval(self) -> tuple[float, float]:
        return (0.0, self.hs_bound)


def _row(m: CloningMachine, alpha_sq: float, status: str) -> EfficiencyRow:
    F = fidelity_closed(m, alpha_sq)
    check = condition_check(m, alpha_sq)
    return EfficiencyRow(
        xi=m.xi,
        alpha_sq=alpha_sq,
        fidelity=F,
        trace_dist_sq_bound=trace_dist_sq_upper(F),
        hs_bound=hs_upper(F),
        condition_holds=check.holds,
        measured_trace_dist_sq=check.trace_dist_pair**2,
        measured_hs_pair=check.hs_eve_pair,
        measured_hs_ideal=check.hs_eve_ideal,
        status=status,
    )


def wz_efficiency_table(alpha_sq_list: Sequence[float] = TABLE_WZ_ALPHA_SQ) -> list[EfficiencyRow]:
    """Rows for the WZ machine.

    Entries outside (0, 0.5) are flagged ``out-of-domain``; entries whose
    fidelity leaves the fidelity window are flagged ``out-of-window``.
    """
    m = CloningMachine.wootters_zurek()
    f_lo, f_hi = fidelity_window()
    rows = []
    for x in alpha_sq_list:
        if not 0.0 < x < 0.5:
            status = OUT_OF_DOMAIN
        elif not f_lo < fidelity_wz_closed(x) < f_hi:
            status = OUT_OF_WINDOW
        else:
            status = OK
        rows.append(_row(m, x, status))
    return rows


def bh_efficiency_table(
    xi_list: Sequence[float] = tuple(TABLE_BH_ALPHA_SQ),
    alpha_grid: Union[Mapping[float, Sequence[float]], Sequence[float]] = TABLE_BH_ALPHA_SQ,
) -> list[EfficiencyRow]:
    """Rows for the modified BH machine.

    ``alpha_grid`` is either one alpha^2 list shared by every xi or a mapping
    from xi to its own list. xi above 0.455 and alpha^2 outside
    ``alpha_window_bh(xi)`` are flagged rather than dropped.
    """
    rows = []
    for xi in xi_list:
        alphas = alpha_grid[xi] if isinstance(alpha_grid, Mapping) else alpha_grid
        m = CloningMachine.buzek_hillery(xi)
        xi_ok = 0.0 < xi <= XI_TABLE_CAP
        window = alpha_window_bh(xi) if xi_ok else None
        for x in alphas:
            if not (xi_ok and 0.0 < x < 0.5):
                status = OUT_OF_DOMAIN
            elif window is None or not window.lower < x < window.upper:
                status = OUT_OF_WINDOW
            else:
                status = OK
            rows.append(_row(m, x, status))
    return rows

