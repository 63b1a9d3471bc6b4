"""Key-rate bounds, the delta_z threshold and the validity windows.

Entropies are in bits. The coefficient ``a`` and the lower bounds built from
it use natural logarithms and carry an explicit 1/ln 2 prefactor, so every
rate returned here is in bits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy.optimize import bisect

from .cloners import fidelity_bh_closed, fidelity_wz_closed
from .constants import A_THRESHOLD, QUADRATIC_COEFF, QUADRATIC_VALIDITY_LIMIT, TOL

__all__ = [
    "OutsideValidityWarning",
    "KeyRateReport",
    "Window",
    "binary_entropy",
    "shor_preskill_rate",
    "woodhead_rate",
    "a_coefficient",
    "r_lb",
    "r_lb_quadratic",
    "in_quadratic_validity",
    "delta_z_threshold",
    "quadratic_root",
    "key_rate_report",
    "fidelity_window",
    "alpha_window_wz",
    "alpha_window_bh",
]

LN2 = math.log(2.0)


class OutsideValidityWarning(UserWarning):
    """A bound was evaluated where its derivation does not hold."""


class Window(NamedTuple):
    lower: float
    upper: float


def _unit(name: str, x: float):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0.0 else 0.0


def binary_entropy(x: float) -> float:
    _unit("x", x)
    return -(_xlogx(x) + _xlogx(1.0 - x)) / LN2


def shor_preskill_rate(delta_x: float, delta_z: float) -> float:
    return 1.0 - binary_entropy(delta_x) - binary_entropy(delta_z)


def woodhead_rate(F: float, delta_z: float) -> float:
    """R = 1 - h((1 + F)/2) - h(delta_z)."""
    _unit("F", F)
    return 1.0 - binary_entropy((1.0 + F) / 2.0) - binary_entropy(delta_z)


def a_coefficient(F: float) -> float:
    """ln 2 + u ln u + (1-u) ln(1-u) with u = (1+F)/2, in nats."""
    _unit("F", F)
    u = (1.0 + F) / 2.0
    return LN2 + _xlogx(u) + _xlogx(1.0 - u)


def r_lb(F: float, delta_z: float) -> float:
    """(a + dz ln dz - dz) / ln 2.

    At ``delta_z = 0`` this returns the limit a / ln 2.
    """
    _unit("delta_z", delta_z)
    return (a_coefficient(F) + _xlogx(delta_z) - delta_z) / LN2


def in_quadratic_validity(delta_z: float) -> bool:
    return 0.0 < delta_z < QUADRATIC_VALIDITY_LIMIT


def r_lb_quadratic(F: float, delta_z: float) -> float:
    """(a + (dz^2 - 1)/2.5 - dz) / ln 2.

    Only a lower bound on :func:`r_lb` for ``0 < delta_z < 0.305``; outside
    that interval the value is still returned but an
    :class:`OutsideValidityWarning` is emitted.
    """
    _unit("delta_z", delta_z)
    if not in_quadratic_validity(delta_z):
        warnings.warn(
            f"delta_z={delta_z!r} is outside (0, {QUADRATIC_VALIDITY_LIMIT}); "
            "the quadratic lower bound is not guaranteed there",
            OutsideValidityWarning,
            stacklevel=2,
        )
    return (
        a_coefficient(F) + (delta_z**2 - 1.0) / QUADRATIC_COEFF - delta_z
    ) / LN2


def quadratic_root(a: float) -> float:
    """Smaller root of dz^2 - 2.5 dz + (2.5 a - 1), for any a.

    The discriminant 10.25 - 10 a is positive for every a <= ln 2; the larger
    root exceeds 1 and is never a valid error rate.
    """
    c = QUADRATIC_COEFF
    return (c - math.sqrt(c * c - 4.0 * (c * a - 1.0))) / 2.0


def delta_z_threshold(F: float) -> Optional[float]:
    """Largest error rate keeping the quadratic lower bound positive.

    Returns None when a(F) <= 0.4, i.e. no positive error rate is tolerated.
    """
    a = a_coefficient(F)
    if not a > A_THRESHOLD:
        return None
    return quadratic_root(a)


@dataclass(frozen=True)
class KeyRateReport:
    fidelity: float
    delta_z: float
    R: float
    r_lb: float
    r_lb_quadratic: float
    delta_z_threshold: Optional[float]
    quadratic_valid: bool
    positive: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def key_rate_report(F: float, delta_z: float) -> KeyRateReport:
    """Evaluate every bound at (F, delta_z).

    ``positive`` is the strict test ``delta_z < delta_z_threshold(F)``.
    """
    threshold = delta_z_threshold(F)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutsideValidityWarning)
        quad = r_lb_quadratic(F, delta_z)
    return KeyRateReport(
        fidelity=F,
        delta_z=delta_z,
        R=woodhead_rate(F, delta_z),
        r_lb=r_lb(F, delta_z),
        r_lb_quadratic=quad,
        delta_z_threshold=threshold,
        quadratic_valid=in_quadratic_validity(delta_z),
        positive=threshold is not None and delta_z < threshold,
    )


def _solve(f, lo, hi) -> float:
    return bisect(f, lo, hi, xtol=TOL.bisection_xtol)


def fidelity_window() -> Window:
    """Fidelities for which a positive, valid delta_z threshold exists.

    The window opens where a(F) = 0.4 and closes where the threshold reaches
    the 0.305 validity limit of the quadratic log bound.
    """
    lower = _solve(lambda F: a_coefficient(F) - A_THRESHOLD, 0.0, 1.0)
    upper = _solve(
        lambda F: quadratic_root(a_coefficient(F)) - QUADRATIC_VALIDITY_LIMIT,
        lower,
        1.0,
    )
    return Window(lower, upper)


def alpha_window_wz() -> Window:
    """alpha^2 in (0, 0.5) whose WZ fidelity lies in the fidelity window."""
    f_lo, f_hi = fidelity_window()
    lower = _solve(lambda x: fidelity_wz_closed(x) - f_lo, 0.0, 0.5)
    upper = _solve(lambda x: fidelity_wz_closed(x) - f_hi, 0.0, 0.5)
    return Window(lower, upper)


def alpha_window_bh(xi: float) -> Optional[Window]:
    """alpha^2 in (0, 0.5) whose modified-BH fidelity lies in the fidelity window.

    F_BH increases with alpha^2 on (0, 0.5) from 4 xi (1 - xi) up to 1, so
    the lower end is 0 when the machine alone already clears the window
    floor, and there is no window once 4 xi (1 - xi) reaches the ceiling.
    """
    if not 0.0 < xi <= 0.5:
        raise ValueError(f"xi must lie in (0, 0.5], got {xi!r}")
    f_lo, f_hi = fidelity_window()
    floor = fidelity_bh_closed(0.0, xi)
    if floor >= f_hi:
        return None
    if floor >= f_lo:
        lower = 0.0
    else:
        lower = _solve(lambda x: fidelity_bh_closed(x, xi) - f_lo, 0.0, 0.5)
    upper = _solve(lambda x: fidelity_bh_closed(x, xi) - f_hi, 0.0, 0.5)
    return Window(lower, upper)
