"""Dense state vectors, density operators and the distance/fidelity measures.

Subsystems are ordered row-major: in ``dims = (2, 2, 4)`` the leftmost
factor is the slowest-varying index, matching ``np.kron(a, np.kron(b, c))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, TypeVar

import numpy as np

from .constants import TOL

__all__ = [
    "PureState",
    "DensityOperator",
    "ket",
    "density_from_pure",
    "tensor",
    "partial_trace",
    "fidelity_product_form",
    "fidelity_trace_norm",
    "trace_distance",
    "hs_distance",
    "clamped_eigvalsh",
]


def _as_dims(dims, size):
    if dims is None:
        return (size,)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    if int(np.prod(dims)) != size:
        raise ValueError(f"dims {dims} do not multiply to {size}")
    return dims


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over ``dims`` subsystems."""

    amplitudes: np.ndarray
    dims: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        dims = _as_dims(self.dims, amps.size)
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > TOL.norm:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm_sq!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def normalized(cls, amplitudes, dims=None) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amps / norm, dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "PureState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    matrix: np.ndarray
    dims: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        dims = _as_dims(self.dims, mat.shape[0])
        if np.max(np.abs(mat - mat.conj().T), initial=0.0) > TOL.hermitian:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(mat)
        if abs(tr - 1.0) > TOL.trace:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        lowest = float(np.linalg.eigvalsh(mat)[0])
        if lowest < -TOL.eig_clamp:
            raise ValueError(f"density matrix has negative eigenvalue {lowest!r}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expectation(self, state: PureState) -> float:
        """<state| rho |state>, e.g. the probability of projecting onto ``state``."""
        v = state.amplitudes
        return float(np.vdot(v, self.matrix @ v).real)

    def is_diagonal(self, atol: float = TOL.hermitian) -> bool:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return bool(np.max(np.abs(off), initial=0.0) < atol)


def ket(bits: str) -> PureState:
    """Computational basis state from a bit string, e.g. ``ket("10")``."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"invalid bit string {bits!r}")
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return PureState(amps, (2,) * len(bits))


def density_from_pure(s: PureState) -> DensityOperator:
    v = s.amplitudes
    return DensityOperator(np.outer(v, v.conj()), s.dims)


State = TypeVar("State", PureState, DensityOperator)


def tensor(a: State, b: State, *rest: State) -> State:
    """Kronecker product; dims are concatenated in argument order."""
    items = (a, b, *rest)
    if all(isinstance(x, PureState) for x in items):
        return reduce(
            lambda x, y: PureState(np.kron(x.amplitudes, y.amplitudes), x.dims + y.dims),
            items,
        )
    if all(isinstance(x, DensityOperator) for x in items):
        return reduce(
            lambda x, y: DensityOperator(np.kron(x.matrix, y.matrix), x.dims + y.dims),
            items,
        )
    raise TypeError("tensor() arguments must all be PureState or all DensityOperator")


def partial_trace(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    """Trace out every subsystem not listed in ``keep``.

    The kept subsystems appear in ascending index order in the result.
    """
    n = len(rho.dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    bad = [k for k in keep if not 0 <= k < n]
    if bad:
        raise ValueError(f"invalid subsystem index {bad} for dims {rho.dims}")

    t = rho.matrix.reshape(rho.dims + rho.dims)
    # trace from the highest axis down so lower axis numbers stay valid
    for k in reversed([i for i in range(n) if i not in keep]):
        m = t.ndim // 2
        t = np.trace(t, axis1=k, axis2=k + m)
    kept_dims = tuple(rho.dims[k] for k in keep)
    d = int(np.prod(kept_dims))
    mat = t.reshape(d, d)
    # re-symmetrize so summation order noise never trips the Hermitian check
    return DensityOperator((mat + mat.conj().T) / 2, kept_dims)


def _check_same(rho: DensityOperator, sigma: DensityOperator):
    if rho.matrix.shape != sigma.matrix.shape:
        raise ValueError(
            f"dimension mismatch: {rho.matrix.shape} vs {sigma.matrix.shape}"
        )


def _clamp(values: np.ndarray, what: str) -> np.ndarray:
    if np.any(values < -TOL.eig_clamp):
        raise ValueError(f"{what} has a significantly negative eigenvalue {values.min()!r}")
    return np.clip(values, 0.0, None)


def clamped_eigvalsh(mat: np.ndarray) -> np.ndarray:
    """Eigenvalues of a PSD Hermitian matrix with round-off negatives set to 0."""
    return _clamp(np.linalg.eigvalsh(mat), "matrix")


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(mat)
    w = _clamp(w, "density matrix")
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity_product_form(rho: DensityOperator, sigma: DensityOperator) -> float:
    """(sum_i sqrt(lambda_i))**2 over the eigenvalues lambda_i of rho @ sigma.

    rho @ sigma is similar to sqrt(rho) sigma sqrt(rho), so its spectrum is
    real and non-negative up to round-off; imaginary parts are dropped.
    """
    _check_same(rho, sigma)
    lam = np.linalg.eigvals(rho.matrix @ sigma.matrix)
    if np.max(np.abs(lam.imag), initial=0.0) > TOL.eig_clamp:
        raise ValueError("product rho @ sigma has complex eigenvalues")
    lam = _clamp(lam.real, "product rho @ sigma")
    return float(min(np.sum(np.sqrt(lam)) ** 2, 1.0))


def fidelity_trace_norm(
    rho: DensityOperator, sigma: DensityOperator, squared: bool = True
) -> float:
    """Fidelity through the trace norm ||sqrt(rho) sqrt(sigma)||_1.

    By default the norm is squared so the value is on the same scale as
    :func:`fidelity_product_form`; pass ``squared=False`` for the root form.
    """
    _check_same(rho, sigma)
    m = _psd_sqrt(rho.matrix) @ _psd_sqrt(sigma.matrix)
    root = float(np.sum(np.linalg.svd(m, compute_uv=False)))
    return min(root**2 if squared else root, 1.0)


def trace_distance(rho: DensityOperator, sigma: DensityOperator) -> float:
    _check_same(rho, sigma)
    mu = np.linalg.eigvalsh(rho.matrix - sigma.matrix)
    return float(0.5 * np.sum(np.abs(mu)))


def hs_distance(rho: DensityOperator, sigma: DensityOperator) -> float:
    """Hilbert-Schmidt distance Tr[(rho - sigma)^2], i.e. the *squared* Frobenius norm."""
    _check_same(rho, sigma)
    diff = rho.matrix - sigma.matrix
    return float(np.trace(diff @ diff).real)
