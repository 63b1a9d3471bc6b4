"""Seeded Monte Carlo run of the BB84-like protocol with an optional cloner attack.

Every pulse goes through the same steps:

1. Alice picks a basis (Z or X) and a bit uniformly at random. Z-basis
   signals are the pair returned by :func:`circuits.z_basis_states`; X-basis
   signals are (|phi> +- |phi'>)/sqrt(2).
2. With probability ``interception_probability`` Eve clones the signal and
   forwards her B output, a mixed state, to Bob.
3. Depolarizing noise of strength q replaces the state with I/2 with
   probability q.
4. Bob measures in a uniformly chosen basis. Rounds where both used Z form
   the sifted key. A random ``sample_fraction`` of it is revealed to
   estimate delta_z and the rest is kept as key.

Only six distinct states ever reach Bob (four signals, with or without the
cloner), so Bob's Born probabilities are computed once per run and pulses
are then sampled in vectorized blocks.

Random streams: pulses are processed in fixed blocks of ``BLOCK_SIZE``; block
``k`` draws from ``SeedSequence(seed, spawn_key=(k,))`` and the sifted-key
sampling draws from ``SeedSequence(seed, spawn_key=(SAMPLING_STREAM,))``.
The outcome therefore depends only on the seed, never on ``workers``.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .bounds import KeyRateReport, delta_z_threshold, fidelity_window, key_rate_report
from .circuits import PrepParams, prepare_alice_state, z_basis_states
from .cloners import CloningMachine, MachineKind, bob_qber_oracle, clone, fidelity_closed
from .qstate import DensityOperator, PureState, density_from_pure

__all__ = [
    "ConfigError",
    "EveConfig",
    "ProtocolConfig",
    "Decision",
    "ProtocolOutcome",
    "run_protocol",
    "expected_delta_z",
    "BLOCK_SIZE",
]

BLOCK_SIZE = 1 << 15
SAMPLING_STREAM = 2**32 - 1

Z, X = 0, 1


class ConfigError(ValueError):
    """Invalid protocol configuration; ``problems`` maps field -> message."""

    def __init__(self, problems: dict[str, str]):
        self.problems = dict(problems)
        detail = "; ".join(f"{k}: {v}" for k, v in self.problems.items())
        super().__init__(f"invalid protocol config ({detail})")


@dataclass(frozen=True)
class EveConfig:
    machine: CloningMachine
    interception_probability: float = 1.0

    def __post_init__(self):
        p = self.interception_probability
        if not 0.0 <= p <= 1.0:
            raise ConfigError({"eve.interception_probability": f"must lie in [0, 1], got {p!r}"})


@dataclass(frozen=True)
class ProtocolConfig:
    n_pulses: int
    theta1: float
    seed: int
    eve: Optional[EveConfig] = None
    sample_fraction: float = 0.5
    depolarizing_noise: float = 0.0

    def __post_init__(self):
        problems = {}
        if isinstance(self.n_pulses, bool) or not isinstance(self.n_pulses, (int, np.integer)) or self.n_pulses < 1:
            problems["n_pulses"] = f"must be a positive integer, got {self.n_pulses!r}"
        if not 0.0 < self.theta1 < math.pi / 2:
            problems["theta1"] = f"must lie in (0, pi/2), got {self.theta1!r}"
        if not 0.0 < self.sample_fraction < 1.0:
            problems["sample_fraction"] = f"must lie in (0, 1), got {self.sample_fraction!r}"
        if not 0.0 <= self.depolarizing_noise <= 1.0:
            problems["depolarizing_noise"] = f"must lie in [0, 1], got {self.depolarizing_noise!r}"
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            problems["seed"] = f"must be an unsigned 64-bit integer, got {self.seed!r}"
        if problems:
            raise ConfigError(problems)

    @property
    def alpha_sq(self) -> float:
        return math.cos(self.theta1) ** 2

    @classmethod
    def from_dict(cls, data: dict[str, Any], seed: Optional[int] = None) -> "ProtocolConfig":
        """Build a config from its JSON form.

        Exactly one of ``theta1`` or ``alpha_sq`` must be given. ``eve`` is
        ``null`` or ``{"machine": "wz" | {"kind": "bh", "xi": ...},
        "interception_probability": p}``. An explicit ``seed`` argument
        overrides the one in ``data``.
        """
        if not isinstance(data, dict):
            raise ConfigError({"<root>": "config must be a JSON object"})
        known = {"n_pulses", "theta1", "alpha_sq", "eve", "sample_fraction", "seed", "depolarizing_noise"}
        problems = {k: "unknown field" for k in data if k not in known}
        if "n_pulses" not in data:
            problems["n_pulses"] = "required"
        if ("theta1" in data) == ("alpha_sq" in data):
            problems["theta1"] = "give exactly one of theta1 or alpha_sq"
        if seed is None:
            seed = data.get("seed")
        if seed is None:
            problems["seed"] = "required"
        eve = None
        try:
            eve = _eve_from_json(data.get("eve"))
        except ConfigError as exc:
            problems.update(exc.problems)
        if problems:
            raise ConfigError(problems)

        theta1 = data.get("theta1")
        if theta1 is None:
            a2 = data["alpha_sq"]
            if not isinstance(a2, (int, float)) or not 0.0 < a2 < 1.0:
                raise ConfigError({"alpha_sq": f"must lie in (0, 1), got {a2!r}"})
            theta1 = math.acos(math.sqrt(a2))
        try:
            return cls(
                n_pulses=data["n_pulses"],
                theta1=float(theta1),
                seed=seed,
                eve=eve,
                sample_fraction=float(data.get("sample_fraction", 0.5)),
                depolarizing_noise=float(data.get("depolarizing_noise", 0.0)),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError({"<root>": str(exc)}) from None

    def to_dict(self) -> dict[str, Any]:
        eve = None
        if self.eve is not None:
            m = self.eve.machine
            machine = "wz" if m.kind is MachineKind.WOOTTERS_ZUREK else {"kind": "bh", "xi": m.xi}
            eve = {"machine": machine, "interception_probability": self.eve.interception_probability}
        return {
            "n_pulses": int(self.n_pulses),
            "theta1": self.theta1,
            "seed": int(self.seed),
            "eve": eve,
            "sample_fraction": self.sample_fraction,
            "depolarizing_noise": self.depolarizing_noise,
        }


def _eve_from_json(raw) -> Optional[EveConfig]:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ConfigError({"eve": "must be null or an object"})
    spec = raw.get("machine")
    try:
        if spec == "wz" or spec == {"kind": "wz"}:
            machine = CloningMachine.wootters_zurek()
        elif isinstance(spec, dict) and spec.get("kind") == "bh":
            machine = CloningMachine.buzek_hillery(spec.get("xi"))
        else:
            raise ConfigError({"eve.machine": f"expected 'wz' or {{'kind': 'bh', 'xi': ...}}, got {spec!r}"})
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError({"eve.machine": str(exc)}) from None
    extra = set(raw) - {"machine", "interception_probability"}
    if extra:
        raise ConfigError({f"eve.{k}": "unknown field" for k in sorted(extra)})
    p = raw.get("interception_probability", 1.0)
    if not isinstance(p, (int, float)) or isinstance(p, bool):
        raise ConfigError({"eve.interception_probability": f"must be a number, got {p!r}"})
    return EveConfig(machine, float(p))


class Decision(str, enum.Enum):
    CONTINUE = "continue"
    ABORT = "abort"


@dataclass(frozen=True)
class ProtocolOutcome:
    sifted_length: int
    sample_size: int
    errors_in_sample: int
    delta_z_hat: float
    key_rate_report: KeyRateReport
    decision: Decision
    # verdict of the plain Woodhead rate R > 0 at the same (F, delta_z_hat)
    woodhead_decision: Decision
    final_key_bits_alice: str = field(repr=False)
    final_key_bits_bob: str = field(repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "sifted_length": self.sifted_length,
            "sample_size": self.sample_size,
            "errors_in_sample": self.errors_in_sample,
            "delta_z_hat": self.delta_z_hat,
            "key_rate_report": self.key_rate_report.to_dict(),
            "decision": self.decision.value,
            "woodhead_decision": self.woodhead_decision.value,
            "final_key_bits_alice": self.final_key_bits_alice,
            "final_key_bits_bob": self.final_key_bits_bob,
        }


def _signal_states(alpha_sq: float) -> dict[tuple[int, int], PureState]:
    phi, phi_p = z_basis_states(alpha_sq)
    plus = PureState.normalized(phi.amplitudes + phi_p.amplitudes)
    minus = PureState.normalized(phi.amplitudes - phi_p.amplitudes)
    return {(Z, 0): phi, (Z, 1): phi_p, (X, 0): plus, (X, 1): minus}


def _depolarize(rho: DensityOperator, q: float) -> DensityOperator:
    return DensityOperator((1.0 - q) * rho.matrix + q * np.eye(2) / 2.0)


def _bob_zero_probabilities(cfg: ProtocolConfig) -> np.ndarray:
    """P(Bob reads 0) indexed [alice basis, alice bit, intercepted, bob basis]."""
    signals = _signal_states(cfg.alpha_sq)
    probs = np.zeros((2, 2, 2, 2))
    for (basis, bit), s in signals.items():
        received = [density_from_pure(s)]
        received.append(clone(cfg.eve.machine, s).rho_B if cfg.eve is not None else received[0])
        for hit, rho in enumerate(received):
            rho = _depolarize(rho, cfg.depolarizing_noise)
            for bob_basis in (Z, X):
                probs[basis, bit, hit, bob_basis] = rho.expectation(signals[(bob_basis, 0)])
    return np.clip(probs, 0.0, 1.0)


def _alice_bit_zero_probability(cfg: ProtocolConfig) -> float:
    # marginal of Alice's register in the prepared two-qubit state
    amps = prepare_alice_state(PrepParams(cfg.theta1)).amplitudes.reshape(2, 2)
    return float(np.sum(np.abs(amps[0]) ** 2))


def _run_block(cfg: ProtocolConfig, k: int, n: int, probs: np.ndarray, p_bit0: float):
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(k,)))
    a_basis = rng.integers(0, 2, n)
    a_bit = (rng.random(n) >= p_bit0).astype(np.int8)
    p_hit = cfg.eve.interception_probability if cfg.eve is not None else 0.0
    hit = (rng.random(n) < p_hit).astype(np.int8)
    b_basis = rng.integers(0, 2, n)
    p0 = probs[a_basis, a_bit, hit, b_basis]
    b_bit = (rng.random(n) >= p0).astype(np.int8)
    sifted = (a_basis == Z) & (b_basis == Z)
    return a_bit[sifted], b_bit[sifted]


def _bitstring(bits: np.ndarray) -> str:
    return (bits.astype(np.uint8) + ord("0")).tobytes().decode("ascii")


def run_protocol(cfg: ProtocolConfig, workers: int = 1) -> ProtocolOutcome:
    """Simulate ``cfg.n_pulses`` rounds and apply the abort rule.

    The run aborts when the estimated error rate reaches the delta_z threshold
    of the configured machine's closed-form fidelity, or when no threshold
    exists. Without Eve the fidelity is taken at the upper edge of the
    fidelity window, so only channel noise can cause an abort.
    """
    probs = _bob_zero_probabilities(cfg)
    p_bit0 = _alice_bit_zero_probability(cfg)
    sizes = [min(BLOCK_SIZE, cfg.n_pulses - s) for s in range(0, cfg.n_pulses, BLOCK_SIZE)]
    jobs = [(cfg, k, n, probs, p_bit0) for k, n in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _run_block(*job), jobs))
    else:
        parts = [_run_block(*job) for job in jobs]
    alice = np.concatenate([p[0] for p in parts])
    bob = np.concatenate([p[1] for p in parts])

    sifted_length = alice.size
    sample_size = int(math.floor(cfg.sample_fraction * sifted_length + 0.5))
    if sample_size == 0:
        raise ValueError(
            f"error-estimation sample is empty (sifted length {sifted_length}, "
            f"fraction {cfg.sample_fraction})"
        )
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(SAMPLING_STREAM,)))
    in_sample = np.zeros(sifted_length, dtype=bool)
    in_sample[rng.choice(sifted_length, size=sample_size, replace=False)] = True
    errors = int(np.count_nonzero(alice[in_sample] != bob[in_sample]))
    delta_hat = errors / sample_size

    if cfg.eve is not None:
        F = fidelity_closed(cfg.eve.machine, cfg.alpha_sq)
    else:
        F = fidelity_window().upper
    report = key_rate_report(F, delta_hat)
    threshold = delta_z_threshold(F)
    abort = threshold is None or delta_hat >= threshold
    return ProtocolOutcome(
        sifted_length=sifted_length,
        sample_size=sample_size,
        errors_in_sample=errors,
        delta_z_hat=delta_hat,
        key_rate_report=report,
        decision=Decision.ABORT if abort else Decision.CONTINUE,
        woodhead_decision=Decision.CONTINUE if report.R > 0 else Decision.ABORT,
        final_key_bits_alice=_bitstring(alice[~in_sample]),
        final_key_bits_bob=_bitstring(bob[~in_sample]),
    )


def expected_delta_z(cfg: ProtocolConfig) -> float:
    """Analytic Z-basis error rate for ``cfg``.

    Eve contributes p * (oracle error); depolarizing noise q then mixes in a
    coin flip: delta = (1 - q) * p * e_clone + q / 2.
    """
    e = 0.0
    if cfg.eve is not None and cfg.eve.interception_probability > 0:
        e = cfg.eve.interception_probability * bob_qber_oracle(cfg.eve.machine, cfg.alpha_sq)
    q = cfg.depolarizing_noise
    return (1.0 - q) * e + q / 2.0
