# %% [markdown]
# # Monte Carlo protocol runs
#
# Alice prepares states, Eve may intercept and clone them, and Bob measures.
# The two sides then keep the Z-basis rounds, spend a sample of them to
# estimate the error rate, and abort when that estimate reaches the threshold
# for Eve's fidelity.

# %%
import math

from qkdclone.cloners import CloningMachine
from qkdclone.protocol import EveConfig, ProtocolConfig, expected_delta_z, run_protocol

theta = math.acos(math.sqrt(0.4))

# %% [markdown]
# ## No eavesdropper

# %%
out = run_protocol(ProtocolConfig(100_000, theta, seed=1))
print(out.delta_z_hat, out.decision.value, out.final_key_bits_alice == out.final_key_bits_bob)

# %% [markdown]
# ## Full WZ interception
# The expected error rate is `2 alpha^2 beta^2 = 0.48`. That is far above any
# threshold, so the run aborts.

# %%
cfg = ProtocolConfig(100_000, theta, seed=42, eve=EveConfig(CloningMachine.wootters_zurek()))
out = run_protocol(cfg)
print(f"estimate {out.delta_z_hat:.4f}, expected {expected_delta_z(cfg):.4f}, decision {out.decision.value}")

# %% [markdown]
# ## Partial interception and channel noise
# Intercepting only a fraction of the pulses brings the error rate down to the
# range where the abort rule starts to matter.

# %%
for p in (0.02, 0.1, 0.3):
    cfg = ProtocolConfig(100_000, theta, seed=7, eve=EveConfig(CloningMachine.buzek_hillery(0.2), p),
                         depolarizing_noise=0.01)
    out = run_protocol(cfg, workers=4)
    rep = out.key_rate_report
    print(f"p={p}: dz_hat={out.delta_z_hat:.4f} threshold={rep.delta_z_threshold:.4f} -> {out.decision.value}")
