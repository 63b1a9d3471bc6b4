# %% [markdown]
# # Key-rate bounds and the fidelity window
#
# The secret key rate of the protocol depends on two numbers: the error rate
# `delta_z` that Alice and Bob see, and the fidelity `F` between the two states
# Eve ends up holding. This walk-through evaluates the exact rate `R`, the
# log-bound `r_lb` and its quadratic relaxation, then finds the window of
# fidelities for which a positive key is possible.

# %%
import numpy as np

from qkdclone import bounds

# %% [markdown]
# ## Binary entropy
# `h(x)` is in bits and peaks at one bit for a fair coin.

# %%
for x in (0.01, 0.11, 0.25, 0.5):
    print(f"h({x}) = {bounds.binary_entropy(x):.5f}")

# %% [markdown]
# ## The chain of bounds
# For a fidelity inside the window, the quadratic bound sits below the log
# bound, which sits below the exact rate.

# %%
F = 0.95
dz1 = bounds.delta_z_threshold(F)
print(f"threshold at F={F}: {dz1:.4f}")
for dz in np.linspace(0.02, dz1, 5)[:-1]:
    rep = bounds.key_rate_report(F, dz)
    print(f"dz={dz:.3f}  quad={rep.r_lb_quadratic:+.4f}  r_lb={rep.r_lb:+.4f}  R={rep.R:+.4f}")

# %% [markdown]
# At the threshold the quadratic bound is zero by construction.

# %%
print(bounds.r_lb_quadratic(F, dz1))

# %% [markdown]
# ## Windows by bisection
# The window opens where `a(F)` reaches 0.4 and closes where the threshold
# hits 0.305, the end of the range on which the log inequality holds.

# %%
print("fidelity window:", bounds.fidelity_window())
print("WZ alpha^2 window:", bounds.alpha_window_wz())
for xi in (0.1, 0.2, 0.3, 0.4, 0.455, 0.49):
    print(f"BH xi={xi}: {bounds.alpha_window_bh(xi)}")
