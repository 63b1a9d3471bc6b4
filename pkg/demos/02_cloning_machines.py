# %% [markdown]
# # Two state-dependent cloners
#
# Eve copies each intercepted qubit with either the Wootters-Zurek (WZ) machine
# or a Buzek-Hillery (BH) machine with `eta = 0` and a tunable `xi`. Both act
# as isometries from the input qubit to Bob's copy, Eve's copy and a machine
# register.

# %%
import numpy as np

from qkdclone import circuits, cloners, qstate

wz = cloners.CloningMachine.wootters_zurek()
bh = cloners.CloningMachine.buzek_hillery(0.2)

# %% [markdown]
# ## Alice's states
# The preparation circuit entangles a control qubit with the signal qubit;
# measuring the control leaves the signal in `|phi>` or `|phi'>`.

# %%
theta1 = np.arccos(np.sqrt(0.25))
state = circuits.prepare_alice_state(circuits.PrepParams(theta1))
print(np.round(state.amplitudes, 4))
phi, phi_p = circuits.z_basis_states(0.25)

# %% [markdown]
# ## Eve's reduced states
# Both machines leave Eve with a diagonal state.

# %%
for m in (wz, bh):
    out = cloners.clone(m, phi)
    print(m.label, np.round(np.diag(out.rho_E.matrix).real, 4))

# %% [markdown]
# ## Fidelity: closed form vs the density pipeline

# %%
for m in (wz, bh):
    e, ep = cloners.eve_state_pair(m, 0.25)
    print(m.label, cloners.fidelity_closed(m, 0.25), qstate.fidelity_product_form(e, ep))

# %% [markdown]
# Raising `xi` pushes Eve's two states toward the maximally mixed state, so
# her fidelity approaches 1 and she learns less.

# %%
for xi in (0.05, 0.2, 0.35, 0.5):
    print(xi, round(cloners.fidelity_bh_closed(0.25, xi), 4))
