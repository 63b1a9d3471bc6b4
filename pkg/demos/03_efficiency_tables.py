# %% [markdown]
# # Cloning-efficiency tables
#
# Each row gives the cloner's fidelity, the upper bound `1 - F^2` on the
# squared trace distance, and the bound `2(1 - F^2)` on the Hilbert-Schmidt
# distance between Eve's copy and the ideal input. Next to the bounds we list
# the distances measured on the actual output states.

# %%
from qkdclone import distances
from qkdclone.cloners import CloningMachine

# %%
print("alpha^2   F       D^2<    D_HS<   measured HS(E,id)  holds")
for r in distances.wz_efficiency_table():
    print(f"{r.alpha_sq:<8}  {r.fidelity:.4f}  {r.trace_dist_sq_bound:.4f}  {r.hs_bound:.4f}  "
          f"{r.measured_hs_ideal:.4f}             {r.condition_holds}")

# %% [markdown]
# ## Modified BH machine
# The default rows follow each `xi`'s own alpha^2 list. Rows outside the
# window are flagged, not dropped.

# %%
for r in distances.bh_efficiency_table([0.2, 0.4, 0.47], [0.1, 0.25, 0.35]):
    print(r.xi, r.alpha_sq, round(r.fidelity, 4), round(r.hs_bound, 4), r.status)

# %% [markdown]
# ## The imposed HS condition
# The requirement `D_HS(E, ideal) <= D_HS(E, E')` can fail for these machines.
# For WZ at alpha^2 = 0.4 the left side is 0.48 and the right side is 0.08.

# %%
check = distances.condition_check(CloningMachine.wootters_zurek(), 0.4)
print(check)
