# %% [markdown]
# # High-SNR gaps
#
# Two closed-form gap profiles.  Under peak constraints the sum-rate gap
# depends only on the amplitude ratio a = n - lambda; under average
# constraints the loss of sending K exponential users instead of one
# exponential sum grows with log K.

# %%
import numpy as np

from oimac import pp_asymptotic_gap, pp_symmetric_asymptotics, pp_worst_gap_lambda, type_asymptotic_gap

# %%
lams = np.linspace(0, 0.99, 12)
for n in (1, 2, 5):
    print(n, np.round([pp_asymptotic_gap(n, l).gap_bits for l in lams], 4))

lam = pp_worst_gap_lambda()
print(f"worst case lambda {lam:.4f}: {pp_asymptotic_gap(1, lam).gap_bits:.4f} bits")

# %% [markdown]
# Equal peaks: the sum capacity exceeds each single-user capacity by one bit.

# %%
print(pp_symmetric_asymptotics(1e4))

# %%
for k in (1, 2, 4, 8, 16, 32, 64, 128):
    print(f"K={k:4d}  gap {type_asymptotic_gap(k):.4f} nats")
