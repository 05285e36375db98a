# %% [markdown]
# # Two-user average-power region
#
# Each user sends a nonnegative intensity with mean E_k; the receiver sees the
# sum in Gaussian noise.  This walk-through builds the outer pentagon, the
# five-corner inner polytope and the closed-form inner pentagon at
# SNR = (10, 5), then shows how the gap closes as the SNR grows.

# %%
import math

import numpy as np

from oimac import (
    ap_asymptotic_region_2u,
    ap_inner_corners_2u,
    ap_inner_hrep_2u,
    ap_outer_2u,
    ap_region_gap_table,
    corners_from_hrep_2d,
    vrep_in_hrep,
)

pt = (10.0, 5.0)

# %% [markdown]
# The outer bound is a pentagon with unit coefficients.

# %%
outer = ap_outer_2u(pt)
for label, b in zip(outer.labels, outer.bounds):
    print(f"{label:8s} <= {b / math.log(2):.4f} bits")

# %% [markdown]
# Inner corners: exponential inputs decoded in either order give the two
# middle corners; a geometric lattice input gives the axis corners.

# %%
inner = ap_inner_corners_2u(pt)
for label, p, err in zip(inner.labels, inner.points, inner.est_error):
    print(f"{label:10s} ({p[0]:.4f}, {p[1]:.4f}) nats  +/- {err:.0e}")

ok, worst = vrep_in_hrep(inner.to_vregion(), outer, 3 * inner.est_error.max())
print("inner inside outer:", ok, "worst violation", worst)

# %% [markdown]
# The closed-form inner pentagon needs no quadrature at all.

# %%
closed = corners_from_hrep_2d(ap_inner_hrep_2u(pt))
print(np.round(closed.corners, 4))

# %% [markdown]
# Per-constraint distance of the asymptotic region from the inner bound
# (negative: the asymptotic bound sits just inside) and from the outer bound.
# Both shrink as the SNRs grow.

# %%
for scale in (1, 10, 100):
    for name, below, above in ap_region_gap_table((10.0 * scale, 5.0 * scale)):
        print(f"x{scale:<4d}{name:6s} asymptotic - inner {below:+.5f}   outer - asymptotic {above:+.5f}")

# %% [markdown]
# At high SNR both bounds approach the asymptotic region.

# %%
asym = ap_asymptotic_region_2u((1000.0, 500.0))
print(np.round(asym.corners.points, 4))
print("second-user rate bounds:", asym.second_user_bounds)
