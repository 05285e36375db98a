# %% [markdown]
# # Two-user peak-power region
#
# With amplitude limits 0 <= X_k <= A_k the single-user capacity has no closed
# form.  A numerical solver supplies it, bracketed by closed-form bounds,
# and the two-user inner bound pairs a uniform input with a discrete one.

# %%
import math


from oimac import (
    pp_inner_corners_2u,
    pp_outer_2u,
    pp_pnr_star,
    pp_single_lower_uniform,
    pp_single_upper,
    solve_peak_capacity,
    vrep_in_hrep,
)

# %% [markdown]
# Single-user sandwich and the solver in between.

# %%
print(f"upper-bound switch point PNR* = {pp_pnr_star():.6f}")
for pnr in (0.5, 2.0, 10.0):
    lo, closed = pp_single_lower_uniform(pnr)
    r = solve_peak_capacity(pnr)
    print(f"PNR {pnr:5.1f}: {closed:.4f} <= {lo:.4f} <= C = {r.capacity:.4f} (+{r.bracket_width:.0e}) <= {pp_single_upper(pnr):.4f}")

# %% [markdown]
# At moderate PNR the optimal input is discrete.

# %%
print(solve_peak_capacity(3.0).mass_points())

# %% [markdown]
# Region at PNR = (10 dB, 5 dB).

# %%
pt = (10.0, 10**0.5)
inner = pp_inner_corners_2u(pt)
outer = pp_outer_2u(pt)
for label, p in zip(inner.labels, inner.points):
    print(f"{label:18s} ({p[0]:.4f}, {p[1]:.4f}) nats")
print("contained:", vrep_in_hrep(inner.to_vregion(), outer, 3 * inner.est_error.max()))
print("sum-rate outer bound:", round(outer.bound_for([0, 1]) / math.log(2), 4), "bits")
