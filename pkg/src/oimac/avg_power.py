"""
Capacity-region bounds for the optical intensity MAC under per-user
average-power constraints.

Operating points are optical SNRs ``s_k = E_k / sigma`` (first-power
ratios).  The building blocks are the single-user sandwich

    0.5 ln(1 + c s^2) <= I^E(s) <= C(s) <= 0.5 ln(c (s + 2)^2),   c = e / (2 pi),

where ``I^E`` is the rate of an exponential input, and the observation
that a sum of independent exponential-type inputs can itself be made
exponential (point mass at zero mixed with an exponential).  Rates are
always in nats.
"""
from __future__ import annotations

import functools
import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .distributions import erlang, exponential, make_geometric_spaced
from .errors import ArityError, DomainError, SizeError
from .mutual_information import EST_ERROR_FACTOR, mi_awgn
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, digamma_int, golden_max
from .regions import HRegion, VRegion, subset_hregion

C_OPT = math.e / (2 * math.pi)
MAX_USERS = 6
# log(ell / sigma) search window for the geometric input
LOG_ELL_RANGE = (-6.0, 6.0)
# the geometric search never builds a law with more atoms than this
GEO_ATOM_BUDGET = 1_000_000


class NegativeRateWarning(RuntimeWarning):
    """A numerically negative rate coordinate was clamped to zero."""


@dataclass(frozen=True)
class ApOperatingPoint:
    """Per-user optical SNRs (linear) and the noise scale."""

    snr: tuple
    sigma: float = 1.0

    def __post_init__(self):
        snr = tuple(float(s) for s in np.atleast_1d(self.snr))
        if not snr:
            raise ArityError("at least one user is needed")
        if any(not (math.isfinite(s) and s >= 0) for s in snr):
            raise DomainError(f"SNR values must be finite and nonnegative, got {snr}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError("sigma must be positive")
        object.__setattr__(self, "snr", snr)

    @property
    def users(self) -> int:
        return len(self.snr)


@dataclass(frozen=True)
class CornerSet:
    """Rate tuples with a construction tag and an error estimate per point.

    ``est_error`` accumulates the quadrature error of every numeric term
    that enters the point; ``clamped`` marks points that had a negative
    coordinate set to zero.
    """

    points: np.ndarray
    labels: tuple
    est_error: np.ndarray
    clamped: tuple = field(default=())

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if len(self.labels) != pts.shape[0]:
            raise ArityError("labels must align with points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "est_error", np.asarray(self.est_error, dtype=float).reshape(pts.shape[0]))
        if not self.clamped:
            object.__setattr__(self, "clamped", (False,) * pts.shape[0])

    def to_vregion(self) -> VRegion:
        return VRegion(self.points.shape[1], self.points, self.labels, self.est_error)


def _as_point(pt) -> ApOperatingPoint:
    return pt if isinstance(pt, ApOperatingPoint) else ApOperatingPoint(tuple(pt))


def _require_users(pt: ApOperatingPoint, k: int):
    if pt.users != k:
        raise ArityError(f"expected {k} users, got {pt.users}")


def _size_guard(k: int, max_users: int):
    if k > max_users:
        raise SizeError(f"{k} users exceeds the enumeration guard of {max_users}")


def _clamp(points: np.ndarray, labels, errs=None) -> tuple:
    """Zero out negative rates; warn only when a value is below ``-err``."""
    neg = points < 0
    flags = tuple(bool(r) for r in neg.any(axis=1))
    errs = np.zeros(len(flags)) if errs is None else np.broadcast_to(np.asarray(errs, dtype=float), (len(flags),))
    for lab, row, bad, err in zip(labels, points, flags, errs):
        if bad and row.min() < -err:
            warnings.warn(f"corner {lab} has negative rate {row.min():.3e}; clamped to 0", NegativeRateWarning, stacklevel=3)
    points[neg] = 0.0
    return flags


# ---------------------------------------------------------------------------
# single user


def ap_single_upper(snr: float) -> float:
    """0.5 ln(c (snr + 2)^2): capacity upper bound of the single-user channel."""
    if not snr >= 0:
        raise DomainError("snr must be nonnegative")
    return 0.5 * math.log(C_OPT) + math.log(snr + 2.0)


def ap_single_lower_closed(snr: float) -> float:
    """0.5 ln(1 + c snr^2)."""
    if not snr >= 0:
        raise DomainError("snr must be nonnegative")
    return 0.5 * math.log1p(C_OPT * snr * snr)


def ap_asymptotic_capacity(snr: float) -> float:
    """0.5 ln(c snr^2), the common high-SNR asymptote of both sandwich ends."""
    if not snr > 0:
        raise DomainError("the asymptotic expression needs snr > 0")
    return 0.5 * math.log(C_OPT) + math.log(snr)


@functools.lru_cache(maxsize=4096)
def _ie(snr: float, sigma: float, spec: QuadratureSpec) -> float:
    if snr == 0:
        return 0.0
    return mi_awgn(exponential(snr * sigma), sigma, spec).value


def ap_single_lower_exp(snr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> tuple[float, float]:
    """Rate of the exponential input, numerically and via its closed-form lower bound.

    Returns
    -------
    numeric, closed_form : float
    """
    closed = ap_single_lower_closed(snr)
    return _ie(float(snr), float(sigma), spec), closed


def ie(snr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """I(X; X + Z) for exponential X of mean ``snr * sigma``."""
    if not snr >= 0:
        raise DomainError("snr must be nonnegative")
    return _ie(float(snr), float(sigma), spec)


def _geo_mi(snr, sigma, log_ell, spec):
    return mi_awgn(make_geometric_spaced(snr * sigma, sigma * math.exp(log_ell)), sigma, spec).value


def geo_log_ell_bounds(snr: float) -> tuple[float, float]:
    """Search window for log(ell / sigma), trimmed so laws stay under the atom budget."""
    lo, hi = LOG_ELL_RANGE
    # the truncated law has about 27.6 snr / ell atoms when ell << snr
    floor = math.log(-math.log(1e-12) * snr / GEO_ATOM_BUDGET) + 0.01
    return max(lo, floor), hi


@functools.lru_cache(maxsize=1024)
def _ig(snr: float, sigma: float, spec: QuadratureSpec) -> tuple[float, float]:
    lo, hi = geo_log_ell_bounds(snr)
    x, fx = golden_max(lambda t: _geo_mi(snr, sigma, t, spec), lo, hi, tol=1e-4)
    return fx, sigma * math.exp(x)


def ap_single_lower_geo(snr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> tuple[float, float]:
    """Best rate over geometric inputs on a lattice of spacing ell.

    The maximization runs over log(ell / sigma) with a 33-point pre-scan
    followed by golden-section refinement.

    Returns
    -------
    value : float
        Maximal rate found, nats.
    best_ell : float
        Maximizing lattice spacing, intensity units.
    """
    if not snr > 0:
        raise DomainError("the geometric input needs snr > 0")
    return _ig(float(snr), float(sigma), spec)


# ---------------------------------------------------------------------------
# K users


def _mask_snr(snr, mask) -> float:
    return sum(s for k, s in enumerate(snr) if mask >> k & 1)


def ap_kuser_outer(pt, max_users: int = MAX_USERS) -> HRegion:
    """Outer bound: for every nonempty user set J, sum_J R <= 0.5 ln(c (sum_J s + 2)^2)."""
    pt = _as_point(pt)
    _size_guard(pt.users, max_users)
    bounds = {m: ap_single_upper(_mask_snr(pt.snr, m)) for m in range(1, 1 << pt.users)}
    return subset_hregion(bounds, pt.users)


def ap_kuser_inner_hrep(pt, form: str = "closed_form", spec: QuadratureSpec = DEFAULT_QUADRATURE, max_users: int = MAX_USERS) -> HRegion:
    """Inner bound in halfspace form.

    ``form="closed_form"`` uses 0.5 ln(1 + c (sum_J s)^2) for every user set
    J; ``form="ie_numeric"`` uses the exponential-input rate I^E(sum_J s),
    which is never smaller.
    """
    pt = _as_point(pt)
    _size_guard(pt.users, max_users)
    if form == "closed_form":
        f = ap_single_lower_closed
    elif form == "ie_numeric":
        def f(s):
            return ie(s, pt.sigma, spec)
    else:
        raise DomainError(f"unknown inner-bound form {form!r}")
    bounds = {m: f(_mask_snr(pt.snr, m)) for m in range(1, 1 << pt.users)}
    return subset_hregion(bounds, pt.users)


def ap_kuser_inner_corners(
    pt, active: Sequence[int], spec: QuadratureSpec = DEFAULT_QUADRATURE, max_users: int = MAX_USERS
) -> CornerSet:
    """Successive-decoding corners for the active user set (0-based indices).

    A single active user gets the geometric-input rate.  Otherwise, for
    every ordering of the active users the m-th user in the order gets
    I^E(s_(1) + ... + s_(m)) - I^E(s_(1) + ... + s_(m-1)); inactive users
    transmit nothing and contribute no interference.
    """
    pt = _as_point(pt)
    _size_guard(pt.users, max_users)
    active = sorted(set(int(k) for k in active))
    if not active:
        raise DomainError("active set must be nonempty")
    if active[0] < 0 or active[-1] >= pt.users:
        raise ArityError(f"active users {active} out of range for {pt.users} users")
    unit = EST_ERROR_FACTOR * spec.abs_tol
    points, labels, errs = [], [], []
    if len(active) == 1:
        k = active[0]
        row = np.zeros(pt.users)
        row[k] = ap_single_lower_geo(pt.snr[k], pt.sigma, spec)[0] if pt.snr[k] > 0 else 0.0
        points.append(row)
        labels.append(f"geo[{k + 1}]")
        errs.append(unit)
    else:
        for order in itertools.permutations(active):
            row = np.zeros(pt.users)
            running, prev = 0.0, 0.0
            for k in order:
                running += pt.snr[k]
                cur = ie(running, pt.sigma, spec)
                row[k] = cur - prev
                prev = cur
            points.append(row)
            labels.append("exp[" + ">".join(str(k + 1) for k in order) + "]")
            errs.append(len(order) * unit)
    points = np.array(points)
    clamped = _clamp(points, labels, errs)
    return CornerSet(points, tuple(labels), np.array(errs), clamped)


def ap_kuser_inner_union(pt, spec: QuadratureSpec = DEFAULT_QUADRATURE, max_users: int = MAX_USERS) -> CornerSet:
    """Origin plus the corners of every nonempty active set; their hull is the inner region."""
    pt = _as_point(pt)
    _size_guard(pt.users, max_users)
    points = [np.zeros((1, pt.users))]
    labels = ["origin"]
    errs = [np.zeros(1)]
    clamped = [False]
    for size in range(1, pt.users + 1):
        for active in itertools.combinations(range(pt.users), size):
            cs = ap_kuser_inner_corners(pt, active, spec, max_users)
            points.append(cs.points)
            labels.extend(cs.labels)
            errs.append(cs.est_error)
            clamped.extend(cs.clamped)
    return CornerSet(np.vstack(points), tuple(labels), np.concatenate(errs), tuple(clamped))


# ---------------------------------------------------------------------------
# two users


def ap_outer_2u(pt) -> HRegion:
    """R_i <= upper(s_i), R_1 + R_2 <= upper(s_1 + s_2)."""
    pt = _as_point(pt)
    _require_users(pt, 2)
    return ap_kuser_outer(pt)


def ap_inner_corners_2u(pt, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> CornerSet:
    """The five corners of the geometric/exponential inner polytope.

    (0, 0), (I^G(s1), 0), (I^E(s1), I^E(s1+s2) - I^E(s1)),
    (I^E(s1+s2) - I^E(s2), I^E(s2)), (0, I^G(s2)).
    """
    pt = _as_point(pt)
    _require_users(pt, 2)
    first = ap_kuser_inner_corners(pt, [0], spec)
    both = ap_kuser_inner_corners(pt, [0, 1], spec)
    second = ap_kuser_inner_corners(pt, [1], spec)
    # permutations come out as (1>2), (2>1)
    points = np.vstack([np.zeros((1, 2)), first.points, both.points, second.points])
    labels = ("origin",) + first.labels + both.labels + second.labels
    errs = np.concatenate([[0.0], first.est_error, both.est_error, second.est_error])
    clamped = (False,) + first.clamped + both.clamped + second.clamped
    return CornerSet(points, labels, errs, clamped)


def ap_inner_hrep_2u(pt) -> HRegion:
    """R_i <= 0.5 ln(1 + c s_i^2), R_1 + R_2 <= 0.5 ln(1 + c (s_1 + s_2)^2)."""
    pt = _as_point(pt)
    _require_users(pt, 2)
    return ap_kuser_inner_hrep(pt, "closed_form")


@dataclass(frozen=True)
class AsymptoticRegion:
    """High-SNR region with its corners and the finite-SNR bracket on the second rate.

    ``second_user_bounds[i]`` is ``(lower, upper)`` for the other user's rate
    when user ``i`` (0-based) runs at its single-user rate.
    """

    hrep: HRegion
    corners: CornerSet
    second_user_bounds: tuple


def ap_asymptotic_region_2u(pt) -> AsymptoticRegion:
    """High-SNR capacity region: R_J <= 0.5 ln(c (sum_J s)^2).

    The non-trivial corners are (C_i, ln(1 + s_other / s_i)).  Both bracket
    ends of the other user's rate converge to that second coordinate.
    """
    pt = _as_point(pt)
    _require_users(pt, 2)
    s1, s2 = pt.snr
    if s1 <= 0 or s2 <= 0:
        raise DomainError("the asymptotic region needs both SNRs > 0")
    c1, c2, cs = ap_asymptotic_capacity(s1), ap_asymptotic_capacity(s2), ap_asymptotic_capacity(s1 + s2)
    hrep = subset_hregion({1: c1, 2: c2, 3: cs}, 2, label_prefix="A")
    points = np.array(
        [
            [0.0, 0.0],
            [c1, 0.0],
            [c1, math.log1p(s2 / s1)],
            [math.log1p(s1 / s2), c2],
            [0.0, c2],
        ]
    )
    labels = ("origin", "single[1]", "first[1]", "first[2]", "single[2]")
    clamped = _clamp(points, labels)
    corners = CornerSet(points, labels, np.zeros(5), clamped)
    total = s1 + s2
    bounds = []
    for si in (s1, s2):
        lower = 0.5 * math.log((1 + C_OPT * total * total) / (C_OPT * (si + 2) ** 2))
        upper = 0.5 * math.log(C_OPT * (total + 2) ** 2 / (1 + C_OPT * si * si))
        bounds.append((lower, upper))
    return AsymptoticRegion(hrep, corners, tuple(bounds))


def ap_region_gap_table(pt) -> list[tuple[str, float, float]]:
    """Per-halfspace signed gaps ``(label, asymptotic - inner, outer - asymptotic)``.

    Both columns tend to zero as the SNRs grow.  The first approaches from
    below, since each asymptotic bound drops the ``1 +`` of the closed-form
    inner bound; the second approaches from above.
    """
    pt = _as_point(pt)
    asym = ap_asymptotic_region_2u(pt).hrep
    inner = ap_inner_hrep_2u(pt)
    outer = ap_outer_2u(pt)
    return [
        (lab, float(a - i), float(o - a))
        for lab, a, i, o in zip(("R1", "R2", "R1+R2"), asym.bounds, inner.bounds, outer.bounds)
    ]


# ---------------------------------------------------------------------------
# symmetric analysis


def ap_sum_gap_symmetric(k: int, snr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Outer minus inner sum-rate bound for K users at a common SNR.

    Only the product ``k * snr`` matters: upper(K s) - I^E(K s).
    """
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    if not snr > 0:
        raise DomainError("snr must be positive")
    total = k * snr
    return ap_single_upper(total) - ie(total, sigma, spec)


def type_asymptotic_gap(k: int) -> float:
    """High-SNR sum-rate loss of equal exponential inputs against one exponential input.

    (K - 1) psi(K) - ln(e^(K-1) (K-1)! / K), with psi(K) = H_(K-1) - gamma.
    """
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    k = int(k)
    if k == 1:
        return 0.0
    return (k - 1) * digamma_int(k) - ((k - 1) + math.lgamma(k) - math.log(k))


@dataclass(frozen=True)
class TypeComparison:
    sum_rate_type1: float
    sum_rate_type2: float
    asymptotic_gap: float

    @property
    def finite_gap(self) -> float:
        return self.sum_rate_type1 - self.sum_rate_type2


def ap_type_compare(k: int, snr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> TypeComparison:
    """Sum rate with one aggregate exponential input versus K i.i.d. exponential inputs.

    Type I lets the users' sum be exponential with mean K snr sigma (the
    mixed inputs of the inner bound); type II has each user send an
    exponential of mean snr sigma, so the sum is Erlang(K, snr sigma).
    """
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    if not snr > 0:
        raise DomainError("snr must be positive")
    k = int(k)
    t1 = ie(k * snr, sigma, spec)
    t2 = t1 if k == 1 else mi_awgn(erlang(k, snr * sigma), sigma, spec).value
    return TypeComparison(t1, t2, type_asymptotic_gap(k))


__all__ = [
    "C_OPT",
    "MAX_USERS",
    "ApOperatingPoint",
    "AsymptoticRegion",
    "CornerSet",
    "NegativeRateWarning",
    "TypeComparison",
    "ap_asymptotic_capacity",
    "ap_asymptotic_region_2u",
    "ap_inner_corners_2u",
    "ap_inner_hrep_2u",
    "ap_kuser_inner_corners",
    "ap_kuser_inner_hrep",
    "ap_kuser_inner_union",
    "ap_kuser_outer",
    "ap_outer_2u",
    "ap_region_gap_table",
    "ap_single_lower_closed",
    "ap_single_lower_exp",
    "ap_single_lower_geo",
    "ap_single_upper",
    "ap_sum_gap_symmetric",
    "ap_type_compare",
    "geo_log_ell_bounds",
    "ie",
    "type_asymptotic_gap",
]
