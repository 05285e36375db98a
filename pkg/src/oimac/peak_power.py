"""
Capacity-region bounds for the optical intensity MAC under per-user
peak-power constraints ``0 <= X_k <= A_k``.

Operating points are optical PNRs ``p_k = A_k / sigma``.  Single-user upper
bounds come from the peak-limited Gaussian channel (the intensity channel
with peak ``A`` behaves like a Gaussian channel with amplitude limit
``A / 2``); lower bounds use a uniform input, and the two-user inner bound
pairs a uniform input for one user with a discrete law for the other that
makes the noiseless sum maximally spread.  Rates are in nats.
"""
from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .avg_power import CornerSet, _clamp
from .distributions import density_convolve, make_maxmass_discrete, uniform
from .errors import ArityError, DomainError
from .mutual_information import EST_ERROR_FACTOR, mi_awgn
from .numerics import DEFAULT_QUADRATURE, LN2, QuadratureSpec, binary_entropy, bisect_root, q_function
from .regions import HRegion, subset_hregion
from .solver import DEFAULT_GRID_POINTS, DEFAULT_TOL, solve_peak_capacity

SQRT_2PIE = math.sqrt(2 * math.pi * math.e)
# ratios within this relative distance of an integer are treated as that integer
INTEGER_SNAP = 1e-9


class SlantedCoefficientWarning(RuntimeWarning):
    """The slanted constraint of the closed-form inner bound has a negative coefficient."""


@dataclass(frozen=True)
class PpOperatingPoint:
    """Per-user optical PNRs (linear) and the noise scale."""

    pnr: tuple
    sigma: float = 1.0

    def __post_init__(self):
        pnr = tuple(float(p) for p in np.atleast_1d(self.pnr))
        if not pnr:
            raise ArityError("at least one user is needed")
        if any(not (math.isfinite(p) and p >= 0) for p in pnr):
            raise DomainError(f"PNR values must be finite and nonnegative, got {pnr}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError("sigma must be positive")
        object.__setattr__(self, "pnr", pnr)

    @property
    def users(self) -> int:
        return len(self.pnr)


@dataclass(frozen=True)
class GapProfile:
    """High-PNR sum-rate gap for peak ratio ``a = n - lambda``."""

    n: int
    lam: float
    gap_nats: float

    @property
    def gap_bits(self) -> float:
        return self.gap_nats / LN2


def _as_point(pt) -> PpOperatingPoint:
    return pt if isinstance(pt, PpOperatingPoint) else PpOperatingPoint(tuple(pt))


def _require_two(pt: PpOperatingPoint):
    if pt.users != 2:
        raise ArityError(f"expected 2 users, got {pt.users}")


def _check_pnr(pnr: float):
    if not (math.isfinite(pnr) and pnr >= 0):
        raise DomainError("pnr must be finite and nonnegative")


def snap_ratio(a: float) -> tuple[float, int]:
    """Return ``(a, ceil(a))`` with near-integer ``a`` snapped to the integer."""
    r = round(a)
    if r >= 1 and abs(a - r) <= INTEGER_SNAP * max(1.0, a):
        a = float(r)
    return a, int(math.ceil(a))


# ---------------------------------------------------------------------------
# single user


def pp_mckellips(pnr: float) -> float:
    """min{ln(1 + p / sqrt(2 pi e)), 0.5 ln(1 + p^2 / 4)}."""
    _check_pnr(pnr)
    return min(math.log1p(pnr / SQRT_2PIE), 0.5 * math.log1p(pnr * pnr / 4.0))


def _tkb_margin(pnr: float) -> float:
    return 0.5 - q_function(pnr) - pnr / (pnr + SQRT_2PIE)


def pp_tkb(pnr: float) -> float | None:
    """H2(1/2 - Q(p)) + (1/2 - Q(p)) ln(p / sqrt(2 pi e)), or ``None`` where it does not apply.

    The bound applies while 1/2 - Q(p) >= p / (p + sqrt(2 pi e)), which
    holds on [0, PNR*].
    """
    _check_pnr(pnr)
    if _tkb_margin(pnr) < 0:
        return None
    if pnr == 0:
        return 0.0
    t = 0.5 - q_function(pnr)
    return binary_entropy(t) + t * math.log(pnr / SQRT_2PIE)


@functools.lru_cache(maxsize=1)
def pp_pnr_star() -> float:
    """Unique PNR in [1, 10] where 1/2 - Q(p) = p / (p + sqrt(2 pi e))."""
    return bisect_root(_tkb_margin, 1.0, 10.0, tol=1e-12)


def pp_single_upper(pnr: float) -> float:
    """Combined upper bound: min(McKellips, TKB) up to PNR*, McKellips beyond."""
    _check_pnr(pnr)
    m = pp_mckellips(pnr)
    if pnr <= pp_pnr_star():
        t = pp_tkb(pnr)
        if t is not None:
            return min(m, t)
    return m


def pp_single_lower_closed(pnr: float) -> float:
    """0.5 ln(1 + p^2 / (2 pi e))."""
    _check_pnr(pnr)
    return 0.5 * math.log1p(pnr * pnr / (SQRT_2PIE * SQRT_2PIE))


@functools.lru_cache(maxsize=4096)
def _iu(pnr: float, sigma: float, spec: QuadratureSpec) -> float:
    if pnr == 0:
        return 0.0
    return mi_awgn(uniform(pnr * sigma), sigma, spec).value


def pp_single_lower_uniform(pnr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> tuple[float, float]:
    """Rate of the uniform input on [0, A], numerically and in closed-form lower-bound form."""
    _check_pnr(pnr)
    return _iu(float(pnr), float(sigma), spec), pp_single_lower_closed(pnr)


def iu(pnr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    _check_pnr(pnr)
    return _iu(float(pnr), float(sigma), spec)


def pp_lemma5_capacity(a: float) -> float:
    """Capacity of Y = X + Z with |X| <= a and Z uniform on [-1, 1].

    ln(n + 1) - (n - a) ln((n + 1) / n), n = ceil(a).
    """
    if not (math.isfinite(a) and a > 0):
        raise DomainError("a must be positive")
    a, n = snap_ratio(a)
    return math.log(n + 1) - (n - a) * math.log((n + 1) / n)


@functools.lru_cache(maxsize=256)
def _solver_capacity(pnr: float, grid_points: int, tol: float):
    return solve_peak_capacity(pnr, grid_points, tol)


# ---------------------------------------------------------------------------
# two users


def pp_outer_2u(pt, refined: bool = False, grid_points: int = DEFAULT_GRID_POINTS, tol: float = DEFAULT_TOL) -> HRegion:
    """R_i <= C(p_i), R_1 + R_2 <= C(p_1 + p_2).

    ``C`` is :func:`pp_single_upper`; with ``refined=True`` it is replaced by
    the solver's upper capacity estimate (achieved rate plus bracket) where
    that is smaller.
    """
    pt = _as_point(pt)
    _require_two(pt)
    p1, p2 = pt.pnr

    def cap(p):
        bound = pp_single_upper(p)
        if refined and p > 0:
            bound = min(bound, _solver_capacity(p, grid_points, tol).upper)
        return bound

    return subset_hregion({1: cap(p1), 2: cap(p2), 3: cap(p1 + p2)}, 2, label_prefix="P")


def iu_plus(a: float, pnr_other: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Rate of X^U + X^D through the Gaussian channel.

    X^U is uniform on [0, A_o] with A_o = ``pnr_other * sigma``; X^D is the
    nonnegative maximum-spread discrete law with ratio ``a`` and spacing A_o,
    so X^U + X^D ranges over [0, (a + 1) A_o].
    """
    if not (a > 0 and pnr_other > 0):
        raise DomainError("iu_plus needs a > 0 and pnr_other > 0")
    return _iu_plus(float(a), float(pnr_other), float(sigma), spec)


@functools.lru_cache(maxsize=1024)
def _iu_plus(a, pnr_other, sigma, spec):
    law = sum_law(a, pnr_other * sigma)
    return mi_awgn(law, sigma, spec).value


def sum_law(a: float, peak_other: float):
    """Law of X^U + X^D for ratio ``a`` and uniform peak ``peak_other``."""
    a, _ = snap_ratio(a)
    return density_convolve(uniform(peak_other), make_maxmass_discrete(a, peak_other, "shifted_nonneg"))


def _cppoic_values(pt: PpOperatingPoint, cppoic, spec):
    """Per-user capacity values, their uncertainty and a source tag."""
    if cppoic is None or cppoic == "solver":
        vals, errs = [], []
        for p in pt.pnr:
            if p == 0:
                vals.append(0.0)
                errs.append(0.0)
            else:
                r = _solver_capacity(p, DEFAULT_GRID_POINTS, DEFAULT_TOL)
                vals.append(r.capacity)
                errs.append(r.bracket_width)
        return vals, errs, "solver"
    if cppoic == "midpoint":
        vals, errs = [], []
        for p in pt.pnr:
            lo = iu(p, pt.sigma, spec)
            hi = pp_single_upper(p)
            vals.append(0.5 * (lo + hi))
            errs.append(0.5 * (hi - lo))
        return vals, errs, "midpoint"
    vals = [float(v) for v in cppoic]
    if len(vals) != pt.users:
        raise ArityError("one capacity value per user is needed")
    return vals, [0.0] * len(vals), "given"


def pp_inner_corners_2u(pt, cppoic=None, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> CornerSet:
    """The five corners of the uniform/discrete inner polytope.

    (0, 0), (C(p1), 0), (I^U(p1), I^U+(a2) - I^U(p1)),
    (I^U+(a1) - I^U(p2), I^U(p2)), (0, C(p2)), with a_i = p_i / p_other and
    C the single-user capacity.

    Parameters
    ----------
    cppoic : None, "solver", "midpoint" or pair of floats
        Source of the single-user capacities.  ``None`` and ``"solver"`` run
        :func:`solve_peak_capacity`; ``"midpoint"`` takes the middle of the
        uniform-input rate and :func:`pp_single_upper`, with the half-width
        added to the corner's error estimate.
    """
    pt = _as_point(pt)
    _require_two(pt)
    p1, p2 = pt.pnr
    if p1 <= 0 or p2 <= 0:
        raise DomainError("the inner corners need both PNRs > 0")
    caps, cap_err, source = _cppoic_values(pt, cppoic, spec)
    unit = EST_ERROR_FACTOR * spec.abs_tol
    u1, u2 = iu(p1, pt.sigma, spec), iu(p2, pt.sigma, spec)
    up2 = iu_plus(p2 / p1, p1, pt.sigma, spec)
    up1 = iu_plus(p1 / p2, p2, pt.sigma, spec)
    points = np.array(
        [
            [0.0, 0.0],
            [caps[0], 0.0],
            [u1, up2 - u1],
            [up1 - u2, u2],
            [0.0, caps[1]],
        ]
    )
    labels = ("origin", f"cap[1]:{source}", "unif[1]+disc[2]", "disc[1]+unif[2]", f"cap[2]:{source}")
    errs = np.array([0.0, cap_err[0] + unit, 2 * unit, 2 * unit, cap_err[1] + unit])
    clamped = _clamp(points, labels, errs)
    return CornerSet(points, labels, errs, clamped)


def pp_cross_lower(a: float, pnr_other: float) -> float:
    """Closed-form lower bound on the sum rate of uniform(other) + discrete(a).

    0.5 ln(1 + (n/(n+1))^(2(n-a)) (n+1)^2 p_o^2 / (2 pi e)), n = ceil(a).
    """
    if not a > 0:
        raise DomainError("a must be positive")
    _check_pnr(pnr_other)
    a, n = snap_ratio(a)
    factor = (n / (n + 1)) ** (2 * (n - a)) * (n + 1) ** 2
    return 0.5 * math.log1p(factor * pnr_other * pnr_other / (SQRT_2PIE * SQRT_2PIE))


def pp_inner_hrep_2u(pt) -> HRegion:
    """Closed-form inner bound: a box plus one slanted halfspace.

    With L_i = 0.5 ln(1 + p_i^2 / (2 pi e)), L_12 the cross bound for user 2's
    discrete law over user 1's uniform law and L_21 the reverse,

        (L1 + L2 - L12) R1 + (L1 + L2 - L21) R2 <= L1 L21 + L2 L12 - L12 L21.

    A negative slanted coefficient is kept as computed and reported through
    :class:`SlantedCoefficientWarning`.
    """
    pt = _as_point(pt)
    _require_two(pt)
    p1, p2 = pt.pnr
    if p1 <= 0 or p2 <= 0:
        raise DomainError("the closed-form inner bound needs both PNRs > 0")
    l1, l2 = pp_single_lower_closed(p1), pp_single_lower_closed(p2)
    l12 = pp_cross_lower(p2 / p1, p1)
    l21 = pp_cross_lower(p1 / p2, p2)
    alpha, beta = l1 + l2 - l12, l1 + l2 - l21
    rhs = l1 * l21 + l2 * l12 - l12 * l21
    if alpha < 0 or beta < 0:
        warnings.warn(
            f"slanted constraint has coefficients ({alpha:.4g}, {beta:.4g}) at PNR {pt.pnr}",
            SlantedCoefficientWarning,
            stacklevel=2,
        )
    coeffs = np.array([[1.0, 0.0], [0.0, 1.0], [alpha, beta]])
    return HRegion(2, coeffs, np.array([l1, l2, rhs]), ("L1", "L2", "slanted"))


# ---------------------------------------------------------------------------
# asymptotics


def pp_asymptotic_gap(n: int, lam: float) -> GapProfile:
    """ln((1 - lam/(n+1)) (1 + 1/n)^lam): high-PNR sum-rate gap for ratio a = n - lam."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    if not (0 <= lam < 1):
        raise DomainError("lambda must lie in [0, 1)")
    n = int(n)
    gap = math.log1p(-lam / (n + 1)) + lam * math.log1p(1.0 / n)
    return GapProfile(n, float(lam), gap)


def pp_worst_gap_lambda() -> float:
    """Maximizer of the n = 1 gap over lambda: 2 - log2(e)."""
    return 2.0 - 1.0 / LN2


def pp_orientation_gaps(pt) -> tuple[GapProfile, GapProfile]:
    """Gap profile for each user's ratio a_i = p_i / p_other."""
    pt = _as_point(pt)
    _require_two(pt)
    p1, p2 = pt.pnr
    if p1 <= 0 or p2 <= 0:
        raise DomainError("gap profiles need both PNRs > 0")
    out = []
    for a in (p1 / p2, p2 / p1):
        a, n = snap_ratio(a)
        out.append(pp_asymptotic_gap(n, n - a))
    return tuple(out)


@dataclass(frozen=True)
class SymmetricAsymptotics:
    c_individual: float
    c_sum: float
    sum_minus_individual_bits: float


def pp_symmetric_asymptotics(pnr: float) -> SymmetricAsymptotics:
    """High-PNR single-user and sum capacities for two users at the same PNR.

    ln(p / sqrt(2 pi e)) and ln(2 p / sqrt(2 pi e)); the difference is one bit.
    """
    if not pnr > 0:
        raise DomainError("pnr must be positive")
    ci = math.log(pnr / SQRT_2PIE)
    cs = math.log(2 * pnr / SQRT_2PIE)
    return SymmetricAsymptotics(ci, cs, (cs - ci) / LN2)


def pp_symmetric_bound_difference(pnr: float, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Sum-rate upper bound minus single-user lower bound at a common PNR, in bits."""
    if not pnr > 0:
        raise DomainError("pnr must be positive")
    return (pp_single_upper(2 * pnr) - iu(pnr, sigma, spec)) / LN2


__all__ = [
    "GapProfile",
    "PpOperatingPoint",
    "SQRT_2PIE",
    "SlantedCoefficientWarning",
    "SymmetricAsymptotics",
    "iu",
    "iu_plus",
    "pp_asymptotic_gap",
    "pp_cross_lower",
    "pp_inner_corners_2u",
    "pp_inner_hrep_2u",
    "pp_lemma5_capacity",
    "pp_mckellips",
    "pp_orientation_gaps",
    "pp_outer_2u",
    "pp_pnr_star",
    "pp_single_lower_closed",
    "pp_single_lower_uniform",
    "pp_single_upper",
    "pp_symmetric_asymptotics",
    "pp_symmetric_bound_difference",
    "pp_tkb",
    "pp_worst_gap_lambda",
    "snap_ratio",
    "sum_law",
]
