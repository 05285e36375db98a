"""
Numerical building blocks: special functions, root finding, 1-D maximization,
adaptive Gauss-Legendre quadrature, differential entropy and a Monte-Carlo
mutual-information estimator used as an independent cross-check.

All logarithms are natural; every information quantity here is in nats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize, special

from .errors import BracketError, DomainError, InconsistentDensityError

EULER_GAMMA = float(np.euler_gamma)
LN2 = math.log(2.0)
DEFAULT_SEED = 0x01AC
DEFAULT_MC_SAMPLES = 200_000

_GL_ORDER = 20
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy controls for the adaptive panel quadrature.

    Attributes
    ----------
    abs_tol : float
        Absolute error target for entropy integrals, in nats.
    rel_tol : float
        Relative error target for the normalization integral.
    tail_sigma : float
        Noise standard deviations kept beyond the input support.
    max_panels : int
        Hard cap on the number of panels; reaching it stops refinement.
    """

    abs_tol: float = 1e-6
    rel_tol: float = 1e-8
    tail_sigma: float = 8.0
    max_panels: int = 1 << 17

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if not self.tail_sigma >= 6:
            raise DomainError("tail_sigma must be at least 6")
        if int(self.max_panels) != self.max_panels or self.max_panels < 16:
            raise DomainError("max_panels must be an integer >= 16")


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int


# ---------------------------------------------------------------------------
# special functions


def q_function(x: float) -> float:
    """Gaussian tail probability Q(x) = P(N(0,1) > x).

    Evaluated through ``ndtr(-x)`` so that the upper tail keeps full relative
    precision; for x beyond about 38.5 the true value is below the smallest
    float64 subnormal and the result underflows to ``0.0`` (never negative).
    Use :func:`log_q_function` when the magnitude of such tails matters.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("q_function needs a finite argument")
    return float(special.ndtr(-x))


def log_q_function(x: float) -> float:
    """Natural log of Q(x), finite for every finite x."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("log_q_function needs a finite argument")
    return float(special.log_ndtr(-x))


_HARMONIC = [0.0]  # _HARMONIC[k] = H_k, extended on demand with Neumaier summation
_HARMONIC_COMP = [0.0]


def _harmonic(k: int) -> float:
    while len(_HARMONIC) <= k:
        j = len(_HARMONIC)
        s, c = _HARMONIC[-1], _HARMONIC_COMP[-1]
        term = 1.0 / j
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        _HARMONIC.append(t)
        _HARMONIC_COMP.append(c)
    return _HARMONIC[k] + _HARMONIC_COMP[k]


def digamma_int(k: int) -> float:
    """psi(k) = H_{k-1} - gamma for positive integers k (so psi(1) = -gamma)."""
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"digamma_int needs a positive integer, got {k!r}")
    return _harmonic(int(k) - 1) - EULER_GAMMA


def binary_entropy(p: float) -> float:
    """H_2(p) in nats, with H_2(0) = H_2(1) = 0."""
    return float(special.entr(p) + special.entr(1.0 - p))


# ---------------------------------------------------------------------------
# root finding and maximization


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of ``f`` in ``[lo, hi]`` by bisection, to an interval width of ``tol``."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return float(lo)
    if fhi == 0:
        return float(hi)
    if np.sign(flo) == np.sign(fhi):
        raise BracketError(f"f({lo}) and f({hi}) have the same sign")
    return float(optimize.bisect(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=2000))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-6,
    scan_points: int = 33,
) -> tuple[float, float]:
    """Maximize ``f`` on ``[lo, hi]``.

    A uniform pre-scan of ``scan_points`` values locates the best grid cell;
    golden-section search then refines inside the two neighbouring cells.
    On multimodal functions the best point seen anywhere is returned.

    Returns
    -------
    (x, fx)
    """
    if not lo < hi:
        raise DomainError("golden_max needs lo < hi")
    if not tol > 0:
        raise DomainError("tol must be positive")
    if scan_points < 33:
        raise DomainError("scan_points must be at least 33")

    grid = np.linspace(lo, hi, scan_points)
    values = np.array([f(x) for x in grid], dtype=float)
    i = int(np.nanargmax(values))
    best_x, best_f = float(grid[i]), float(values[i])

    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, scan_points - 1)]
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx > best_f:
            best_x, best_f = float(x), float(fx)
    return best_x, best_f


# ---------------------------------------------------------------------------
# quadrature


def _breakpoints(support) -> np.ndarray:
    """Flatten an interval list (or a plain sorted breakpoint list) into breakpoints."""
    pts = []
    for item in support:
        if np.ndim(item) == 0:
            pts.append(float(item))
        else:
            lo, hi = item
            if not hi > lo:
                raise DomainError(f"empty interval ({lo}, {hi})")
            pts.extend((float(lo), float(hi)))
    pts = np.unique(np.asarray(pts, dtype=float))
    if pts.size < 2 or not np.all(np.isfinite(pts)):
        raise DomainError("support must be a finite, nonempty set of intervals")
    return pts


def _initial_edges(a: float, b: float, max_width: float | None, grade: float | None) -> np.ndarray:
    """Panel edges on [a, b]: geometrically graded from both ends, then capped in width."""
    if grade is not None and b - a > 4 * grade:
        half = 0.5 * (b - a)
        steps = grade * (2.0 ** np.arange(0, max(1, int(math.log2(half / grade)) + 1)))
        offsets = np.cumsum(steps)
        offsets = offsets[offsets < half]
        edges = np.concatenate([[a], a + offsets, [a + half], b - offsets[::-1], [b]])
    else:
        edges = np.linspace(a, b, 5)
    if max_width is not None:
        pieces = [edges[:1]]
        for lo, hi in zip(edges[:-1], edges[1:]):
            n = max(1, int(math.ceil((hi - lo) / max_width)))
            pieces.append(np.linspace(lo, hi, n + 1)[1:])
        edges = np.concatenate(pieces)
    return edges


def integrate_panels(
    f: Callable[[np.ndarray], np.ndarray],
    breaks: Sequence[float],
    tols: Sequence[float],
    max_width: float | None = None,
    max_panels: int = DEFAULT_QUADRATURE.max_panels,
    grade: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Adaptive Gauss-Legendre integration of a vector integrand.

    ``f`` maps a 1-D array of abscissae to an array of shape ``(k, n)``.
    Each panel is accepted when the difference between its one-panel and
    two-half-panel estimates is within its share (by width) of ``tols``;
    rejected panels are bisected.  Panels never straddle ``breaks``.

    The initial mesh is graded geometrically away from every breakpoint,
    starting at width ``grade``, and no initial panel is wider than
    ``max_width``.  Features narrower than the initial mesh and away from
    breakpoints can be missed, so callers size these two to the integrand.

    Returns
    -------
    value, error : ndarray of shape (k,)
    """
    breaks = np.asarray(breaks, dtype=float)
    tols = np.asarray(tols, dtype=float)
    total = breaks[-1] - breaks[0]
    edges = [_initial_edges(a, b, max_width, grade) for a, b in zip(breaks[:-1], breaks[1:]) if b > a]
    lo = np.concatenate([e[:-1] for e in edges])
    hi = np.concatenate([e[1:] for e in edges])

    def rule(a, b):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        x = mid[:, None] + half[:, None] * _GL_X
        vals = np.asarray(f(x.ravel()), dtype=float)
        vals = vals.reshape(-1, a.size, _GL_ORDER)
        return (vals @ _GL_W) * half

    whole = rule(lo, hi)
    value = np.zeros(whole.shape[0])
    error = np.zeros(whole.shape[0])
    count = lo.size
    while lo.size:
        mid = 0.5 * (lo + hi)
        left = rule(lo, mid)
        right = rule(mid, hi)
        halves = left + right
        err = np.abs(whole - halves)
        share = (hi - lo) / total
        ok = np.all(err <= tols[:, None] * share, axis=0)
        ok |= (hi - lo) < 1e-13 * total
        if count + np.count_nonzero(~ok) > max_panels:
            ok[:] = True
        value += halves[:, ok].sum(axis=1)
        error += err[:, ok].sum(axis=1)
        bad = ~ok
        count += np.count_nonzero(bad)
        lo, hi = np.concatenate([lo[bad], mid[bad]]), np.concatenate([mid[bad], hi[bad]])
        whole = np.concatenate([left[:, bad], right[:, bad]], axis=1)
    return value, error


def entropy_quadrature(
    density: Callable[[np.ndarray], np.ndarray],
    support,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    max_width: float | None = None,
    grade: float | None = None,
) -> float:
    """Differential entropy -int p log p of a (vectorized) density, in nats.

    Parameters
    ----------
    density : callable
        Vectorized density; values must be finite and nonnegative.
    support : sequence
        Intervals ``(lo, hi)`` covering the support.  Interval ends are
        used as panel breakpoints, so list discontinuities explicitly.
    spec : QuadratureSpec
    max_width, grade : float, optional
        Initial-mesh controls forwarded to :func:`integrate_panels`.  Pass
        ``max_width`` of the order of the narrowest feature when the density
        has many narrow bumps, and ``grade`` of the order of the smoothing
        scale near breakpoints.

    Raises
    ------
    InconsistentDensityError
        If the density integrates to 1 only to worse than ``10 * rel_tol``.
    """
    h, _, _ = entropy_and_mass(density, support, spec, max_width, grade)
    return h


def entropy_and_mass(density, support, spec=DEFAULT_QUADRATURE, max_width=None, grade=None):
    """Like :func:`entropy_quadrature`, also returning (mass, entropy error)."""

    def integrand(x):
        p = np.asarray(density(x), dtype=float)
        return np.stack([p, special.entr(p)])

    breaks = _breakpoints(support)
    (mass, h), (_, err) = integrate_panels(
        integrand, breaks, [spec.rel_tol, spec.abs_tol], max_width, spec.max_panels, grade
    )
    if abs(mass - 1.0) > 10 * spec.rel_tol:
        raise InconsistentDensityError(f"density integrates to {mass!r}, not 1")
    return float(h), float(mass), float(err)


def gaussian_entropy(sigma: float) -> float:
    """h(N(0, sigma^2)) = 0.5 ln(2 pi e sigma^2)."""
    return 0.5 * math.log(2 * math.pi * math.e * sigma * sigma)


# ---------------------------------------------------------------------------
# Monte-Carlo oracle


def mc_mi_estimate(dist, sigma: float, samples: int = DEFAULT_MC_SAMPLES, seed: int = DEFAULT_SEED) -> McEstimate:
    """Monte-Carlo estimate of I(X; X+Z) for Gaussian Z with standard deviation ``sigma``.

    Averages ``log p(y|x) - log p_Y(y)`` over ``samples`` draws.  The draws
    come from ``numpy.random.default_rng(seed)`` in a fixed order (inputs,
    then noise), so the estimate is a pure function of ``(seed, samples)``.
    """
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    if samples < 10_000:
        raise DomainError("mc_mi_estimate needs at least 10^4 samples")
    rng = np.random.default_rng(seed)
    x = dist.sample(rng, samples)
    z = rng.standard_normal(samples) * sigma
    y = x + z
    log_cond = -0.5 * (z / sigma) ** 2 - math.log(sigma * math.sqrt(2 * math.pi))
    with np.errstate(divide="ignore"):
        log_out = np.log(dist.awgn_pdf(y, sigma))
    terms = log_cond - log_out
    mean = float(np.mean(terms))
    std_error = float(np.std(terms, ddof=1) / math.sqrt(samples))
    return McEstimate(mean=mean, std_error=std_error, samples=int(samples), seed=int(seed))
