"""
Input laws for the optical intensity channel and their algebra.

An :class:`InputDistribution` is a finite set of point masses plus a finite
sum of weighted continuous pieces.  Every piece knows how to sample itself
and how to evaluate its density after convolution with Gaussian noise; for
the exponential and uniform pieces the smoothed density is closed form,
other pieces fall back to Gauss-Legendre convolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import special, stats

from .errors import DomainError, SizeError
from .numerics import _GL_W, _GL_X, digamma_int

ATOM_MERGE_RTOL = 1e-9
GEOMETRIC_TAIL = 1e-12
MAX_ATOMS = 5_000_000
# Gaussian kernel cut-off, in noise standard deviations, for mixture sums
KERNEL_WINDOW = 10.0
# continuous pieces with unbounded support are integrated up to a quantile
# whose tail mass is below this
CONTINUOUS_TAIL = 1e-18
CONV_PANELS = 16

_SQRT2PI = math.sqrt(2 * math.pi)


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if not (np.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")


def _gauss(u, sigma):
    return np.exp(-0.5 * (u / sigma) ** 2) / (sigma * _SQRT2PI)


# ---------------------------------------------------------------------------
# continuous pieces


@dataclass(frozen=True, eq=False)
class ContinuousPart:
    """A normalized continuous density carried with a mixture weight.

    ``hi`` may be infinite; ``upper`` is then a finite cut-off beyond which
    the remaining mass is negligible and is what quadrature uses.
    """

    weight: float
    pdf: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float
    mean: float
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    upper: float
    name: str
    smoothed: Callable[[np.ndarray, float], np.ndarray] | None = None
    breaks: tuple = ()

    def shifted(self, c: float, weight: float | None = None) -> "ContinuousPart":
        pdf, sampler, smoothed = self.pdf, self.sampler, self.smoothed
        return replace(
            self,
            weight=self.weight if weight is None else weight,
            pdf=lambda x: pdf(np.asarray(x) - c),
            lo=self.lo + c,
            hi=self.hi + c,
            mean=self.mean + c,
            upper=self.upper + c,
            sampler=lambda rng, n: sampler(rng, n) + c,
            smoothed=None if smoothed is None else (lambda y, s: smoothed(np.asarray(y) - c, s)),
            breaks=tuple(b + c for b in self.breaks),
            name=f"{self.name}+{c:g}" if c else self.name,
        )

    def gaussian_smoothed(self, y, sigma):
        """Density of (this piece) + N(0, sigma^2) at ``y``."""
        y = np.asarray(y, dtype=float)
        if self.smoothed is not None:
            return self.smoothed(y, sigma)
        return _numeric_smooth(self.pdf, self.lo, self.upper, y, sigma)


def _numeric_smooth(pdf, lo, hi, y, sigma):
    a = np.maximum(lo, y - KERNEL_WINDOW * sigma)
    b = np.minimum(hi, y + KERNEL_WINDOW * sigma)
    out = np.zeros_like(y)
    live = b > a
    if not np.any(live):
        return out
    a, b, yy = a[live], b[live], y[live]
    edges = np.linspace(0.0, 1.0, CONV_PANELS + 1)
    t = (edges[:-1, None] + (edges[1:, None] - edges[:-1, None]) * (_GL_X + 1) / 2).ravel()
    w = np.tile(_GL_W / 2 / CONV_PANELS, CONV_PANELS)
    width = (b - a)[:, None]
    x = a[:, None] + width * t
    vals = pdf(x) * _gauss(yy[:, None] - x, sigma)
    out[live] = (vals @ w) * (b - a)
    return out


def _exp_part(mean, weight=1.0):
    rate = 1.0 / mean

    def pdf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            return np.where(x >= 0, rate * np.exp(-np.maximum(x, 0) * rate), 0.0)

    def smoothed(y, sigma):
        # exponentially modified Gaussian, evaluated in the log domain
        s = sigma * rate
        u = y / sigma
        z = s - u
        with np.errstate(over="ignore", under="ignore"):
            log_p = 0.5 * s * s - y * rate + special.log_ndtr(-z)
            # Mills-ratio form avoids the s^2/2 cancellation when the mean is tiny
            mills = np.exp(-0.5 * u * u) * 0.5 * special.erfcx(np.maximum(z, 0.0) / math.sqrt(2))
            return rate * np.where(z > 0, mills, np.exp(log_p))

    return ContinuousPart(
        weight=weight,
        pdf=pdf,
        lo=0.0,
        hi=math.inf,
        mean=mean,
        sampler=lambda rng, n: rng.exponential(mean, n),
        upper=-mean * math.log(CONTINUOUS_TAIL),
        name=f"exp({mean:g})",
        smoothed=smoothed,
    )


def _uniform_part(lo, hi, weight=1.0):
    width = hi - lo

    def pdf(x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= lo) & (x <= hi), 1.0 / width, 0.0)

    def smoothed(y, sigma):
        u = (y - lo) / sigma
        v = (y - hi) / sigma
        # P(v < N < u) without cancellation in either tail
        right = y > 0.5 * (lo + hi)
        mass = np.where(right, special.ndtr(-v) - special.ndtr(-u), special.ndtr(u) - special.ndtr(v))
        return mass / width

    return ContinuousPart(
        weight=weight,
        pdf=pdf,
        lo=lo,
        hi=hi,
        mean=0.5 * (lo + hi),
        sampler=lambda rng, n: rng.uniform(lo, hi, n),
        upper=hi,
        name=f"unif({lo:g},{hi:g})",
        smoothed=smoothed,
    )


def _erlang_part(shape, scale, weight=1.0):
    log_norm = shape * math.log(scale) + math.lgamma(shape)

    def pdf(x):
        x = np.asarray(x, dtype=float)
        pos = x > 0
        xs = np.where(pos, x, 1.0)
        with np.errstate(divide="ignore"):
            logp = (shape - 1) * np.log(xs) - xs / scale - log_norm
        out = np.where(pos, np.exp(logp), 0.0)
        if shape == 1:
            out = np.where(x == 0, 1.0 / scale, out)
        return out

    return ContinuousPart(
        weight=weight,
        pdf=pdf,
        lo=0.0,
        hi=math.inf,
        mean=shape * scale,
        sampler=lambda rng, n: rng.gamma(shape, scale, n),
        upper=float(stats.gamma.isf(CONTINUOUS_TAIL, shape, scale=scale)),
        name=f"erlang({shape},{scale:g})",
        smoothed=_exp_part(scale).smoothed if shape == 1 else _erlang_smoothed(shape, scale, pdf),
    )


def _erlang_smoothed(shape, scale, pdf):
    """Erlang density convolved with N(0, sigma^2).

    Completing the square gives
    p(y) = exp(-y/scale + sigma^2/(2 scale^2)) sigma^(K-1) J_{K-1}(t) / (scale^K (K-1)!)
    with t = (y - sigma^2/scale)/sigma and J_n(t) = E[(t+W)^n; W > -t].
    J obeys J_n = t J_{n-1} + (n-1) J_{n-2}, which is cancellation-free for
    t >= 0; for t < 0 the convolution is integrated numerically.
    """
    n = shape - 1
    log_norm = shape * math.log(scale) + math.lgamma(shape)

    def smoothed(y, sigma):
        y = np.asarray(y, dtype=float)
        t = (y - sigma * sigma / scale) / sigma
        out = np.empty_like(y)
        pos = t >= 0
        if np.any(pos):
            tp = t[pos]
            # J_0, J_1 with a running log scale to avoid overflow for large t and n
            j_prev = special.ndtr(tp)
            j_cur = tp * j_prev + np.exp(-0.5 * tp * tp) / math.sqrt(2 * math.pi)
            log_scale = np.zeros_like(tp)
            for m in range(2, n + 1):
                j_prev, j_cur = j_cur, tp * j_cur + (m - 1) * j_prev
                big = j_cur > 1e150
                if np.any(big):
                    j_prev = np.where(big, j_prev * 1e-150, j_prev)
                    j_cur = np.where(big, j_cur * 1e-150, j_cur)
                    log_scale = log_scale + np.where(big, 150 * math.log(10), 0.0)
            jn = j_prev if n == 0 else j_cur
            with np.errstate(divide="ignore"):
                logp = (
                    -y[pos] / scale
                    + sigma * sigma / (2 * scale * scale)
                    + n * math.log(sigma)
                    + np.log(jn)
                    + log_scale
                    - log_norm
                )
            out[pos] = np.exp(logp)
        if np.any(~pos):
            out[~pos] = _numeric_smooth(pdf, 0.0, math.inf, y[~pos], sigma)
        return out

    return smoothed


# ---------------------------------------------------------------------------
# the distribution type


def _merge_atoms(x, p, scale):
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    keep = p > 0
    x, p = x[keep], p[keep]
    if x.size == 0:
        return x, p
    order = np.argsort(x, kind="stable")
    x, p = x[order], p[order]
    tol = ATOM_MERGE_RTOL * scale
    new_group = np.concatenate([[True], np.diff(x) > tol])
    idx = np.cumsum(new_group) - 1
    merged_p = np.bincount(idx, weights=p)
    # representative location: mass-weighted mean of the group
    merged_x = np.bincount(idx, weights=p * x) / merged_p
    return merged_x, merged_p


@dataclass(frozen=True, eq=False)
class InputDistribution:
    """Point masses plus weighted continuous pieces.

    Attributes
    ----------
    atom_x, atom_p : ndarray
        Sorted atom locations and their masses.
    parts : tuple of ContinuousPart
    name : str
    """

    atom_x: np.ndarray
    atom_p: np.ndarray
    parts: tuple = ()
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        total = float(np.sum(self.atom_p)) + sum(part.weight for part in self.parts)
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"{self.name}: total mass {total!r} is not 1")
        if np.any(self.atom_p <= 0) or np.any(self.atom_p > 1 + 1e-15):
            raise DomainError(f"{self.name}: atom masses must lie in (0, 1]")

    @property
    def kind(self) -> str:
        if self.parts and self.atom_x.size:
            return "mixed"
        return "continuous" if self.parts else "discrete"

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.atom_x.tolist(), self.atom_p.tolist()))

    @property
    def mean(self) -> float:
        return float(np.dot(self.atom_x, self.atom_p)) + sum(p.weight * p.mean for p in self.parts)

    @property
    def support(self) -> tuple[float, float]:
        los = [p.lo for p in self.parts] + ([self.atom_x[0]] if self.atom_x.size else [])
        his = [p.hi for p in self.parts] + ([self.atom_x[-1]] if self.atom_x.size else [])
        return float(min(los)), float(max(his))

    @property
    def effective_support(self) -> tuple[float, float]:
        """Like :attr:`support` with unbounded ends replaced by tail cut-offs."""
        lo, _ = self.support
        his = [p.upper for p in self.parts] + ([self.atom_x[-1]] if self.atom_x.size else [])
        return lo, float(max(his))

    @property
    def is_nonnegative(self) -> bool:
        return self.support[0] >= 0

    def density(self, x):
        """Density of the continuous part (a sub-probability density for mixed laws)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for part in self.parts:
            out = out + part.weight * part.pdf(x)
        return out

    def breakpoints(self) -> list[float]:
        pts = []
        for part in self.parts:
            pts.extend((part.lo, part.upper))
            pts.extend(part.breaks)
        return pts

    def min_atom_gap(self) -> float:
        if self.atom_x.size < 2:
            return math.inf
        return float(np.min(np.diff(self.atom_x)))

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        weights = np.concatenate([self.atom_p, [p.weight for p in self.parts]])
        weights = weights / weights.sum()
        labels = rng.choice(weights.size, size=n, p=weights)
        out = np.empty(n)
        n_atoms = self.atom_x.size
        atom_mask = labels < n_atoms
        out[atom_mask] = self.atom_x[labels[atom_mask]]
        for j, part in enumerate(self.parts):
            mask = labels == n_atoms + j
            out[mask] = part.sampler(rng, int(mask.sum()))
        return out

    def awgn_pdf(self, y, sigma: float):
        """Density of X + N(0, sigma^2) at ``y``."""
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        if self.atom_x.size:
            out += gaussian_mixture_pdf(y, self.atom_x, self.atom_p, sigma)
        for part in self.parts:
            out += part.weight * part.gaussian_smoothed(y, sigma)
        return out


def gaussian_mixture_pdf(y, locs, masses, sigma):
    """sum_j masses[j] * N(y; locs[j], sigma^2) with a +-10 sigma kernel cut-off.

    ``locs`` must be sorted.  For every query the atoms inside the cut-off
    window form a contiguous index range; the k-th pass adds the k-th atom
    of each range, so the cost is (queries x atoms per window).
    """
    y = np.asarray(y, dtype=float)
    flat = y.ravel()
    window = KERNEL_WINDOW * sigma
    lo_idx = np.searchsorted(locs, flat - window, side="left")
    hi_idx = np.searchsorted(locs, flat + window, side="right")
    count = hi_idx - lo_idx
    order = np.argsort(-count, kind="stable")
    lo_sorted = lo_idx[order]
    ys = flat[order]
    remaining = np.searchsorted(-count[order], -np.arange(1, count.max(initial=0) + 1), side="right")
    acc = np.zeros_like(ys)
    scale = 1.0 / (sigma * math.sqrt(2 * math.pi))
    for k, n_live in enumerate(remaining):
        idx = lo_sorted[:n_live] + k
        u = (ys[:n_live] - locs[idx]) / sigma
        acc[:n_live] += masses[idx] * np.exp(-0.5 * u * u)
    out = np.empty_like(flat)
    out[order] = acc * scale
    return out.reshape(y.shape)


# ---------------------------------------------------------------------------
# constructors


def point_mass(c: float = 0.0) -> InputDistribution:
    return InputDistribution(np.array([float(c)]), np.array([1.0]), (), f"delta({c:g})")


def discrete(locations, masses, name: str = "discrete", scale: float | None = None) -> InputDistribution:
    """Finite discrete law; atoms closer than 1e-9 * ``scale`` are merged."""
    locations = np.asarray(locations, dtype=float)
    masses = np.asarray(masses, dtype=float)
    if scale is None:
        span = np.ptp(locations) if locations.size > 1 else 0.0
        scale = span if span > 0 else 1.0
    x, p = _merge_atoms(locations, masses, scale)
    return InputDistribution(x, p, (), name)


def exponential(mean: float) -> InputDistribution:
    _check_positive(mean=mean)
    return InputDistribution(np.empty(0), np.empty(0), (_exp_part(float(mean)),), f"exponential({mean:g})")


def uniform(peak: float, lo: float = 0.0) -> InputDistribution:
    _check_positive(peak=peak)
    return InputDistribution(np.empty(0), np.empty(0), (_uniform_part(lo, lo + float(peak)),), f"uniform({peak:g})")


def erlang(shape: int, scale: float) -> InputDistribution:
    if isinstance(shape, bool) or int(shape) != shape or shape < 1:
        raise DomainError(f"Erlang shape must be a positive integer, got {shape!r}")
    _check_positive(scale=scale)
    part = _erlang_part(int(shape), float(scale))
    return InputDistribution(np.empty(0), np.empty(0), (part,), f"erlang({int(shape)},{scale:g})")


def make_basic(kind: str, **params) -> InputDistribution:
    """Build an exponential, uniform or Erlang law.

    >>> make_basic("exponential", mean=5).mean
    5.0
    >>> make_basic("uniform", peak=4).support
    (0.0, 4.0)
    >>> make_basic("erlang", shape=3, scale=2).mean
    6.0
    """
    if kind == "exponential":
        return exponential(params["mean"])
    if kind == "uniform":
        return uniform(params["peak"])
    if kind == "erlang":
        return erlang(params["shape"], params["scale"])
    raise DomainError(f"unknown basic law {kind!r}")


def make_aen_mix(es: float, en: float) -> InputDistribution:
    """Point mass at 0 mixed with an exponential of mean ``es + en``.

    Adding independent exponential noise of mean ``en`` to this input gives
    an exponential output of mean ``es + en``; its own mean is ``es``.
    """
    _check_positive(es=es, en=en)
    total = es + en
    w0 = en / total
    part = _exp_part(total, weight=es / total)
    return InputDistribution(np.array([0.0]), np.array([w0]), (part,), f"aen_mix({es:g},{en:g})")


def make_geometric_spaced(mean: float, ell: float) -> InputDistribution:
    """Geometric law on the lattice {0, ell, 2 ell, ...} with the given mean.

    P(X = m ell) = (ell / (ell + mean)) * (mean / (ell + mean))^m, with the
    tail beyond cumulative mass 1 - 1e-12 dropped and the rest renormalized.
    """
    _check_positive(mean=mean, ell=ell)
    log_q = -math.log1p(ell / mean)
    n_atoms = int(math.ceil(math.log(GEOMETRIC_TAIL) / log_q))
    n_atoms = max(n_atoms, 1)
    if n_atoms > MAX_ATOMS:
        raise SizeError(f"geometric law needs {n_atoms} atoms (limit {MAX_ATOMS}); increase ell")
    m = np.arange(n_atoms, dtype=float)
    p0 = ell / (ell + mean)
    p = p0 * np.exp(m * log_q)
    p /= p.sum()
    dist = InputDistribution(m * ell, p, (), f"geometric({mean:g},{ell:g})", {"ell": float(ell), "nominal_mean": float(mean)})
    return dist


def maxmass_weights(a: float) -> list[Fraction]:
    """Exact masses (n - m) / (n (n + 1)), m = 0..n-1, with n = ceil(a)."""
    n = math.ceil(a)
    return [Fraction(n - m, n * (n + 1)) for m in range(n)]


def make_maxmass_discrete(a: float, spacing: float = 1.0, origin_style: str = "symmetric_pm") -> InputDistribution:
    """Maximum-entropy-output discrete law for uniform noise.

    With n = ceil(a) and masses (n - m) / (n (n + 1)) for m = 0..n-1:

    * ``symmetric_pm`` places each mass twice, at +-(a - 2m) * spacing.  With
      spacing 1 this is the capacity-achieving input for |X| <= a and noise
      uniform on [-1, 1].
    * ``shifted_nonneg`` places each mass at (a - m) * spacing and at
      m * spacing, i.e. the same law mapped affinely onto [0, a * spacing].

    Coinciding atoms (integer ``a``) are merged.
    """
    if not (np.isfinite(a) and a > 0):
        raise DomainError(f"a must be positive, got {a!r}")
    _check_positive(spacing=spacing)
    n = math.ceil(a)
    m = np.arange(n, dtype=float)
    w = np.array([float(f) for f in maxmass_weights(a)])
    if origin_style == "symmetric_pm":
        locs = np.concatenate([(a - 2 * m), -(a - 2 * m)]) * spacing
    elif origin_style == "shifted_nonneg":
        locs = np.concatenate([(a - m), m]) * spacing
    else:
        raise DomainError(f"unknown origin_style {origin_style!r}")
    masses = np.concatenate([w, w])
    dist = discrete(locs, masses, name=f"maxmass({a:g},{origin_style})", scale=spacing)
    p = dist.atom_p / dist.atom_p.sum()
    return InputDistribution(dist.atom_x, p, (), dist.name, {"a": float(a), "n": n, "spacing": float(spacing)})


# ---------------------------------------------------------------------------
# convolution


def _convolve_parts(p1: ContinuousPart, p2: ContinuousPart, panels: int) -> ContinuousPart:
    lo = p1.lo + p2.lo
    hi = p1.hi + p2.hi
    upper = p1.upper + p2.upper
    edges = np.linspace(0.0, 1.0, panels + 1)
    t = (edges[:-1, None] + (edges[1:, None] - edges[:-1, None]) * (_GL_X + 1) / 2).ravel()
    w = np.tile(_GL_W / 2 / panels, panels)
    f1, f2 = p1.pdf, p2.pdf

    def pdf(y):
        y = np.asarray(y, dtype=float)
        shape = y.shape
        y = y.ravel()
        a = np.maximum(p1.lo, y - p2.upper)
        b = np.minimum(p1.upper, y - p2.lo)
        out = np.zeros_like(y)
        live = b > a
        if np.any(live):
            aa, bb, yy = a[live], b[live], y[live]
            for start in range(0, aa.size, 8192):
                sl = slice(start, start + 8192)
                x = aa[sl, None] + (bb[sl] - aa[sl])[:, None] * t
                vals = f1(x) * f2(yy[sl, None] - x)
                out_live = (vals @ w) * (bb[sl] - aa[sl])
                idx = np.flatnonzero(live)[sl]
                out[idx] = out_live
        return out.reshape(shape)

    s1, s2 = p1.sampler, p2.sampler
    return ContinuousPart(
        weight=p1.weight * p2.weight,
        pdf=pdf,
        lo=lo,
        hi=hi,
        mean=p1.mean + p2.mean,
        sampler=lambda rng, n: s1(rng, n) + s2(rng, n),
        upper=upper,
        name=f"({p1.name}*{p2.name})",
        breaks=tuple(sorted({b1 + b2 for b1 in (p1.lo, p1.upper, *p1.breaks) for b2 in (p2.lo, p2.upper, *p2.breaks)})),
    )


def _part_mass(part: ContinuousPart) -> float:
    from .numerics import integrate_panels

    pts = np.unique([part.lo, part.upper, *[b for b in part.breaks if part.lo < b < part.upper]])
    (mass,), _ = integrate_panels(lambda x: part.pdf(x)[None, :], pts, [1e-12])
    return float(mass)


def density_convolve(d1: InputDistribution, d2: InputDistribution) -> InputDistribution:
    """Law of X1 + X2 for independent X1 ~ d1, X2 ~ d2 (both nonnegative).

    Atom pairs give atoms, atom/piece pairs give shifted pieces, and
    piece/piece pairs give a numerically convolved piece (Gauss-Legendre over
    the overlap, refined once if its normalization is off by more than 1e-9).
    """
    if not (d1.is_nonnegative and d2.is_nonnegative):
        raise DomainError("density_convolve needs nonnegative laws")
    xs, ps = [], []
    if d1.atom_x.size and d2.atom_x.size:
        xs.append((d1.atom_x[:, None] + d2.atom_x[None, :]).ravel())
        ps.append((d1.atom_p[:, None] * d2.atom_p[None, :]).ravel())
    parts = []
    for da, db in ((d1, d2), (d2, d1)):
        for x, p in zip(da.atom_x, da.atom_p):
            for part in db.parts:
                parts.append(part.shifted(float(x), weight=float(p) * part.weight))
    for p1 in d1.parts:
        for p2 in d2.parts:
            conv = _convolve_parts(p1, p2, CONV_PANELS)
            if abs(_part_mass(conv) - 1.0) > 1e-9:
                conv = _convolve_parts(p1, p2, 4 * CONV_PANELS)
            parts.append(conv)
    if xs:
        span = max(d1.support[1] + d2.support[1], 1.0)
        ax, ap = _merge_atoms(np.concatenate(xs), np.concatenate(ps), span)
    else:
        ax, ap = np.empty(0), np.empty(0)
    # guard the unit-mass invariant against round-off in the products
    total = ap.sum() + sum(p.weight for p in parts)
    ap = ap / total
    parts = [replace(p, weight=p.weight / total) for p in parts]
    return InputDistribution(ax, ap, tuple(parts), f"{d1.name}+{d2.name}")


# ---------------------------------------------------------------------------
# closed-form entropies


@dataclass(frozen=True)
class ErlangLaw:
    shape: int
    scale: float

    def __post_init__(self):
        if isinstance(self.shape, bool) or int(self.shape) != self.shape or self.shape < 1:
            raise DomainError("Erlang shape must be a positive integer")
        _check_positive(scale=self.scale)


def erlang_entropy(law: ErlangLaw) -> float:
    """h = K + ln((K-1)! E) + (1-K) psi(K), with psi(K) = H_{K-1} - gamma."""
    k = int(law.shape)
    return k + math.lgamma(k) + math.log(law.scale) + (1 - k) * digamma_int(k)


def exponential_entropy(mean: float) -> float:
    return 1.0 + math.log(mean)
