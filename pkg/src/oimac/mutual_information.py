"""
Mutual information I(X; X + Z) for Gaussian and for uniform additive noise.

Gaussian noise uses I = h(Y) - h(Z) with h(Y) from adaptive quadrature of
the exact output density.  Uniform noise with a discrete input has a
piecewise-constant output density whose entropy is summed in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .distributions import InputDistribution, _GL_W, _GL_X
from .errors import DomainError, UnsupportedInputError
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, entropy_quadrature, gaussian_entropy

EST_ERROR_FACTOR = 4.0


@dataclass(frozen=True)
class MiResult:
    value: float
    method: str
    est_error: float


def _awgn_support(dist: InputDistribution, sigma: float, spec: QuadratureSpec):
    lo, hi = dist.effective_support
    tail = spec.tail_sigma * sigma
    pts = [lo - tail, hi + tail]
    for b in dist.breakpoints():
        if lo <= b <= hi:
            pts.append(b)
    if dist.atom_x.size:
        pts.extend((float(dist.atom_x[0]), float(dist.atom_x[-1])))
    return sorted(set(pts))


def output_entropy_awgn(dist: InputDistribution, sigma: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """h(X + Z) in nats for Z ~ N(0, sigma^2)."""
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    support = _awgn_support(dist, sigma, spec)
    # well-separated atoms give narrow bumps everywhere, otherwise the output
    # density only has sigma-scale features next to the breakpoints
    if dist.atom_x.size > 1 and dist.min_atom_gap() >= 0.5 * sigma:
        max_width, grade = 4.0 * sigma, None
    else:
        max_width, grade = None, sigma
    return entropy_quadrature(lambda y: dist.awgn_pdf(y, sigma), support, spec, max_width=max_width, grade=grade)


def mi_awgn(dist: InputDistribution, sigma: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> MiResult:
    """I(X; X + Z), Z ~ N(0, sigma^2), by quadrature of h(Y) - h(Z)."""
    h_y = output_entropy_awgn(dist, sigma, spec)
    value = h_y - gaussian_entropy(sigma)
    return MiResult(value=float(value), method="quadrature", est_error=EST_ERROR_FACTOR * spec.abs_tol)


def _discrete_uniform_noise_entropy(x, p, h):
    starts = np.concatenate([x - h, x + h])
    jumps = np.concatenate([p, -p]) / (2 * h)
    order = np.argsort(starts, kind="stable")
    starts, jumps = starts[order], jumps[order]
    level = np.cumsum(jumps)[:-1]
    lengths = np.diff(starts)
    level = np.clip(level, 0.0, None)
    return float(np.sum(lengths * special.entr(level)))


def _window_mass(part, y, h):
    """P(y - h < piece <= y + h) by Gauss-Legendre over the clipped window."""
    a = np.maximum(part.lo, y - h)
    b = np.minimum(part.upper, y + h)
    out = np.zeros_like(y)
    live = b > a
    if np.any(live):
        x = a[live, None] + (b[live] - a[live])[:, None] * (_GL_X + 1) / 2
        out[live] = (part.pdf(x) @ _GL_W) * (b[live] - a[live]) / 2
    return out


def mi_uniform_noise(dist: InputDistribution, half_width: float = 1.0, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> MiResult:
    """I(X; X + Z) for Z uniform on [-half_width, half_width].

    Discrete inputs are handled exactly.  Inputs with bounded continuous
    pieces go through quadrature; unbounded pieces are rejected.
    """
    if not half_width > 0:
        raise DomainError("half_width must be positive")
    h = float(half_width)
    if dist.kind == "discrete":
        h_y = _discrete_uniform_noise_entropy(dist.atom_x, dist.atom_p, h)
        return MiResult(value=h_y - math.log(2 * h), method="exact", est_error=1e-12 * max(1.0, abs(h_y)))
    if any(not math.isfinite(part.hi) for part in dist.parts):
        raise UnsupportedInputError("uniform-noise MI needs inputs with bounded support")

    def pdf(y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        for x, p in zip(dist.atom_x, dist.atom_p):
            out += np.where(np.abs(y - x) <= h, p / (2 * h), 0.0)
        for part in dist.parts:
            out += part.weight * _window_mass(part, y, h) / (2 * h)
        return out

    pts = set()
    for x in dist.atom_x:
        pts.update((x - h, x + h))
    for part in dist.parts:
        for b in (part.lo, part.hi, *part.breaks):
            pts.update((b - h, b + h))
    h_y = entropy_quadrature(pdf, sorted(pts), spec)
    return MiResult(value=h_y - math.log(2 * h), method="quadrature", est_error=EST_ERROR_FACTOR * spec.abs_tol)
