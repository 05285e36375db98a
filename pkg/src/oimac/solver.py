"""
Capacity of the single-user optical intensity channel under a peak
constraint ``0 <= X <= A``, computed with Blahut-Arimoto iterations on a
uniform amplitude grid.

Each iteration yields the achieved rate ``I(p)`` and the marginal
divergences ``D_j = D(W(.|x_j) || q)``; the grid capacity lies in
``[I(p), max_j D_j]``, so ``max_j D_j - I(p)`` is a certified bracket
width for the discretized problem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DomainError
from .numerics import _GL_W, _GL_X, gaussian_entropy

DEFAULT_GRID_POINTS = 513
DEFAULT_TOL = 1e-4
DEFAULT_MAX_ITER = 200_000
TAIL_SIGMA = 8.0


@dataclass(frozen=True)
class SolverResult:
    """Outcome of :func:`solve_peak_capacity`.

    Attributes
    ----------
    capacity : float
        Achieved rate of the final input law, nats.  The grid capacity is
        at most ``capacity + bracket_width``.
    bracket_width : float
    input_atoms : ndarray, shape (m, 2)
        Grid locations (intensity units) and masses of the final law.
    iterations : int
    certified : bool
        Whether ``capacity`` falls inside the closed-form single-user bounds
        (uniform-input lower bound, combined upper bound), allowing for the
        bracket width.
    """

    capacity: float
    bracket_width: float
    input_atoms: np.ndarray
    iterations: int
    certified: bool

    @property
    def upper(self) -> float:
        return self.capacity + self.bracket_width

    def mass_points(self, threshold: float = 1e-3) -> np.ndarray:
        """Merge runs of adjacent grid points into mass points.

        Grid masses below ``threshold`` times the largest mass are treated as
        zero; each remaining run of neighbours is replaced by its total mass
        at its centre of mass.  Returns an ``(m, 2)`` array.
        """
        loc, mass = self.input_atoms[:, 0], self.input_atoms[:, 1]
        live = mass > threshold * mass.max()
        out = []
        run = []
        for j in range(loc.size):
            if live[j]:
                run.append(j)
            elif run:
                out.append(run)
                run = []
        if run:
            out.append(run)
        pts = [(float(mass[r] @ loc[r] / mass[r].sum()), float(mass[r].sum())) for r in out]
        return np.array(pts).reshape(-1, 2)


def _output_nodes(peak: float, sigma: float):
    lo, hi = -TAIL_SIGMA * sigma, peak + TAIL_SIGMA * sigma
    panels = int(math.ceil((hi - lo) / sigma))
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    y = (mid[:, None] + half[:, None] * _GL_X).ravel()
    w = (half[:, None] * _GL_W).ravel()
    return y, w


def solve_peak_capacity(
    pnr: float,
    grid_points: int = DEFAULT_GRID_POINTS,
    tol: float = DEFAULT_TOL,
    sigma: float = 1.0,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SolverResult:
    """Capacity of Y = X + Z, Z ~ N(0, sigma^2), subject to 0 <= X <= pnr * sigma.

    Parameters
    ----------
    pnr : float
        Optical peak-to-noise ratio A / sigma.
    grid_points : int
        Number of equally spaced candidate amplitudes in [0, A].
    tol : float
        Stop once the bracket width falls below this many nats.
    max_iter : int

    Raises
    ------
    BudgetError
        When ``max_iter`` iterations do not close the bracket; the error
        carries the last bracket width.
    """
    if not (math.isfinite(pnr) and pnr > 0):
        raise DomainError("pnr must be positive")
    if int(grid_points) != grid_points or grid_points < 64:
        raise DomainError("grid_points must be an integer >= 64")
    if not tol > 0:
        raise DomainError("tol must be positive")
    if not sigma > 0:
        raise DomainError("sigma must be positive")

    peak = pnr * sigma
    x = np.linspace(0.0, peak, int(grid_points))
    y, w = _output_nodes(peak, sigma)
    kernel = np.exp(-0.5 * ((y[None, :] - x[:, None]) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
    weighted = kernel * w
    h_noise = gaussian_entropy(sigma)

    p = np.full(x.size, 1.0 / x.size)
    bracket = math.inf
    for it in range(1, max_iter + 1):
        q = p @ kernel
        d = -h_noise - weighted @ np.log(np.maximum(q, 1e-300))
        rate = float(p @ d)
        bracket = float(d.max()) - rate
        if bracket < tol:
            break
        p = p * np.exp(d - d.max())
        p /= p.sum()
    else:
        raise BudgetError(f"bracket {bracket:.3e} still above tol after {max_iter} iterations", bracket)

    from .peak_power import pp_single_lower_closed, pp_single_upper

    bracket = max(bracket, 0.0)
    certified = pp_single_lower_closed(pnr) <= rate + bracket and rate - bracket <= pp_single_upper(pnr)
    atoms = np.column_stack([x, p])
    return SolverResult(rate, bracket, atoms, it, bool(certified))


__all__ = ["SolverResult", "solve_peak_capacity", "DEFAULT_GRID_POINTS", "DEFAULT_TOL"]
