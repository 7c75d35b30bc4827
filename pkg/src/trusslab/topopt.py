"""Compliance-minimization topology optimization (SIMP) on the structured
Q4 grid, with sensitivity filtering and optimality-criteria updates.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import convolve2d

from . import plate_fem
from .plate_fem import PlateProblem

X_MIN = 0.001


class TopOptError(RuntimeError):
    pass


@dataclass
class TopOptParams:
    volfrac: float
    penal: float = 3.0
    rmin: float = 1.5
    move: float = 0.2
    max_iters: int = 200
    tol: float = 0.01
    x_min: float = X_MIN

    def __post_init__(self):
        if not 0 < self.volfrac <= 1:
            raise TopOptError("volfrac must lie in (0, 1]")
        if self.penal < 1:
            raise TopOptError("penal must be >= 1")
        if self.rmin < 1:
            raise TopOptError("rmin must be >= 1")
        if not 0 < self.move < 1:
            raise TopOptError("move must lie in (0, 1)")


@dataclass
class DensityField:
    densities: np.ndarray        # (nely, nelx), values in [x_min, 1]
    iterations: int
    compliance: float
    converged: bool
    history: list = field(default_factory=list)

    @property
    def shape(self):
        return self.densities.shape

    def mean(self):
        return float(self.densities.mean())


def compliance_and_sensitivity(problem: PlateProblem, densities: np.ndarray,
                               penal: float, ke: np.ndarray = None):
    """Compliance c = sum x^p u'k0 u and its density gradient dc <= 0."""
    if ke is None:
        ke = plate_fem.q4_stiffness(problem.material, problem.thickness,
                                    problem.idealization, problem.elem_size)
    K = plate_fem.assemble(problem, density_scale=densities, penal=penal, ke=ke)
    field = plate_fem.solve_plate(problem, K=K)
    ue = field.u[problem.edof_table()]                      # (nely, nelx, 8)
    uku = np.einsum("...i,ij,...j->...", ue, ke, ue)
    c = float(np.sum(densities ** penal * uku))
    dc = -penal * densities ** (penal - 1) * uku
    return c, dc


def sensitivity_filter(densities: np.ndarray, dc: np.ndarray, rmin: float) -> np.ndarray:
    """Mesh-independency filter: distance-weighted average of x*dc over the
    rmin neighborhood, normalized by x_e * sum(weights)."""
    if rmin < 1.0:
        return dc.copy()
    r = int(np.floor(rmin))
    offsets = np.arange(-r, r + 1)
    oy, ox = np.meshgrid(offsets, offsets, indexing="ij")
    kernel = np.maximum(0.0, rmin - np.sqrt(ox ** 2 + oy ** 2))
    num = convolve2d(densities * dc, kernel, mode="same", boundary="fill")
    wsum = convolve2d(np.ones_like(dc), kernel, mode="same", boundary="fill")
    return num / (wsum * np.maximum(densities, 1e-12))


def oc_update(densities: np.ndarray, dc: np.ndarray, volfrac: float,
              move: float, x_min: float = X_MIN) -> np.ndarray:
    """Optimality-criteria density update with a bisected volume multiplier.

    x_new = clamp(x * sqrt(-dc/lambda)) within the move limit and
    [x_min, 1]; lambda is bisected until mean(x_new) matches volfrac.
    """
    if np.any(dc > 1e-12):
        raise TopOptError("OC update requires non-positive sensitivities")
    dc = np.minimum(dc, 0.0)
    lower = np.maximum(densities - move, x_min)
    upper = np.minimum(densities + move, 1.0)

    def updated(lam):
        target = densities * np.sqrt(-dc / lam)
        return np.clip(target, lower, upper)

    if upper.mean() <= volfrac + 1e-12:
        return upper
    l1, l2 = 1e-12, 1e12
    if updated(l2).mean() > volfrac:
        raise TopOptError("volume multiplier bisection failed to bracket")
    xnew = updated(l2)
    for _ in range(200):
        lam = np.sqrt(l1 * l2)
        xnew = updated(lam)
        if xnew.mean() > volfrac:
            l1 = lam
        else:
            l2 = lam
        if abs(xnew.mean() - volfrac) < 1e-6 and (l2 - l1) / (l1 + l2) < 1e-8:
            break
    return xnew


def optimize(problem: PlateProblem, params: TopOptParams) -> DensityField:
    """Iterate analyze -> sensitivities -> filter -> OC to convergence."""
    ke = plate_fem.q4_stiffness(problem.material, problem.thickness,
                                problem.idealization, problem.elem_size)
    x = np.full((problem.nely, problem.nelx), params.volfrac)
    history = []
    c = np.inf
    converged = False
    iterations = 0
    for it in range(1, params.max_iters + 1):
        iterations = it
        c, dc = compliance_and_sensitivity(problem, x, params.penal, ke=ke)
        history.append(c)
        dcn = sensitivity_filter(x, dc, params.rmin)
        xnew = oc_update(x, dcn, params.volfrac, params.move, params.x_min)
        change = float(np.abs(xnew - x).max())
        x = xnew
        if change < params.tol:
            converged = True
            break
    return DensityField(x, iterations, float(c), converged, history)


def mbb_half_problem(nelx: int = 60, nely: int = 20, material=None) -> PlateProblem:
    """Canonical half-beam bending problem: symmetry plane on the left edge
    (x fixed), roller under the bottom-right corner, unit downward load at
    the top-left corner node."""
    from .model import STEEL
    material = material or STEEL
    problem = PlateProblem(nelx, nely, 1.0, 1.0, material)
    fixed = [2 * problem.node_id(0, iy) for iy in range(nely + 1)]
    fixed.append(2 * problem.node_id(nelx, nely) + 1)
    problem.fixed_dofs = fixed
    problem.loads = [(problem.node_id(0, 0), 0.0, -1.0 / plate_fem.KN)]
    return problem
