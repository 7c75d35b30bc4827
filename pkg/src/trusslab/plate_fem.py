"""Plane-stress / plane-strain analysis on a structured grid of bilinear
quadrilaterals.

Grid convention (shared with the topology optimizer): nodes are numbered
column-wise, node = iy + ix*(nely+1), with iy increasing downward.  Element
(ex, ey) has corner nodes UL, UR, LR, LL and DOF order
(ux_UL, uy_UL, ux_UR, uy_UR, ux_LR, uy_LR, ux_LL, uy_LL).

Loads are given in kN at grid nodes; displacements come back in m.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .model import Material

KN = 1e3
MPA = 1e6


class PlateError(RuntimeError):
    pass


@dataclass
class PlateProblem:
    nelx: int
    nely: int
    elem_size: tuple        # (sx, sy) in m; pass a scalar for square elements
    thickness: float
    material: Material
    idealization: str = "plane_stress"
    loads: list = field(default_factory=list)   # (node, fx_kN, fy_kN)
    fixed_dofs: list = field(default_factory=list)

    def __post_init__(self):
        if self.nelx < 1 or self.nely < 1:
            raise PlateError("element counts must be >= 1")
        if self.thickness <= 0:
            raise PlateError("thickness must be positive")
        if np.isscalar(self.elem_size):
            self.elem_size = (float(self.elem_size), float(self.elem_size))
        if self.idealization not in ("plane_stress", "plane_strain"):
            raise PlateError(f"unknown idealization {self.idealization!r}")

    @property
    def n_nodes(self):
        return (self.nelx + 1) * (self.nely + 1)

    @property
    def n_dofs(self):
        return 2 * self.n_nodes

    def node_id(self, ix, iy):
        return iy + ix * (self.nely + 1)

    def node_coords(self, node):
        nny = self.nely + 1
        ix, iy = divmod(node, nny)
        return ix * self.elem_size[0], iy * self.elem_size[1]

    def element_dofs(self, ex, ey):
        n_ul = self.node_id(ex, ey)
        n_ur = self.node_id(ex + 1, ey)
        return np.array([2 * n_ul, 2 * n_ul + 1,
                         2 * n_ur, 2 * n_ur + 1,
                         2 * n_ur + 2, 2 * n_ur + 3,
                         2 * n_ul + 2, 2 * n_ul + 3])

    def edof_table(self) -> np.ndarray:
        """(nely, nelx, 8) DOF indices, built once per problem."""
        cached = getattr(self, "_edofs", None)
        if cached is None:
            nny = self.nely + 1
            n_ul = (np.arange(self.nelx)[None, :] * nny
                    + np.arange(self.nely)[:, None])
            n_ur = n_ul + nny
            cached = np.stack([2 * n_ul, 2 * n_ul + 1, 2 * n_ur, 2 * n_ur + 1,
                               2 * n_ur + 2, 2 * n_ur + 3, 2 * n_ul + 2,
                               2 * n_ul + 3], axis=-1)
            self._edofs = cached
        return cached


@dataclass
class DisplacementField:
    problem: PlateProblem
    u: np.ndarray           # flat DOF vector, m

    def at_node(self, node):
        return self.u[2 * node], self.u[2 * node + 1]


def constitutive(material: Material, idealization: str) -> np.ndarray:
    """3x3 elasticity matrix in Pa."""
    E, nu = material.E * MPA, material.nu
    if idealization == "plane_stress":
        return E / (1 - nu ** 2) * np.array(
            [[1.0, nu, 0.0], [nu, 1.0, 0.0], [0.0, 0.0, (1 - nu) / 2]])
    if abs(1 - 2 * nu) < 1e-12:
        raise PlateError("plane strain with nu = 0.5 is incompressible (singular)")
    c = E / ((1 + nu) * (1 - 2 * nu))
    return c * np.array([[1 - nu, nu, 0.0], [nu, 1 - nu, 0.0],
                         [0.0, 0.0, (1 - 2 * nu) / 2]])


def q4_stiffness(material: Material, thickness: float, idealization: str,
                 dims) -> np.ndarray:
    """8x8 stiffness (N/m) of one rectangular Q4, full 2x2 Gauss integration.

    `dims` is the (sx, sy) element size in m.  Node order UL, UR, LR, LL in
    the y-down grid, which makes the nodes counterclockwise in natural
    coordinates.
    """
    sx, sy = (dims, dims) if np.isscalar(dims) else dims
    C = constitutive(material, idealization)
    a, b = sx / 2.0, sy / 2.0
    g = 1.0 / np.sqrt(3.0)
    ke = np.zeros((8, 8))
    for xi in (-g, g):
        for eta in (-g, g):
            dn_dxi = 0.25 * np.array([-(1 - eta), (1 - eta), (1 + eta), -(1 + eta)])
            dn_deta = 0.25 * np.array([-(1 - xi), -(1 + xi), (1 + xi), (1 - xi)])
            B = np.zeros((3, 8))
            B[0, 0::2] = dn_dxi / a
            B[1, 1::2] = dn_deta / b
            B[2, 0::2] = dn_deta / b
            B[2, 1::2] = dn_dxi / a
            ke += B.T @ C @ B * a * b * thickness
    return ke


def assemble(problem: PlateProblem, density_scale=None, penal: float = 1.0,
             ke: np.ndarray = None) -> sp.csc_matrix:
    """Global stiffness; optionally SIMP-scaled per element by
    density_scale[ey, ex] ** penal."""
    if ke is None:
        ke = q4_stiffness(problem.material, problem.thickness,
                          problem.idealization, problem.elem_size)
    nel = problem.nelx * problem.nely
    edofs = problem.edof_table().transpose(1, 0, 2).reshape(nel, 8)
    if density_scale is None:
        scale = np.ones(nel)
    else:
        scale = (density_scale ** penal).T.reshape(nel)
    rows = np.repeat(edofs, 8, axis=1).ravel()
    cols = np.tile(edofs, (1, 8)).ravel()
    vals = (scale[:, None, None] * ke[None, :, :]).ravel()
    K = sp.coo_matrix((vals, (rows, cols)),
                      shape=(problem.n_dofs, problem.n_dofs))
    return K.tocsc()


def load_vector(problem: PlateProblem) -> np.ndarray:
    F = np.zeros(problem.n_dofs)
    for node, fx, fy in problem.loads:
        F[2 * node] += fx * KN
        F[2 * node + 1] += fy * KN
    return F


def solve_plate(problem: PlateProblem, K: sp.csc_matrix = None) -> DisplacementField:
    """Solve for nodal displacements; raises PlateError for unstable plates."""
    if K is None:
        K = assemble(problem)
    F = load_vector(problem)
    fixed = np.unique(np.asarray(problem.fixed_dofs, dtype=int))
    if fixed.size < 3:
        raise PlateError("fixed DOFs do not eliminate rigid-body modes")
    free = np.setdiff1d(np.arange(problem.n_dofs), fixed)
    u = np.zeros(problem.n_dofs)
    Kff = K[np.ix_(free, free)]
    import warnings
    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore", spla.MatrixRankWarning)
        sol = spla.spsolve(Kff, F[free])
    fref = np.abs(F[free]).max() if free.size else 0.0
    resid = np.abs(Kff @ sol - F[free]).max() if free.size else 0.0
    if not np.all(np.isfinite(sol)) or resid > 1e-6 * max(fref, 1e-30):
        raise PlateError("unstable plate: singular stiffness")
    u[free] = sol
    return DisplacementField(problem, u)


def compliance(problem: PlateProblem, field: DisplacementField) -> float:
    """External work F'u in J; positive for any nonzero load on a stable plate."""
    return float(load_vector(problem) @ field.u)


def cantilever_problem(n: int, length=1.8, depth=0.15, thickness=0.12,
                       load_kn=20.0, material=None) -> PlateProblem:
    """End-loaded cantilever meshed n elements deep by 10n long.

    The load is applied at mid-depth of the free end (split over the two
    central nodes when the depth has an even node count).
    """
    from .model import STEEL
    material = material or STEEL
    nelx, nely = 10 * n, n
    problem = PlateProblem(nelx, nely, (length / nelx, depth / nely),
                           thickness, material)
    fixed = []
    for iy in range(nely + 1):
        node = problem.node_id(0, iy)
        fixed += [2 * node, 2 * node + 1]
    problem.fixed_dofs = fixed
    end = [problem.node_id(nelx, iy) for iy in range(nely + 1)]
    if (nely + 1) % 2 == 1:
        problem.loads = [(end[nely // 2], 0.0, -load_kn)]
    else:
        problem.loads = [(end[nely // 2], 0.0, -load_kn / 2),
                         (end[nely // 2 + 1], 0.0, -load_kn / 2)]
    return problem


def cantilever_tip_deflection(problem: PlateProblem) -> float:
    """Downward tip deflection (m, positive) at the load location."""
    field = solve_plate(problem)
    total = sum(abs(fy) for _, _, fy in problem.loads)
    tip = sum(abs(fy) * field.at_node(node)[1] for node, _, fy in problem.loads)
    return -tip / total
