"""Builds a plate topology-optimization problem for a truss joint and runs
the optimizer on it.

Each connected member becomes a weld footprint strip on the plate: a
rectangle of the member's footprint width, aligned with the member axis,
reaching inward from the plate edge.  The member's axial force is shared
equally by the grid nodes inside its strip; tension pulls away from the
plate centroid, compression pushes toward it.  Support reactions enter the
same way as an extra pseudo-member so every joint loads the plate in
self-equilibrium.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import topopt
from .model import STEEL, TrussModel
from .plate_fem import PlateProblem
from .topopt import DensityField, TopOptParams

DEFAULT_MESH = 60
DEFAULT_FOOTPRINT_M = 0.04          # two welded 20 mm legs
DEFAULT_THICKNESS_M = 0.008


class GussetError(RuntimeError):
    pass


@dataclass
class MemberAttachment:
    member_id: int
    direction: tuple                # unit vector away from the joint
    force_kn: float                 # tension positive (pulls away)
    footprint_m: float


@dataclass
class GussetProblem:
    node_id: int
    plate_size_m: float             # square plate side
    nelx: int
    nely: int
    attachments: list
    volfrac: float = 0.4
    thickness_m: float = DEFAULT_THICKNESS_M
    material: object = STEEL
    weld_length_m: float = None     # strip depth from the edge; default footprint

    def __post_init__(self):
        dirs = [a.direction for a in self.attachments]
        for i, d1 in enumerate(dirs):
            for d2 in dirs[i + 1:]:
                if abs(d1[0] - d2[0]) < 1e-9 and abs(d1[1] - d2[1]) < 1e-9:
                    raise GussetError(f"node {self.node_id}: coincident member directions")

    @property
    def elem_size(self):
        return self.plate_size_m / self.nelx, self.plate_size_m / self.nely

    @property
    def centroid(self):
        return self.plate_size_m / 2.0, self.plate_size_m / 2.0

    def plate(self) -> PlateProblem:
        return PlateProblem(self.nelx, self.nely, self.elem_size,
                            self.thickness_m, self.material)


def _node_xy(plate: PlateProblem, node):
    x, y_down = plate.node_coords(node)
    return x, plate.nely * plate.elem_size[1] - y_down  # y up for geometry


def weld_nodes(problem: GussetProblem, attachment: MemberAttachment) -> list:
    """Grid nodes inside the attachment's footprint strip.

    The strip is centered on the ray from the plate centroid along the
    member direction, `footprint` wide, and reaches `weld_length` inward
    from where the ray leaves the plate.
    """
    plate = problem.plate()
    cx, cy = problem.centroid
    dx, dy = attachment.direction
    half_w = attachment.footprint_m / 2.0
    weld_len = problem.weld_length_m or attachment.footprint_m
    # distance from centroid to the boundary along the ray
    s_edge = math.inf
    if abs(dx) > 1e-12:
        for bx in (0.0, problem.plate_size_m):
            s = (bx - cx) / dx
            if s > 0:
                s_edge = min(s_edge, s)
    if abs(dy) > 1e-12:
        for by in (0.0, problem.plate_size_m):
            s = (by - cy) / dy
            if s > 0:
                s_edge = min(s_edge, s)
    if not math.isfinite(s_edge):
        raise GussetError("degenerate member direction")
    picked = []
    for node in range(plate.n_nodes):
        x, y = _node_xy(plate, node)
        rx, ry = x - cx, y - cy
        s = rx * dx + ry * dy            # along the ray
        p = -rx * dy + ry * dx           # across it
        if abs(p) <= half_w + 1e-12 and s_edge - weld_len - 1e-12 <= s <= s_edge + 1e-12:
            picked.append(node)
    if not picked:
        raise GussetError(
            f"node {problem.node_id}: weld footprint resolves no grid nodes; mesh too coarse")
    return picked


def distribute_forces(problem: GussetProblem) -> list:
    """(node, fx_kN, fy_kN) loads: each member force split equally over its
    weld nodes, directed along the member axis."""
    loads = []
    for att in problem.attachments:
        nodes = weld_nodes(problem, att)
        share = att.force_kn / len(nodes)
        fx = share * att.direction[0]
        fy_up = share * att.direction[1]
        for n in nodes:
            loads.append((n, fx, -fy_up))   # grid y runs downward
    return loads


def minimal_bcs(problem: GussetProblem) -> list:
    """Three fixed DOFs: both at the centroid node, x at the node below it."""
    plate = problem.plate()
    cx, cy_down = problem.plate_size_m / 2.0, problem.plate_size_m / 2.0
    sx, sy = plate.elem_size

    def nearest(pred):
        best = None
        for node in range(plate.n_nodes):
            x, y_down = plate.node_coords(node)
            if not pred(x, y_down):
                continue
            nny = plate.nely + 1
            ix, iy = divmod(node, nny)
            key = ((x - cx) ** 2 + (y_down - cy_down) ** 2, ix, iy)
            if best is None or key < best[0]:
                best = (key, node)
        return best[1]

    center = nearest(lambda x, y: True)
    below = nearest(lambda x, y: y > plate.node_coords(center)[1] + sy / 2)
    return [2 * center, 2 * center + 1, 2 * below]


def build_gusset_problem(model: TrussModel, result, node_id: int,
                         report=None, volfrac: float = 0.4,
                         mesh: int = DEFAULT_MESH) -> GussetProblem:
    """Assemble the joint's attachments from the solved truss.

    Footprint widths default to twice the designed angle leg (both legs
    welded); support reactions become an extra attachment so the applied
    loads balance.
    """
    node = model.node(node_id)
    attachments = []
    for m in model.members:
        if node_id not in (m.node_i, m.node_j):
            continue
        other = model.node(m.node_j if m.node_i == node_id else m.node_i)
        length = model.member_length(m.id)
        d = ((other.x - node.x) / length, (other.y - node.y) / length)
        footprint = DEFAULT_FOOTPRINT_M
        if report is not None:
            footprint = 2.0 * report.entries[m.id].section.L / 1e3
        attachments.append(MemberAttachment(m.id, d, result.member_forces[m.id],
                                            footprint))
    if len(attachments) < 2:
        raise GussetError(f"node {node_id}: a gusset needs at least 2 members")
    footprint = max(a.footprint_m for a in attachments)
    rx = result.reactions.get((node_id, "x"), 0.0)
    ry = result.reactions.get((node_id, "y"), 0.0)
    r = math.hypot(rx, ry)
    if r > 1e-9:
        d = (-rx / r, -ry / r)      # strip on the side the support sits on
        attachments.append(MemberAttachment(0, d, -r, footprint))
    px, py = result.applied_loads.get(node_id, (0.0, 0.0))
    p = math.hypot(px, py)
    if p > 1e-9:
        # external load delivered through a fitting on its own strip
        attachments.append(MemberAttachment(-1, (-px / p, -py / p), -p, footprint))
    side = 3.0 * max(a.footprint_m for a in attachments)
    return GussetProblem(node_id, side, mesh, mesh, attachments, volfrac=volfrac)


def optimize_gusset(problem: GussetProblem, params: TopOptParams = None) -> DensityField:
    """Run compliance minimization for the joint plate."""
    params = params or TopOptParams(volfrac=problem.volfrac)
    plate = problem.plate()
    plate.loads = distribute_forces(problem)
    plate.fixed_dofs = minimal_bcs(problem)
    return topopt.optimize(plate, params)


def optimize_joint(model: TrussModel, result, node_id: int, report=None,
                   volfrac: float = 0.4, mesh: int = DEFAULT_MESH,
                   params: TopOptParams = None) -> tuple:
    """Convenience wrapper: build the joint problem and optimize it."""
    gp = build_gusset_problem(model, result, node_id, report, volfrac, mesh)
    return gp, optimize_gusset(gp, params)


def mirror_metric(field: DensityField) -> float:
    """Mean absolute difference between the field and its left-right mirror."""
    x = field.densities
    return float(np.abs(x - x[:, ::-1]).mean())


def pair_mirror_metric(field_a: DensityField, field_b: DensityField) -> float:
    """Mean absolute difference between field_a and mirrored field_b."""
    return float(np.abs(field_a.densities - field_b.densities[:, ::-1]).mean())
