"""Linear static analysis of 2D trusses by the direct stiffness method.

Sign convention: member axial forces are tension-positive.  Forces and
reactions are reported in kN, displacements in m.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import TrussModel, validate

KN = 1e3  # N per kN
MPA = 1e6  # Pa per N/mm^2


class SolverError(RuntimeError):
    pass


@dataclass
class AnalysisResult:
    combination: str
    displacements: dict          # node id -> (ux, uy) in m
    member_forces: dict          # member id -> axial force in kN, tension +
    reactions: dict              # (node id, 'x'|'y') -> reaction in kN
    applied_loads: dict = field(default_factory=dict)  # node id -> (Fx, Fy) kN


def element_stiffness(member_id: int, model: TrussModel) -> np.ndarray:
    """4x4 global-axes stiffness block of an axial bar, in N/m.

    DOF order (uxi, uyi, uxj, uyj).  Rank 1: EA/L times the outer product
    of the direction cosines.
    """
    m = model.member(member_id)
    L = model.member_length(member_id)
    if L <= 0:
        raise SolverError(f"member {member_id}: zero length")
    c, s = model.member_direction(member_id)
    ea_l = model.material(m.material).E * MPA * model.section(m.section).area / L
    t = np.array([-c, -s, c, s])
    return ea_l * np.outer(t, t)


def _dof_index(model):
    return {n.id: 2 * i for i, n in enumerate(model.nodes)}


def assemble_stiffness(model: TrussModel) -> np.ndarray:
    dof = _dof_index(model)
    ndof = 2 * len(model.nodes)
    K = np.zeros((ndof, ndof))
    for m in model.members:
        ke = element_stiffness(m.id, model)
        idx = [dof[m.node_i], dof[m.node_i] + 1, dof[m.node_j], dof[m.node_j] + 1]
        K[np.ix_(idx, idx)] += ke
    return K


def combined_loads(model: TrussModel, combination) -> dict:
    """node id -> factored (Fx, Fy) in kN."""
    combo = model.combination(combination) if isinstance(combination, str) else combination
    fac = combo.factors()
    out = {}
    for n in model.nodes:
        fx = sum(f * n.load(case)[0] for case, f in fac.items())
        fy = sum(f * n.load(case)[1] for case, f in fac.items())
        out[n.id] = (fx, fy)
    return out


def solve_static(model: TrussModel, combination) -> AnalysisResult:
    """Solve one load combination; raises SolverError on mechanisms."""
    problems = validate(model)
    if problems:
        raise SolverError("invalid model: " + "; ".join(problems))
    combo = model.combination(combination) if isinstance(combination, str) else combination

    dof = _dof_index(model)
    ndof = 2 * len(model.nodes)
    K = assemble_stiffness(model)

    loads = combined_loads(model, combo)
    F = np.zeros(ndof)
    for nid, (fx, fy) in loads.items():
        F[dof[nid]] += fx * KN
        F[dof[nid] + 1] += fy * KN

    fixed = []
    for n in model.nodes:
        if n.fixed_x:
            fixed.append(dof[n.id])
        if n.fixed_y:
            fixed.append(dof[n.id] + 1)
    free = np.setdiff1d(np.arange(ndof), fixed)

    Kff = K[np.ix_(free, free)]
    u = np.zeros(ndof)
    try:
        L = np.linalg.cholesky(Kff)
        u[free] = np.linalg.solve(L.T, np.linalg.solve(L, F[free]))
    except np.linalg.LinAlgError:
        # name the softest DOF for the diagnostic
        w, v = np.linalg.eigh(Kff)
        soft = free[int(np.argmax(np.abs(v[:, 0])))]
        nid = model.nodes[soft // 2].id
        axis = "x" if soft % 2 == 0 else "y"
        raise SolverError(
            f"mechanism / unstable structure: near-zero stiffness at node {nid} ({axis})"
        ) from None

    displacements = {n.id: (u[dof[n.id]], u[dof[n.id] + 1]) for n in model.nodes}

    member_forces = {}
    for m in model.members:
        c, s = model.member_direction(m.id)
        Lm = model.member_length(m.id)
        ui = u[dof[m.node_i]:dof[m.node_i] + 2]
        uj = u[dof[m.node_j]:dof[m.node_j] + 2]
        elong = (uj[0] - ui[0]) * c + (uj[1] - ui[1]) * s
        ea_l = model.material(m.material).E * MPA * model.section(m.section).area / Lm
        member_forces[m.id] = ea_l * elong / KN

    R = K @ u - F
    reactions = {}
    for n in model.nodes:
        if n.fixed_x:
            reactions[(n.id, "x")] = R[dof[n.id]] / KN
        if n.fixed_y:
            reactions[(n.id, "y")] = R[dof[n.id] + 1] / KN

    return AnalysisResult(combo.name, displacements, member_forces, reactions, loads)


def solve_all(model: TrussModel) -> list:
    return [solve_static(model, c) for c in model.combinations]


def envelope_forces(results) -> dict:
    """Per member, the force of largest magnitude across combinations (sign kept)."""
    env = {}
    for res in results:
        for mid, f in res.member_forces.items():
            if mid not in env or abs(f) > abs(env[mid]):
                env[mid] = f
    return env


def deflected_shape(model: TrussModel, result: AnalysisResult, scale: float) -> dict:
    """node id -> displaced (x, y) with displacements magnified by `scale`."""
    out = {}
    for n in model.nodes:
        ux, uy = result.displacements[n.id]
        out[n.id] = (n.x + scale * ux, n.y + scale * uy)
    return out
