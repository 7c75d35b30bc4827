"""Constrained minimization of truss weight over member areas.

Stress must stay within fy and member slenderness within the tension /
compression limits; the member mode follows the design convention
(envelope force > 0 means compression).  Slenderness of a continuous area
A uses the calibrated model r = kappa*sqrt(A) for single angles and
r = kappa*sqrt(2A) for back-to-back doubles, with kappa fitted by least
squares over the shipped angle catalog.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from . import design_is800
from .model import CrossSection, TrussModel, classify_members
from .truss_solver import envelope_forces, solve_static

RHO_KG_MM2_M = 7850e-6   # kg per (mm^2 * m)
AREA_LOWER_MM2 = 10.0


class SizeOptError(RuntimeError):
    pass


def kappa_fit(library=None) -> float:
    """Least-squares kappa for r_min ~= kappa*sqrt(area) over the catalog."""
    library = library or design_is800.load_library()
    a = np.array([s.area for s in library])
    r = np.array([s.r_min for s in library])
    return float((r * np.sqrt(a)).sum() / a.sum())


def r_min_model(area_mm2, configuration, kappa) -> float:
    """Continuous-area radius of gyration (mm); doubles count both angles."""
    a = 2.0 * area_mm2 if configuration == "double" else area_mm2
    return kappa * math.sqrt(a)


@dataclass
class SizeOptProblem:
    model: TrussModel
    member_ids: list
    start_areas: np.ndarray          # mm^2 per member
    forces_kn: dict                  # envelope at the start point
    modes: dict                      # member id -> tension | compression | zero_force
    configurations: dict             # member id -> single | double
    lengths_m: dict
    sigma_allow: dict                # member id -> fy of its material
    kappa: float
    lower: np.ndarray = None
    upper: np.ndarray = None
    max_iters: int = 200
    constraint_tol: float = 1e-3
    statically_determinate: bool = True

    def __post_init__(self):
        if self.lower is None:
            self.lower = np.full(len(self.member_ids), AREA_LOWER_MM2)
        if self.upper is None:
            self.upper = 10.0 * np.asarray(self.start_areas, float)

    def slender_limit(self, mid) -> float:
        if self.modes[mid] == "compression":
            return design_is800.SLENDER_LIMIT_COMPRESSION
        return design_is800.SLENDER_LIMIT_TENSION


@dataclass
class SizeOptResult:
    problem: SizeOptProblem
    areas: dict                      # member id -> mm^2
    weight_kg: float
    active: dict                     # member id -> set of active constraint names
    iterations: int
    converged: bool
    history: list = field(default_factory=list)


def build_problem(model: TrussModel, results, report=None, library=None) -> SizeOptProblem:
    """Start from the code-design areas (always feasible)."""
    library = library or design_is800.load_library()
    if report is None:
        report = design_is800.design_truss(model, results, library)
    env = envelope_forces(results)
    classes = classify_members(model)
    member_ids = [m.id for m in model.members]
    start = np.array([report.entries[i].total_area for i in member_ids], float)
    modes = {i: report.entries[i].mode for i in member_ids}
    configs = {i: "double" if classes[i] == "peripheral" else "single"
               for i in member_ids}
    lengths = {i: model.member_length(i) for i in member_ids}
    sigma = {i: model.material(model.member(i).material).fy for i in member_ids}
    n_dofs = 2 * len(model.nodes)
    n_restrained = sum(int(n.fixed_x) + int(n.fixed_y) for n in model.nodes)
    determinate = len(model.members) + n_restrained == n_dofs
    return SizeOptProblem(model, member_ids, start, env, modes, configs,
                          lengths, sigma, kappa_fit(library),
                          statically_determinate=determinate)


def objective_weight(problem: SizeOptProblem, areas) -> tuple:
    """Total weight (kg) and its gradient d/dA (kg/mm^2)."""
    areas = np.asarray(areas, float)
    lengths = np.array([problem.lengths_m[i] for i in problem.member_ids])
    return float(RHO_KG_MM2_M * (areas * lengths).sum()), RHO_KG_MM2_M * lengths


def _forces_at(problem: SizeOptProblem, areas) -> dict:
    """Envelope member forces at the given areas (re-solved unless the
    structure is statically determinate)."""
    if problem.statically_determinate:
        return problem.forces_kn
    sections = []
    members = []
    for mid, a in zip(problem.member_ids, areas):
        name = f"__opt_{mid}"
        sections.append(CrossSection(name, float(a) * 1e-6))
        members.append(replace(problem.model.member(mid), section=name))
    trial = replace(problem.model, members=tuple(members),
                    sections=problem.model.sections + tuple(sections))
    results = [solve_static(trial, c) for c in trial.combinations]
    return envelope_forces(results)


def constraint_values(problem: SizeOptProblem, areas) -> np.ndarray:
    """g <= 0 vector: stress utilization then slenderness, one per member."""
    areas = np.asarray(areas, float)
    forces = _forces_at(problem, areas)
    g = []
    for mid, a in zip(problem.member_ids, areas):
        g.append(abs(forces[mid]) * 1e3 / a - problem.sigma_allow[mid])
    for mid, a in zip(problem.member_ids, areas):
        r = r_min_model(a, problem.configurations[mid], problem.kappa)
        g.append(problem.lengths_m[mid] * 1e3 / r - problem.slender_limit(mid))
    return np.array(g)


def _feasibility_repair(problem: SizeOptProblem, areas) -> np.ndarray:
    """Push each area up to its own per-member feasibility bound; both
    constraints decrease monotonically in the member's own area."""
    areas = np.asarray(areas, float).copy()
    for _ in range(3):
        forces = _forces_at(problem, areas)
        for k, mid in enumerate(problem.member_ids):
            a_stress = abs(forces[mid]) * 1e3 / problem.sigma_allow[mid]
            r_req = problem.lengths_m[mid] * 1e3 / problem.slender_limit(mid)
            factor = 2.0 if problem.configurations[mid] == "double" else 1.0
            a_slender = (r_req / problem.kappa) ** 2 / factor
            areas[k] = max(areas[k], a_stress, a_slender, problem.lower[k])
        if problem.statically_determinate:
            break
    return areas


def optimize_sizes(problem: SizeOptProblem) -> SizeOptResult:
    """Constrained descent (SLSQP) from the feasible design-code start."""
    ids = problem.member_ids
    history = []

    def fun(a):
        w, grad = objective_weight(problem, a)
        history.append(w)
        return w

    def jac(a):
        return objective_weight(problem, a)[1]

    cons = [{"type": "ineq", "fun": lambda a: -constraint_values(problem, a)}]
    bounds = list(zip(problem.lower, problem.upper))
    res = minimize(fun, problem.start_areas, jac=jac, bounds=bounds,
                   constraints=cons, method="SLSQP",
                   options={"maxiter": problem.max_iters, "ftol": 1e-12})
    areas = _feasibility_repair(problem, res.x)
    g = constraint_values(problem, areas)
    n = len(ids)
    active = {}
    for k, mid in enumerate(ids):
        names = set()
        if g[k] > -problem.constraint_tol * problem.sigma_allow[mid]:
            names.add("stress")
        if g[n + k] > -problem.constraint_tol * problem.slender_limit(mid):
            names.add("slenderness")
        if areas[k] <= problem.lower[k] * (1 + 1e-9):
            names.add("lower_bound")
        active[mid] = names
    weight, _ = objective_weight(problem, areas)
    return SizeOptResult(problem, dict(zip(ids, areas)), weight, active,
                         res.nit, bool(res.success), history)
