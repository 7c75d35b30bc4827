"""Domain types and validation for 2D truss models.

Units: node coordinates in m, nodal loads in kN, material stresses in
N/mm^2 (MPa), cross-section areas in m^2.  Models are treated as immutable
once built; operations that change a model return a new one.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field, replace

SUPPORT_KINDS = ("free", "roller_x", "roller_y", "hinged")
LOAD_CASES = ("DL", "LL", "WL")
CLASSIFICATIONS = ("peripheral", "interior", "auto")


class ModelError(ValueError):
    """Raised for structurally invalid inputs to model operations."""


@dataclass(frozen=True)
class Node:
    """Truss joint.  `support` is one of free / roller_x / roller_y / hinged.

    roller_x rolls along the x axis (y translation fixed); roller_y rolls
    along y (x fixed).  `loads` maps a load-case tag (DL, LL, WL) to an
    (Fx, Fy) pair in kN.
    """
    id: int
    x: float
    y: float
    support: str = "free"
    loads: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.id, numbers.Integral) or self.id <= 0:
            raise ModelError(f"node id must be a positive integer, got {self.id!r}")
        object.__setattr__(self, "id", int(self.id))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ModelError(f"node {self.id}: coordinates must be finite")
        if self.support not in SUPPORT_KINDS:
            raise ModelError(f"node {self.id}: unknown support {self.support!r}")
        for case, vec in self.loads.items():
            if case not in LOAD_CASES:
                raise ModelError(f"node {self.id}: unknown load case {case!r}")
            if len(vec) != 2 or not all(math.isfinite(v) for v in vec):
                raise ModelError(f"node {self.id}: load {case} must be a finite (Fx, Fy)")

    def load(self, case):
        fx, fy = self.loads.get(case, (0.0, 0.0))
        return float(fx), float(fy)

    @property
    def fixed_x(self):
        return self.support in ("hinged", "roller_y")

    @property
    def fixed_y(self):
        return self.support in ("hinged", "roller_x")


@dataclass(frozen=True)
class Material:
    """Linear elastic material.  E, fy, fu in N/mm^2."""
    name: str
    E: float
    nu: float
    fy: float
    fu: float

    def __post_init__(self):
        if self.E <= 0:
            raise ModelError(f"material {self.name}: E must be positive")
        if not 0 <= self.nu < 0.5:
            raise ModelError(f"material {self.name}: nu must satisfy 0 <= nu < 0.5")
        if not 0 < self.fy < self.fu:
            raise ModelError(f"material {self.name}: need 0 < fy < fu")


STEEL = Material("steel", E=2.0e5, nu=0.3, fy=250.0, fu=410.0)


@dataclass(frozen=True)
class CrossSection:
    """Prismatic cross section, area in m^2 (default 0.01)."""
    name: str
    area: float = 0.01

    def __post_init__(self):
        if self.area <= 0:
            raise ModelError(f"section {self.name}: area must be positive")


@dataclass(frozen=True)
class Member:
    id: int
    node_i: int
    node_j: int
    material: str = "steel"
    section: str = "default"
    classification: str = "auto"

    def __post_init__(self):
        if not isinstance(self.id, numbers.Integral) or self.id <= 0:
            raise ModelError(f"member id must be a positive integer, got {self.id!r}")
        object.__setattr__(self, "id", int(self.id))
        object.__setattr__(self, "node_i", int(self.node_i))
        object.__setattr__(self, "node_j", int(self.node_j))
        if self.node_i == self.node_j:
            raise ModelError(f"member {self.id}: end nodes must differ")
        if self.classification not in CLASSIFICATIONS:
            raise ModelError(f"member {self.id}: unknown classification {self.classification!r}")


@dataclass(frozen=True)
class LoadCombination:
    name: str
    factor_dl: float = 0.0
    factor_ll: float = 0.0
    factor_wl: float = 0.0

    def __post_init__(self):
        if self.factor_dl == self.factor_ll == self.factor_wl == 0.0:
            raise ModelError(f"combination {self.name}: at least one factor must be nonzero")

    def factors(self):
        return {"DL": self.factor_dl, "LL": self.factor_ll, "WL": self.factor_wl}


DEFAULT_COMBINATIONS = (
    LoadCombination("1.5(DL+LL)", 1.5, 1.5, 0.0),
    LoadCombination("1.2(DL+LL+WL)", 1.2, 1.2, 1.2),
    LoadCombination("1.5WL+0.9DL", 0.9, 0.0, 1.5),
)


@dataclass(frozen=True)
class TrussModel:
    """Canonical 2D truss input document."""
    nodes: tuple
    members: tuple
    materials: tuple = (STEEL,)
    sections: tuple = (CrossSection("default"),)
    combinations: tuple = DEFAULT_COMBINATIONS

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "materials", tuple(self.materials))
        object.__setattr__(self, "sections", tuple(self.sections))
        object.__setattr__(self, "combinations", tuple(self.combinations))

    def node(self, node_id) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise ModelError(f"unknown node {node_id}")

    def member(self, member_id) -> Member:
        for m in self.members:
            if m.id == member_id:
                return m
        raise ModelError(f"unknown member {member_id}")

    def material(self, name) -> Material:
        for m in self.materials:
            if m.name == name:
                return m
        raise ModelError(f"unknown material {name!r}")

    def section(self, name) -> CrossSection:
        for s in self.sections:
            if s.name == name:
                return s
        raise ModelError(f"unknown section {name!r}")

    def combination(self, name) -> LoadCombination:
        for c in self.combinations:
            if c.name == name:
                return c
        raise ModelError(f"unknown combination {name!r}")

    def member_length(self, member_id) -> float:
        m = self.member(member_id)
        ni, nj = self.node(m.node_i), self.node(m.node_j)
        return math.hypot(nj.x - ni.x, nj.y - ni.y)

    def member_direction(self, member_id):
        m = self.member(member_id)
        ni, nj = self.node(m.node_i), self.node(m.node_j)
        length = math.hypot(nj.x - ni.x, nj.y - ni.y)
        return (nj.x - ni.x) / length, (nj.y - ni.y) / length


def validate(model: TrussModel) -> list:
    """Return a list of violation strings; empty iff the model is usable.

    Covers duplicate/dangling ids, degenerate members, support sufficiency
    (at least 3 constrained DOFs) and connectivity.  Full kinematic
    stability is left to the solver, which reports the offending DOF.
    """
    violations = []
    node_ids = [n.id for n in model.nodes]
    if len(set(node_ids)) != len(node_ids):
        dupes = sorted({i for i in node_ids if node_ids.count(i) > 1})
        violations.append(f"duplicate node ids: {dupes}")
    member_ids = [m.id for m in model.members]
    if len(set(member_ids)) != len(member_ids):
        dupes = sorted({i for i in member_ids if member_ids.count(i) > 1})
        violations.append(f"duplicate member ids: {dupes}")

    if not model.members:
        violations.append("structure has no members")

    known = set(node_ids)
    for m in model.members:
        for end in (m.node_i, m.node_j):
            if end not in known:
                violations.append(f"member {m.id}: unknown node {end}")
        try:
            if m.node_i in known and m.node_j in known and model.member_length(m.id) <= 0:
                violations.append(f"member {m.id}: zero length")
        except ModelError:
            pass
        try:
            model.material(m.material)
        except ModelError:
            violations.append(f"member {m.id}: unknown material {m.material!r}")
        try:
            model.section(m.section)
        except ModelError:
            violations.append(f"member {m.id}: unknown section {m.section!r}")

    constrained = sum(int(n.fixed_x) + int(n.fixed_y) for n in model.nodes)
    if constrained < 3:
        violations.append("insufficient supports")

    if model.members and not violations:
        # connectivity over members
        adj = {i: set() for i in node_ids}
        for m in model.members:
            adj[m.node_i].add(m.node_j)
            adj[m.node_j].add(m.node_i)
        start = node_ids[0]
        seen = {start}
        stack = [start]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if seen != set(node_ids):
            violations.append("structure is not connected")

    return violations


def split_member(model: TrussModel, member_id: int) -> TrussModel:
    """Replace a member by two halves meeting at a new midpoint node.

    The new node is free and unloaded; both halves inherit the parent's
    material, section and classification.  The first half keeps the parent
    id, the second gets the next free member id.
    """
    m = model.member(member_id)
    ni, nj = model.node(m.node_i), model.node(m.node_j)
    new_node_id = max(n.id for n in model.nodes) + 1
    mid = Node(new_node_id, (ni.x + nj.x) / 2.0, (ni.y + nj.y) / 2.0)
    half1 = replace(m, node_j=new_node_id)
    half2 = replace(m, id=max(mm.id for mm in model.members) + 1,
                    node_i=new_node_id, node_j=m.node_j)
    members = tuple(mm for mm in model.members if mm.id != member_id) + (half1, half2)
    return replace(model, nodes=model.nodes + (mid,), members=members)


def _outline_member_ids(model: TrussModel) -> set:
    """Members on the outer face of the member graph (the truss outline).

    Walks the outer face of the planar straight-line graph: start from the
    lowest-leftmost node and repeatedly take the most-clockwise edge
    relative to the arrival direction, which keeps the unbounded face on
    the right.
    """
    if not model.members:
        return set()
    incident = {}
    for m in model.members:
        incident.setdefault(m.node_i, []).append((m.id, m.node_j))
        incident.setdefault(m.node_j, []).append((m.id, m.node_i))

    def angle(u, v):
        nu_, nv = model.node(u), model.node(v)
        return math.atan2(nv.y - nu_.y, nv.x - nu_.x)

    start = min(incident, key=lambda nid: (model.node(nid).y, model.node(nid).x))
    # first step: smallest CCW angle from straight down keeps the hull on the right
    first = min(incident[start], key=lambda e: (angle(start, e[1]) + math.pi / 2) % (2 * math.pi))
    outline = set()
    prev, cur, cur_edge = start, first[1], first[0]
    outline.add(cur_edge)
    for _ in range(4 * len(model.members)):
        back = angle(cur, prev)
        options = [(eid, other) for eid, other in incident[cur]]
        # most clockwise from the reverse arrival direction (excluding it when
        # another option exists)
        def turn(e):
            a = (angle(cur, e[1]) - back) % (2 * math.pi)
            return a if a > 1e-12 else 2 * math.pi
        eid, nxt = min(options, key=turn)
        if cur == start and eid == first[0]:
            break
        outline.add(eid)
        prev, cur, cur_edge = cur, nxt, eid
    return outline


def classify_members(model: TrussModel) -> dict:
    """Map member id -> 'peripheral' | 'interior'.

    Members lying on the outline polygon are peripheral, the rest interior;
    an explicit classification on the member overrides the geometric rule.
    """
    outline = _outline_member_ids(model)
    out = {}
    for m in model.members:
        if m.classification != "auto":
            out[m.id] = m.classification
        else:
            out[m.id] = "peripheral" if m.id in outline else "interior"
    return out
