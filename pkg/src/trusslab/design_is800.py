"""Limit-state design of truss members as welded single / double angle
sections per IS 800:2007.

Force sign convention in this module: positive axial force is treated as
compression, negative as tension (zero-force below 1e-6 kN).  Peripheral
members get double angles, interior ones single angles; all connections
are 4 mm fillet welds on three edges.

Key factors (partial safety and buckling): gamma_m0 = 1.1, imperfection
alpha = 0.49 (buckling class c, angles); effective slenderness of welded
single angles uses k1/k2/k3 = (0.7, 0.6, 5) hinged and (0.2, 0.35, 20)
fixed, interpolated 0.15/0.35 of the way from hinged toward fixed.
"""
from __future__ import annotations

import csv
import functools
import math
from dataclasses import dataclass, field
from importlib import resources

from .model import Material, TrussModel
from .truss_solver import envelope_forces

GAMMA_M0 = 1.1
ALPHA = 0.49
WELD_SIZE_MM = 4.0
ZERO_FORCE_KN = 1e-6
SLENDER_LIMIT_TENSION = 350.0
SLENDER_LIMIT_COMPRESSION = 180.0
K_FACTORS = {"hinged": (0.7, 0.6, 5.0), "fixed": (0.2, 0.35, 20.0)}


class DesignError(RuntimeError):
    pass


@dataclass(frozen=True)
class AngleSection:
    """Catalog entry: legs L >= B and thickness t in mm, gross area in mm^2,
    design radius of gyration in mm, unit weight in kg/m."""
    name: str
    L: float
    B: float
    t: float
    area: float
    r_min: float
    weight: float

    def __post_init__(self):
        if not (self.L >= self.B > 0 and self.t > 0 and self.area > 0
                and self.r_min > 0):
            raise DesignError(f"invalid section {self.name!r}")


@functools.lru_cache(maxsize=1)
def load_library() -> tuple:
    """The shipped angle catalog, ascending by area."""
    path = resources.files("trusslab") / "data" / "angles.csv"
    with path.open() as f:
        reader = csv.DictReader(f)
        sections = [AngleSection(row["designation"], float(row["L"]), float(row["B"]),
                                 float(row["t"]), float(row["area"]),
                                 float(row["r_min"]), float(row["weight"]))
                    for row in reader]
    return tuple(sorted(sections, key=lambda s: (s.area, s.L, s.B, s.t)))


def weld_strength(weld_size_mm: float, fu: float) -> float:
    """Design strength of a fillet weld in N per mm run."""
    if weld_size_mm < 0:
        raise DesignError("weld size must be non-negative")
    return weld_size_mm * 0.7 * 0.462 * fu


@dataclass
class TensionChecks:
    yield_kn: float
    rupture_kn: float
    tb1_kn: float
    tb2_kn: float
    weld_length_mm: float
    avg_mm2: float
    atg_mm2: float

    @property
    def block_shear_kn(self):
        return min(self.tb1_kn, self.tb2_kn)

    @property
    def governing_kn(self):
        return min(self.yield_kn, self.rupture_kn, self.block_shear_kn)


def tension_checks(section: AngleSection, material: Material,
                   weld_size_mm: float = WELD_SIZE_MM) -> TensionChecks:
    """Yield / rupture / block-shear strengths of one welded angle, in kN.

    The three-edge weld is sized for the section's yield capacity, so the
    block-shear shear planes run along the two longitudinal welds
    (Avg = Avn = total weld length * t) and the tension plane across the
    welded leg (Atg = Atn = B * t).
    """
    ag = an = section.area
    fy, fu = material.fy, material.fu
    yield_n = 0.91 * ag * fy
    rupture_n = 0.8 * 0.8 * an * fu
    ws = weld_strength(weld_size_mm, fu)
    lw = yield_n / ws
    avg = avn = lw * section.t
    atg = atn = section.B * section.t
    tb1 = (0.525 * avg * fy + 0.72 * atn * fu) / 1e3
    tb2 = (0.416 * avn * fu + 0.91 * atg * fy) / 1e3
    return TensionChecks(yield_n / 1e3, rupture_n / 1e3, tb1, tb2, lw, avg, atg)


@dataclass
class CompressionChain:
    lambda_vv: float
    lambda_phi: float
    lambda_e: float
    phi: float
    c: float
    f_cd: float


def compression_fcd(section: AngleSection, lo_m: float, material: Material,
                    connection: str = "interpolated") -> CompressionChain:
    """Design compressive stress f_cd (N/mm^2) of a single angle strut.

    lambda_vv uses the catalog r_min; lambda_phi the leg/thickness ratio
    (L+B)/(2t).  The interpolated connection moves 0.15/0.35 of the way
    from the hinged toward the fixed effective slenderness.
    """
    if lo_m <= 0:
        raise DesignError("member length must be positive")
    fy, e_mod = material.fy, material.E
    eps = math.sqrt(250.0 / fy)
    denom = eps * math.sqrt(e_mod * math.pi ** 2 / fy)
    lam_vv = (lo_m * 1e3 / section.r_min) / denom
    lam_phi = ((section.L + section.B) / (2 * section.t)) / denom

    def lam_for(kind):
        k1, k2, k3 = K_FACTORS[kind]
        return math.sqrt(k1 + k2 * lam_vv ** 2 + k3 * lam_phi ** 2)

    if connection == "interpolated":
        lam_h, lam_f = lam_for("hinged"), lam_for("fixed")
        lam = lam_h - (lam_h - lam_f) * (0.15 / 0.35)
    elif connection in K_FACTORS:
        lam = lam_for(connection)
    else:
        raise DesignError(f"unknown connection {connection!r}")

    phi = 0.5 * (1 + ALPHA * (lam - 0.2) + lam ** 2)
    disc = phi ** 2 - lam ** 2
    if disc < 0:
        raise DesignError("buckling curve discriminant negative")
    c = phi + math.sqrt(disc)
    f_cd = (fy / GAMMA_M0) / c
    return CompressionChain(lam_vv, lam_phi, lam, phi, c, f_cd)


def section_classification(section: AngleSection, fy: float) -> str:
    """'fully_effective' when all leg ratios stay within 15.7*eps / 25*eps."""
    eps = math.sqrt(250.0 / fy)
    ok = (section.B / section.t <= 15.7 * eps
          and section.L / section.t <= 15.7 * eps
          and (section.L + section.B) / section.t <= 25 * eps)
    return "fully_effective" if ok else "slender"


@dataclass
class SectionTrial:
    """One candidate section's checks while designing a member."""
    section: AngleSection
    mode: str
    passed: bool
    reason: str = ""
    tension: TensionChecks = None
    classification: str = ""
    hinged: CompressionChain = None
    fixed: CompressionChain = None
    interpolated: CompressionChain = None
    capacity_kn: float = 0.0        # per angle
    slenderness: float = 0.0


@dataclass
class DesignReportEntry:
    member_id: int
    force_kn: float                 # compression positive
    length_m: float
    mode: str                       # tension | compression | zero_force
    configuration: str              # single | double
    section: AngleSection
    trials: list = field(default_factory=list)
    weld_size_mm: float = WELD_SIZE_MM

    @property
    def n_angles(self):
        return 2 if self.configuration == "double" else 1

    @property
    def total_area(self):
        return self.n_angles * self.section.area

    @property
    def designation(self):
        return f"{self.n_angles} x ISA {self.section.name}"

    @property
    def per_angle_force_kn(self):
        return abs(self.force_kn) / self.n_angles

    @property
    def capacity_kn(self):
        """Per-angle capacity of the selected section."""
        return self.trials[-1].capacity_kn if self.trials else 0.0


@dataclass
class DesignReport:
    model: TrussModel
    entries: dict                   # member id -> DesignReportEntry
    envelope: dict                  # member id -> force (kN)


def _try_section(section: AngleSection, mode: str, per_angle_kn: float,
                 lo_m: float, material: Material, weld_size_mm: float) -> SectionTrial:
    slenderness = lo_m * 1e3 / section.r_min
    if mode == "tension":
        checks = tension_checks(section, material, weld_size_mm)
        cap = checks.governing_kn
        ok = cap >= per_angle_kn and slenderness <= SLENDER_LIMIT_TENSION
        reason = "" if ok else (
            "slenderness over 350" if cap >= per_angle_kn else "strength below demand")
        return SectionTrial(section, mode, ok, reason, tension=checks,
                            capacity_kn=cap, slenderness=slenderness)
    cls = section_classification(section, material.fy)
    hinged = compression_fcd(section, lo_m, material, "hinged")
    fixed = compression_fcd(section, lo_m, material, "fixed")
    interp = compression_fcd(section, lo_m, material, "interpolated")
    cap = interp.f_cd * section.area / 1e3
    ok = (cls == "fully_effective" and cap >= per_angle_kn
          and slenderness <= SLENDER_LIMIT_COMPRESSION)
    if ok:
        reason = ""
    elif cls != "fully_effective":
        reason = "slender section"
    elif cap < per_angle_kn:
        reason = "capacity below demand"
    else:
        reason = "slenderness over 180"
    return SectionTrial(section, mode, ok, reason, classification=cls,
                        hinged=hinged, fixed=fixed, interpolated=interp,
                        capacity_kn=cap, slenderness=slenderness)


def design_member(force_kn: float, lo_m: float, material: Material,
                  configuration: str, library=None, member_id: int = 0,
                  weld_size_mm: float = WELD_SIZE_MM) -> DesignReportEntry:
    """Pick the lightest catalog section satisfying all checks.

    force_kn is compression-positive.  Double angles share the force
    equally, so every check compares per-angle demand with per-angle
    capacity.  Zero-force members get the minimum-weight section.
    """
    library = library or load_library()
    n_angles = 2 if configuration == "double" else 1
    if abs(force_kn) < ZERO_FORCE_KN:
        lightest = min(library, key=lambda s: (s.weight, s.area))
        entry = DesignReportEntry(member_id, force_kn, lo_m, "zero_force",
                                  configuration, lightest, weld_size_mm=weld_size_mm)
        entry.trials.append(SectionTrial(lightest, "zero_force", True,
                                         reason="minimum-weight assignment"))
        return entry
    mode = "compression" if force_kn > 0 else "tension"
    per_angle = abs(force_kn) / n_angles
    trials = []
    for section in library:
        trial = _try_section(section, mode, per_angle, lo_m, material, weld_size_mm)
        trials.append(trial)
        if trial.passed:
            entry = DesignReportEntry(member_id, force_kn, lo_m, mode,
                                      configuration, section, trials,
                                      weld_size_mm=weld_size_mm)
            return entry
    raise DesignError(
        f"member {member_id}: no catalog section carries {force_kn:.2f} kN "
        f"({mode}, {configuration}) over {lo_m:.2f} m")


def design_truss(model: TrussModel, results, library=None) -> DesignReport:
    """Design every member for its envelope force across combinations."""
    from .model import classify_members
    library = library or load_library()
    env = envelope_forces(results)
    classes = classify_members(model)
    entries = {}
    for m in model.members:
        config = "double" if classes[m.id] == "peripheral" else "single"
        entries[m.id] = design_member(env[m.id], model.member_length(m.id),
                                      model.material(m.material), config,
                                      library, member_id=m.id)
    return DesignReport(model, entries, env)
