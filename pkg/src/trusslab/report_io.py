"""Persistence and report formats: the sectioned model CSV, the detailed
design text report, comparison tables and density rasters.

The CSV schema is normative for this package:

    TRUSSLAB_MODEL,1
    [NODES]    id,x,y,support,roller_axis,DLx,DLy,LLx,LLy,WLx,WLy
    [MATERIALS] name,E,nu,fy,fu
    [SECTIONS] name,area
    [MEMBERS]  id,ni,nj,material,section,classification
    [COMBOS]   name,fdl,fll,fwl

Numbers are written with full round-trip precision (repr), so
parse(serialize(m)) reproduces the model exactly.
"""
from __future__ import annotations

import io

import numpy as np

from .design_is800 import weld_strength
from .model import (CrossSection, LoadCombination, Material, Member, Node,
                    TrussModel)

MAGIC = "TRUSSLAB_MODEL"
VERSION = "1"

_HEADERS = {
    "[NODES]": "id,x,y,support,roller_axis,DLx,DLy,LLx,LLy,WLx,WLy",
    "[MATERIALS]": "name,E,nu,fy,fu",
    "[SECTIONS]": "name,area",
    "[MEMBERS]": "id,ni,nj,material,section,classification",
    "[COMBOS]": "name,fdl,fll,fwl",
}


class ReportIOError(ValueError):
    pass


def _fmt(x: float) -> str:
    return repr(float(x))


def serialize(model: TrussModel) -> str:
    """Deterministic sectioned-CSV document for a model."""
    out = [f"{MAGIC},{VERSION}"]
    out.append("[NODES]")
    out.append(_HEADERS["[NODES]"])
    for n in model.nodes:
        support = n.support
        axis = ""
        if support.startswith("roller_"):
            support, axis = "roller", n.support[-1]
        dl, ll, wl = n.load("DL"), n.load("LL"), n.load("WL")
        out.append(",".join([str(n.id), _fmt(n.x), _fmt(n.y), support, axis,
                             _fmt(dl[0]), _fmt(dl[1]), _fmt(ll[0]), _fmt(ll[1]),
                             _fmt(wl[0]), _fmt(wl[1])]))
    out.append("[MATERIALS]")
    out.append(_HEADERS["[MATERIALS]"])
    for m in model.materials:
        out.append(",".join([m.name, _fmt(m.E), _fmt(m.nu), _fmt(m.fy), _fmt(m.fu)]))
    out.append("[SECTIONS]")
    out.append(_HEADERS["[SECTIONS]"])
    for s in model.sections:
        out.append(",".join([s.name, _fmt(s.area)]))
    out.append("[MEMBERS]")
    out.append(_HEADERS["[MEMBERS]"])
    for m in model.members:
        out.append(",".join([str(m.id), str(m.node_i), str(m.node_j),
                             m.material, m.section, m.classification]))
    out.append("[COMBOS]")
    out.append(_HEADERS["[COMBOS]"])
    for c in model.combinations:
        out.append(",".join([c.name, _fmt(c.factor_dl), _fmt(c.factor_ll),
                             _fmt(c.factor_wl)]))
    return "\n".join(out) + "\n"


def _parse_float(token, lineno, column):
    try:
        return float(token)
    except ValueError:
        raise ReportIOError(f"line {lineno}: column {column!r} is not a number: {token!r}") from None


def _parse_int(token, lineno, column):
    try:
        return int(token)
    except ValueError:
        raise ReportIOError(f"line {lineno}: column {column!r} is not an integer: {token!r}") from None


def parse(text: str) -> TrussModel:
    """Parse a model document; errors carry the offending line number."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(MAGIC):
        raise ReportIOError(f"line 1: missing {MAGIC} header")
    nodes, materials, sections, members, combos = [], [], [], [], []
    section_name = None
    expect_header = False
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("["):
            if line not in _HEADERS:
                raise ReportIOError(f"line {lineno}: unknown section header {line}")
            section_name = line
            expect_header = True
            continue
        if expect_header:
            if line != _HEADERS[section_name]:
                raise ReportIOError(
                    f"line {lineno}: expected column header {_HEADERS[section_name]!r}")
            expect_header = False
            continue
        parts = line.split(",")
        ncols = len(_HEADERS[section_name].split(","))
        if len(parts) != ncols:
            raise ReportIOError(
                f"line {lineno}: expected {ncols} fields, found {len(parts)}")
        if section_name == "[NODES]":
            nid = _parse_int(parts[0], lineno, "id")
            x = _parse_float(parts[1], lineno, "x")
            y = _parse_float(parts[2], lineno, "y")
            support, axis = parts[3], parts[4]
            if support == "roller":
                if axis not in ("x", "y"):
                    raise ReportIOError(f"line {lineno}: roller needs axis x or y")
                support = f"roller_{axis}"
            elif support not in ("free", "hinged"):
                raise ReportIOError(f"line {lineno}: unknown support {parts[3]!r}")
            vals = [_parse_float(p, lineno, c) for p, c in
                    zip(parts[5:], ["DLx", "DLy", "LLx", "LLy", "WLx", "WLy"])]
            loads = {}
            for case, (fx, fy) in zip(("DL", "LL", "WL"),
                                      [(vals[0], vals[1]), (vals[2], vals[3]),
                                       (vals[4], vals[5])]):
                if fx != 0.0 or fy != 0.0:
                    loads[case] = (fx, fy)
            nodes.append(Node(nid, x, y, support=support, loads=loads))
        elif section_name == "[MATERIALS]":
            materials.append(Material(parts[0],
                                      _parse_float(parts[1], lineno, "E"),
                                      _parse_float(parts[2], lineno, "nu"),
                                      _parse_float(parts[3], lineno, "fy"),
                                      _parse_float(parts[4], lineno, "fu")))
        elif section_name == "[SECTIONS]":
            sections.append(CrossSection(parts[0], _parse_float(parts[1], lineno, "area")))
        elif section_name == "[MEMBERS]":
            members.append(Member(_parse_int(parts[0], lineno, "id"),
                                  _parse_int(parts[1], lineno, "ni"),
                                  _parse_int(parts[2], lineno, "nj"),
                                  parts[3], parts[4], parts[5]))
        elif section_name == "[COMBOS]":
            combos.append(LoadCombination(parts[0],
                                          _parse_float(parts[1], lineno, "fdl"),
                                          _parse_float(parts[2], lineno, "fll"),
                                          _parse_float(parts[3], lineno, "fwl")))
        else:
            raise ReportIOError(f"line {lineno}: data before any section header")
    kwargs = {}
    if materials:
        kwargs["materials"] = materials
    if sections:
        kwargs["sections"] = sections
    if combos:
        kwargs["combinations"] = combos
    return TrussModel(nodes, members, **kwargs)


def density_image(field, upscale: int = 1) -> bytes:
    """Binary PGM raster, one pixel per element, dark = solid."""
    x = np.asarray(field.densities if hasattr(field, "densities") else field)
    pix = np.rint(255.0 * (1.0 - x)).astype(np.uint8)
    if upscale > 1:
        pix = np.kron(pix, np.ones((upscale, upscale), dtype=np.uint8))
    h, w = pix.shape
    header = f"P5\n{w} {h}\n255\n".encode()
    return header + pix.tobytes()


def parse_density_image(data: bytes) -> np.ndarray:
    """Inverse of density_image (for tests and clients)."""
    buf = io.BytesIO(data)
    magic = buf.readline().strip()
    if magic != b"P5":
        raise ReportIOError("not a binary PGM")
    w, h = map(int, buf.readline().split())
    maxval = int(buf.readline())
    pix = np.frombuffer(buf.read(w * h), dtype=np.uint8).reshape(h, w)
    return 1.0 - pix / float(maxval)


def _fmt2(x) -> str:
    return f"{x:.2f}"


def _tension_block(out, trial, per_angle_kn, weld_size):
    t = trial.tension
    out += [
        "Strength of Selected Section:-",
        f"  Strength due to yielding of Gross Area = (0.91*Ag*fy)/1000: {_fmt2(t.yield_kn)} kN",
        f"  Strength due to rupture of Net Area = (0.8*0.8*An*fu)/1000: {_fmt2(t.rupture_kn)} kN",
        "  Strength due to Block Shear:",
        f"    Tb1 = (0.525*Avg*fy+0.72*Atn*fu)/1000: {_fmt2(t.tb1_kn)} kN",
        f"    Tb2 = (0.416*Avn*fu+0.91*Atg*fy)/1000: {_fmt2(t.tb2_kn)} kN",
        f"  Strength due to Block Shear: {_fmt2(t.block_shear_kn)} kN",
        "",
        f"Tensile Strength of Selected Section: {_fmt2(trial.capacity_kn)} kN "
        f"{'>' if trial.capacity_kn >= per_angle_kn else '<'} {_fmt2(per_angle_kn)} kN",
    ]
    return out


def _compression_block(out, trial, per_angle_kn):
    s = trial.section
    eps = 1.0  # printed for fy = 250 family; ratios below carry the check
    out += [
        "Check For Section Classification:-",
        f"  Shorter Arm to thickness ratio b/t={_fmt2(s.B / s.t)}",
        f"  Longer Arm to thickness ratio L/t={_fmt2(s.L / s.t)}",
        f"  Sum of arms to thickness ratio (L+B)/t={_fmt2((s.L + s.B) / s.t)}",
        ("Hence full area of section is effective."
         if trial.classification == "fully_effective" else "Section is slender."),
        "",
        "Strength of Selected Section using equations:",
        "  (Design Compressive Strength)",
        f"  lambda_vv = {_fmt2(trial.hinged.lambda_vv)}",
        f"  lambda_phi = {_fmt2(trial.hinged.lambda_phi)}",
        "Assuming Hinged Connection:",
        "  k1=0.7 k2=0.6 k3=5",
        f"  lambda_eh = {_fmt2(trial.hinged.lambda_e)}",
        f"  phi = {_fmt2(trial.hinged.phi)}",
        f"  c = (phi+sqrt(phi^2-lambda^2)) = {_fmt2(trial.hinged.c)}",
        f"  f_cd = (fy/gamma_m0)/c = {_fmt2(trial.hinged.f_cd)} N/mm^2",
        "Assuming Fixed Connection:",
        "  k1=0.2 k2=0.35 k3=20",
        f"  lambda_ef = {_fmt2(trial.fixed.lambda_e)}",
        f"  phi = {_fmt2(trial.fixed.phi)}",
        f"  c = (phi+sqrt(phi^2-lambda^2)) = {_fmt2(trial.fixed.c)}",
        f"  f_cd = (fy/gamma_m0)/c = {_fmt2(trial.fixed.f_cd)} N/mm^2",
        "Interpolating values for hinged and fixed connection:",
        f"  lambda_e = lambda_eh-[(lambda_eh-lambda_ef)*(0.15/0.35)] = {_fmt2(trial.interpolated.lambda_e)}",
        f"  phi = {_fmt2(trial.interpolated.phi)}",
        f"  c = (phi+sqrt(phi^2-lambda^2)) = {_fmt2(trial.interpolated.c)}",
        f"  f_cd = (fy/gamma_m0)/c = {_fmt2(trial.interpolated.f_cd)} N/mm^2",
        "",
        f"Design Compressive Force: (f_cd*A) = {_fmt2(trial.capacity_kn)} kN "
        f"{'>' if trial.capacity_kn >= per_angle_kn else '<'} {_fmt2(per_angle_kn)} kN",
    ]
    return out


def design_report_text(report) -> str:
    """Per-member design walkthrough in the classical hand-calc layout."""
    out = []
    for mid in sorted(report.entries):
        entry = report.entries[mid]
        material = report.model.material(report.model.member(mid).material)
        mode_label = {"tension": "Tension Member", "compression": "Compression Member",
                      "zero_force": "Zero Force Member"}[entry.mode]
        out += [
            f"Steel Design of Member No:{mid} ({mode_label})",
            "",
            f"Yield Strength of Steel(fy): {_fmt2(material.fy)} N/mm^2",
            f"Ultimate Strength of Steel(fu): {_fmt2(material.fu)} N/mm^2",
            f"Force in the member(F): {_fmt2(abs(entry.force_kn))} kN",
            f"Length of the member(Lo): {_fmt2(entry.length_m)} m",
            ("Providing double angle section" if entry.configuration == "double"
             else "Providing single angle section"),
        ]
        if entry.mode == "zero_force":
            out += [
                "Zero force member: assigned the minimum-weight catalog section.",
                f"Section Selected: {entry.section.name} mm",
                f"  Gross Area of Section(Ag): {_fmt2(entry.section.area)} mm^2",
                "All strength checks are trivially satisfied.",
            ]
        else:
            per_angle = entry.per_angle_force_kn
            required = abs(entry.force_kn) * 1e3 / (0.91 * material.fy) / entry.n_angles
            out += [
                f"Area of each Section Required to resist the force: {_fmt2(required)} mm^2",
                f"Assuming Weld Size: {entry.weld_size_mm:.0f} mm",
                f"  Strength of Weld = weld_size*0.7*0.462*fu: "
                f"{_fmt2(weld_strength(entry.weld_size_mm, material.fu))} N/mm",
                "",
            ]
            for trial in entry.trials:
                out += [
                    f"Section Selected: {trial.section.name} mm",
                    f"  Gross Area of Section(Ag): {_fmt2(trial.section.area)} mm^2",
                ]
                if entry.mode == "tension":
                    out.append(f"  Net Area of Section(An): {_fmt2(trial.section.area)} mm^2")
                    out.append("")
                    out = _tension_block(out, trial, per_angle, entry.weld_size_mm)
                else:
                    out.append("")
                    out = _compression_block(out, trial, per_angle)
                out += [
                    "",
                    "Check For Slenderness Ratio Limits:-",
                    f"  Effective Length of the member Le = (Lo*1.0): {_fmt2(entry.length_m)} m",
                    f"  Minimum Radius of Gyration (Rmin): {_fmt2(trial.section.r_min)} mm",
                    f"  Slenderness Ratio = (Le*1000)/Rmin: {_fmt2(trial.slenderness)} "
                    f"{'<' if trial.slenderness <= (350 if entry.mode == 'tension' else 180) else '>'} "
                    f"{350 if entry.mode == 'tension' else 180}",
                ]
                if not trial.passed:
                    out.append(f"Section rejected: {trial.reason}; trying next section.")
                out.append("")
        out += [
            f"Provide {entry.n_angles} angle {entry.section.name} with weld size "
            f"{entry.weld_size_mm:.0f} mm all along all three edges.",
            "",
            "",
        ]
    return "\n".join(out)


def comparison_table(report, size_result) -> list:
    """Rows mirroring the design-vs-optimal summary table."""
    if set(report.entries) != set(size_result.areas):
        raise ReportIOError("design report and optimization cover different members")
    rows = []
    for mid in sorted(report.entries):
        entry = report.entries[mid]
        rows.append({
            "member": mid,
            "force_kn": round(float(entry.force_kn), 2),
            "length_m": round(float(entry.length_m), 2),
            "designation": entry.designation,
            "area_mm2": round(float(entry.total_area), 2),
            "optimized_area_mm2": round(float(size_result.areas[mid]), 2),
        })
    return rows


def comparison_table_text(rows) -> str:
    header = ("Member  Force (kN)  Length (m)  Section"
              "                    Area (mm^2)  Optimized Area (mm^2)")
    out = [header, "-" * len(header)]
    for r in rows:
        out.append(f"{r['member']:>6}  {r['force_kn']:>10.2f}  {r['length_m']:>10.2f}  "
                   f"{r['designation']:<25}  {r['area_mm2']:>11.2f}  "
                   f"{r['optimized_area_mm2']:>21.2f}")
    return "\n".join(out) + "\n"


def forces_table(result) -> list:
    return [{"member": mid, "force_kn": round(float(f), 6)}
            for mid, f in sorted(result.member_forces.items())]
