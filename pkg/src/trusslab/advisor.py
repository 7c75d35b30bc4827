"""Parametric truss configuration suggestions for a given span.

Rule table: spans up to 10 m get Fink, Pratt and Howe options; 10-20 m
Pratt and Warren-with-verticals; beyond 20 m a compound Pratt.  Panel
count is ceil(span / 2 m) (rounded up to even where the shape needs it)
and the height defaults to span/6.
"""
from __future__ import annotations

import math

from .model import (DEFAULT_COMBINATIONS, Member, Node, TrussModel, validate)


class AdvisorError(ValueError):
    pass


def _model(nodes, members):
    return TrussModel(nodes, members, combinations=DEFAULT_COMBINATIONS)


def fink_truss(span: float, height: float) -> TrussModel:
    """Fan truss: four rafter segments, bottom chord at thirds, king web."""
    s, h = span, height
    nodes = [
        Node(1, 0.0, 0.0, support="hinged"),
        Node(2, s / 3, 0.0),
        Node(3, 2 * s / 3, 0.0),
        Node(4, s, 0.0, support="roller_x"),
        Node(5, s / 4, h / 2),
        Node(6, s / 2, h),
        Node(7, 3 * s / 4, h / 2),
    ]
    members = [Member(1, 1, 2), Member(2, 2, 3), Member(3, 3, 4),
               Member(4, 1, 5), Member(5, 5, 6), Member(6, 5, 2),
               Member(7, 2, 6), Member(8, 6, 7), Member(9, 6, 3),
               Member(10, 3, 7), Member(11, 7, 4)]
    return _model(nodes, members)


def triangular_howe_truss(span: float, height: float) -> TrussModel:
    """Triangular truss with quarter verticals and diagonals to mid-bottom."""
    s, h = span, height
    nodes = [
        Node(1, 0.0, 0.0, support="hinged"),
        Node(2, s / 4, 0.0),
        Node(3, s / 2, 0.0),
        Node(4, 3 * s / 4, 0.0),
        Node(5, s, 0.0, support="roller_x"),
        Node(6, s / 4, h / 2),
        Node(7, s / 2, h),
        Node(8, 3 * s / 4, h / 2),
    ]
    members = [Member(1, 1, 2), Member(2, 2, 3), Member(3, 3, 4), Member(4, 4, 5),
               Member(5, 3, 7), Member(6, 1, 6), Member(7, 6, 7), Member(8, 8, 5),
               Member(9, 7, 8), Member(10, 2, 6), Member(11, 6, 3),
               Member(12, 8, 3), Member(13, 4, 8)]
    return _model(nodes, members)


def _parallel_chord(span, height, panels, diagonals) -> TrussModel:
    """Shared generator for Pratt / Howe / Warren-with-verticals layouts."""
    if panels % 2:
        panels += 1
    w = span / panels
    nodes = []
    for i in range(panels + 1):
        support = "hinged" if i == 0 else "roller_x" if i == panels else "free"
        nodes.append(Node(i + 1, i * w, 0.0, support=support))
    top_ids = {}
    nid = panels + 2
    for i in range(1, panels):
        top_ids[i] = nid
        nodes.append(Node(nid, i * w, height))
        nid += 1
    members = []
    mid = 1
    for i in range(panels):
        members.append(Member(mid, i + 1, i + 2))
        mid += 1
    for i in range(1, panels - 1):
        members.append(Member(mid, top_ids[i], top_ids[i + 1]))
        mid += 1
    for i in range(1, panels):
        members.append(Member(mid, i + 1, top_ids[i]))
        mid += 1
    members.append(Member(mid, 1, top_ids[1]))
    mid += 1
    members.append(Member(mid, panels + 1, top_ids[panels - 1]))
    mid += 1
    for bottom_id, top_idx in diagonals(panels):
        members.append(Member(mid, bottom_id, top_ids[top_idx]))
        mid += 1
    return _model(nodes, members)


def pratt_truss(span: float, height: float, panels: int) -> TrussModel:
    """Diagonals fall from the top chord toward midspan."""
    def diagonals(p):
        out = []
        for k in range(1, p // 2):
            out.append((k + 2, k))          # top k down-right to bottom k+2
        for k in range(p // 2 + 1, p):
            out.append((k, k))              # top k down-left to bottom k
        return out
    return _parallel_chord(span, height, panels, diagonals)


def howe_truss(span: float, height: float, panels: int) -> TrussModel:
    """Diagonals rise from the bottom chord toward midspan."""
    def diagonals(p):
        out = []
        for k in range(1, p // 2):
            out.append((k + 1, k + 1))      # bottom at x=k*w up-right to top k+1
        for k in range(1, p // 2):
            out.append((p + 1 - k, p - 1 - k + 0))  # mirrored half
        return out
    return _parallel_chord(span, height, panels, diagonals)


def warren_verticals_truss(span: float, height: float, panels: int) -> TrussModel:
    """Warren layout: diagonals alternate direction panel by panel, with a
    vertical at every interior panel point."""
    def diagonals(p):
        out = []
        for k in range(1, p - 1):
            if k % 2 == 1:
                out.append((k + 2, k))      # top k down-right to bottom k+2
            else:
                out.append((k + 1, k + 1))  # bottom up-right to top k+1
        return out
    return _parallel_chord(span, height, panels, diagonals)


def suggestions(span: float) -> list:
    """Deterministic list of (name, description, model) for a span in m."""
    if not (span > 0 and math.isfinite(span)):
        raise AdvisorError("span must be a positive number")
    height = span / 6.0
    panels = math.ceil(span / 2.0)
    out = []
    if span <= 10.0:
        out.append(("Fink", "Fan truss for short roof spans", fink_truss(span, height)))
        out.append(("Triangular Howe",
                    "Triangular truss with verticals and apex diagonals",
                    triangular_howe_truss(span, height)))
        out.append(("Pratt", "Parallel-chord Pratt truss",
                    pratt_truss(span, height, panels)))
        out.append(("Howe", "Parallel-chord Howe truss",
                    howe_truss(span, height, panels)))
    elif span <= 20.0:
        out.append(("Pratt", "Parallel-chord Pratt truss",
                    pratt_truss(span, height, panels)))
        out.append(("Warren with verticals", "Alternating-diagonal Warren truss",
                    warren_verticals_truss(span, height, panels)))
    else:
        out.append(("Compound Pratt", "Pratt truss with dense paneling",
                    pratt_truss(span, max(height, 2.5), max(panels, 12))))
    for name, _desc, model in out:
        problems = validate(model)
        if problems:
            raise AdvisorError(f"generator {name} produced an invalid model: {problems}")
    return out
