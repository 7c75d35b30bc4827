"""Built-in reference models: the 8 m verification truss and the fan-truss
demonstration model used by the documentation, tests and web UI."""
from __future__ import annotations

import math

from .model import (DEFAULT_COMBINATIONS, LoadCombination, Member, Node,
                    TrussModel)


def verification_truss() -> TrussModel:
    """Symmetric triangular truss, 8 m span, 2.31 m high, at a 30 degree pitch.

    Loaded with 2 kN upward at both rafter midpoints and the apex; the
    member forces have a closed-form solution (bottom chord -3*sqrt(3),
    rafters +6/+4, king post -2, diagonals +2, outer verticals zero).
    """
    h = 4.0 / math.sqrt(3.0)  # 2.3094 m
    up = {"DL": (0.0, 2.0)}
    nodes = [
        Node(1, 0.0, 0.0, support="hinged"),
        Node(2, 2.0, 0.0),
        Node(3, 4.0, 0.0),
        Node(4, 6.0, 0.0),
        Node(5, 8.0, 0.0, support="roller_x"),
        Node(6, 2.0, h / 2, loads=up),
        Node(7, 4.0, h, loads=up),
        Node(8, 6.0, h / 2, loads=up),
    ]
    members = [
        Member(1, 1, 2),    # bottom chord
        Member(2, 2, 3),
        Member(3, 3, 4),
        Member(4, 4, 5),
        Member(5, 3, 7),    # king post
        Member(6, 1, 6),    # rafters
        Member(7, 6, 7),
        Member(8, 8, 5),
        Member(9, 7, 8),
        Member(10, 2, 6),   # verticals (zero-force)
        Member(11, 6, 3),   # diagonals
        Member(12, 8, 3),
        Member(13, 4, 8),
    ]
    return TrussModel(nodes, members,
                      combinations=(LoadCombination("DL", 1.0, 0.0, 0.0),))


def verification_analytical_forces() -> dict:
    """Closed-form axial forces (kN, tension +) of `verification_truss`."""
    b = -3.0 * math.sqrt(3.0)
    return {1: b, 2: b, 3: b, 4: b, 5: -2.0, 6: 6.0, 7: 4.0, 8: 6.0, 9: 4.0,
            10: 0.0, 11: 2.0, 12: 2.0, 13: 0.0}


def demonstration_truss() -> TrussModel:
    """Seven-node fan truss used for the design / optimization walkthrough.

    Rafter half-segments are exactly 1.35 m and the outer bottom panels
    1.66 m.  The three net 10 kN upward loads (1.5(DL+LL) with DL = 20/3)
    put the bottom chord at exactly -37.5 kN and the outer rafters at
    +15*sqrt(7.25) = +40.39 kN.
    """
    u_ry = 1.0 / math.sqrt(7.25)
    u_rx = 2.5 * u_ry
    span = 5.4 * u_rx          # 4 rafter segments of 1.35 m
    h = 2.7 * u_ry
    xf = 1.66                  # outer bottom panel
    up = {"DL": (0.0, 20.0 / 3.0)}
    nodes = [
        Node(1, 0.0, 0.0, support="hinged"),
        Node(2, xf, 0.0),
        Node(3, span - xf, 0.0),
        Node(4, span, 0.0, support="roller_x"),
        Node(5, span / 4, h / 2, loads=up),
        Node(6, span / 2, h, loads=up),
        Node(7, 3 * span / 4, h / 2, loads=up),
    ]
    members = [
        Member(1, 1, 2),   # bottom chord
        Member(2, 2, 3),
        Member(3, 3, 4),
        Member(4, 1, 5),   # rafters
        Member(5, 5, 6),
        Member(6, 5, 2),   # webs
        Member(7, 2, 6),
        Member(8, 6, 7),
        Member(9, 6, 3),
        Member(10, 3, 7),
        Member(11, 7, 4),
    ]
    return TrussModel(nodes, members, combinations=DEFAULT_COMBINATIONS)
