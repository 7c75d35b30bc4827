import math

import pytest

from trusslab.catalog import demonstration_truss, verification_truss
from trusslab.model import (Member, ModelError, Node, TrussModel, classify_members,
                            split_member, validate)


def tiny_model(**kwargs):
    nodes = [Node(1, 0.0, 0.0, support="hinged"),
             Node(2, 2.0, 0.0, support="roller_x")]
    members = [Member(1, 1, 2)]
    return TrussModel(nodes, members, **kwargs)


class TestValidate:
    def test_degenerate_single_node(self):
        model = TrussModel([Node(1, 0.0, 0.0)], [])
        assert validate(model) == ["structure has no members", "insufficient supports"]

    def test_verification_truss_is_clean(self):
        assert validate(verification_truss()) == []

    def test_dangling_node_reference(self):
        model = TrussModel([Node(1, 0.0, 0.0, support="hinged"),
                            Node(2, 1.0, 0.0, support="roller_x")],
                           [Member(1, 1, 99)])
        assert "member 1: unknown node 99" in validate(model)

    def test_disconnected_structure_flagged(self):
        nodes = [Node(1, 0.0, 0.0, support="hinged"), Node(2, 1.0, 0.0, support="roller_x"),
                 Node(3, 5.0, 0.0), Node(4, 6.0, 0.0)]
        members = [Member(1, 1, 2), Member(2, 3, 4)]
        assert "structure is not connected" in validate(TrussModel(nodes, members))

    def test_unknown_material_and_section(self):
        model = TrussModel([Node(1, 0.0, 0.0, support="hinged"),
                            Node(2, 1.0, 0.0, support="roller_x")],
                           [Member(1, 1, 2, material="mystery", section="missing")])
        v = validate(model)
        assert "member 1: unknown material 'mystery'" in v
        assert "member 1: unknown section 'missing'" in v


class TestTypeInvariants:
    def test_node_rejects_nonfinite(self):
        with pytest.raises(ModelError):
            Node(1, math.nan, 0.0)

    def test_node_rejects_bad_support(self):
        with pytest.raises(ModelError):
            Node(1, 0.0, 0.0, support="clamped")

    def test_material_bounds(self):
        from trusslab.model import Material
        with pytest.raises(ModelError):
            Material("m", E=-1, nu=0.3, fy=250, fu=410)
        with pytest.raises(ModelError):
            Material("m", E=2e5, nu=0.5, fy=250, fu=410)
        with pytest.raises(ModelError):
            Material("m", E=2e5, nu=0.3, fy=410, fu=250)

    def test_member_self_loop(self):
        with pytest.raises(ModelError):
            Member(1, 3, 3)

    def test_combination_needs_a_factor(self):
        from trusslab.model import LoadCombination
        with pytest.raises(ModelError):
            LoadCombination("empty", 0.0, 0.0, 0.0)


class TestSplitMember:
    def test_midpoint_node(self):
        model = tiny_model()
        out = split_member(model, 1)
        new = out.node(3)
        assert (new.x, new.y) == (1.0, 0.0)
        assert new.support == "free" and new.loads == {}
        assert len(out.members) == 2
        assert all(abs(out.member_length(m.id) - 1.0) < 1e-15 for m in out.members)

    def test_total_length_preserved(self):
        model = verification_truss()
        before = sum(model.member_length(m.id) for m in model.members)
        out = split_member(model, 7)
        after = sum(out.member_length(m.id) for m in out.members)
        assert abs(after - before) <= 1e-12 * before

    def test_double_split_gives_collinear_thirds(self):
        model = tiny_model()
        once = split_member(model, 1)
        # split the first half again: quarter points at 0.5
        twice = split_member(once, 1)
        assert len(twice.members) == 3
        assert len(twice.nodes) == 4
        xs = sorted(n.x for n in twice.nodes)
        assert xs == [0.0, 0.5, 1.0, 2.0]
        assert all(n.y == 0.0 for n in twice.nodes)

    def test_unknown_member(self):
        with pytest.raises(ModelError):
            split_member(tiny_model(), 17)


class TestClassifyMembers:
    def test_demonstration_truss_periphery(self):
        classes = classify_members(demonstration_truss())
        peripheral = {mid for mid, c in classes.items() if c == "peripheral"}
        assert peripheral == {1, 2, 3, 4, 5, 8, 11}
        assert {mid for mid, c in classes.items() if c == "interior"} == {6, 7, 9, 10}

    def test_triangle_is_all_peripheral(self):
        nodes = [Node(1, 0.0, 0.0, support="hinged"), Node(2, 2.0, 0.0, support="roller_x"),
                 Node(3, 1.0, 1.5)]
        members = [Member(1, 1, 2), Member(2, 2, 3), Member(3, 3, 1)]
        classes = classify_members(TrussModel(nodes, members))
        assert set(classes.values()) == {"peripheral"}

    def test_user_override_wins(self):
        model = demonstration_truss()
        members = tuple(m if m.id != 1 else Member(1, m.node_i, m.node_j,
                                                   m.material, m.section, "interior")
                        for m in model.members)
        from dataclasses import replace
        classes = classify_members(replace(model, members=members))
        assert classes[1] == "interior"

    def test_invariant_under_rigid_motion(self):
        model = demonstration_truss()
        base = classify_members(model)
        angle = 0.7
        c, s = math.cos(angle), math.sin(angle)
        from dataclasses import replace
        nodes = tuple(replace(n, x=c * n.x - s * n.y + 3.2, y=s * n.x + c * n.y - 1.7)
                      for n in model.nodes)
        assert classify_members(replace(model, nodes=nodes)) == base
