from collections import Counter

import pytest

from icosa.field import ONE, fe, parse_element
from icosa.group import (GENERATORS, IDENTITY, MINUS_IDENTITY, RHO_G, RHO_H, RHO_I, BadGenerators, GroupElement,
                         class_data, generate_group, group, is_pseudoreflection, mirror_line, mirror_lines, orbit,
                         projective_group, pseudoreflections, stabilizer)
from icosa.poly import ProjectivePoint, X


def test_group_order():
    assert len(group()) == 120
    assert len(projective_group()) == 60
    assert MINUS_IDENTITY in group()


def test_class_sizes_and_traces():
    classes = class_data()
    assert sorted(c.size for c in classes) == sorted([1, 1, 15, 15, 20, 12, 12, 20, 12, 12])
    traces = Counter((c.size, c.trace) for c in classes)
    want = Counter({(1, fe(3)): 1, (1, fe(-3)): 1, (15, fe(1)): 1, (15, fe(-1)): 1, (20, fe(0)): 2,
                    (12, parse_element("w")): 1, (12, parse_element("1-w")): 1,
                    (12, parse_element("w-1")): 1, (12, parse_element("-w")): 1})
    assert traces == want


def test_pseudoreflections():
    refl = pseudoreflections()
    assert len(refl) == 15
    assert all(r.trace == ONE and r * r == IDENTITY for r in refl)
    assert is_pseudoreflection(RHO_G) and not is_pseudoreflection(RHO_I * RHO_G)


def test_generators_are_involutions():
    assert all(g * g == IDENTITY for g in GENERATORS)


def test_mirror_lines():
    assert mirror_line(RHO_G).proportional_to(X) is not None
    lines = mirror_lines()
    assert len(set(lines)) == 15
    for r, l in zip(pseudoreflections(), lines):
        assert l.act(r).proportional_to(l) is not None


def test_projective_canonical():
    g = RHO_I
    h = GroupElement([[-v for v in row] for row in g.entries])
    assert g.canonical_projective == h.canonical_projective
    assert g.projective_order() in (2, 3, 5) and g.order() >= g.projective_order()


def test_bad_generators():
    # an element of infinite order
    with pytest.raises(BadGenerators):
        generate_group((GroupElement([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),), limit=50)


@pytest.mark.parametrize("pt,size,stab,typ", [
    (ProjectivePoint(0, 0, 1), 15, 4, "D4 (Klein four)"),
    (ProjectivePoint(1, 1, 1), 10, 6, "D6"),
    (ProjectivePoint(parse_element("w"), 0, 1), 6, 10, "D10"),
])
def test_orbits(pt, size, stab, typ):
    rec = orbit(pt)
    assert rec.size == size and rec.stabilizer_order == stab and rec.stabilizer_type == typ
    assert rec.size * rec.stabilizer_order == 60
    assert len(stabilizer(pt)) == stab


def test_klein_stabilizer_all_involutions():
    rec = orbit(ProjectivePoint(0, 0, 1))
    assert rec.stabilizer_exponent_profile == Counter({1: 1, 2: 3})


def test_json():
    d = RHO_H.to_json()
    assert isinstance(d, (list, dict))
