"""Root-system structure: enumeration, basis choice, typing, reflections."""

import pytest
from hypothesis import given, strategies as st

from dlad.errors import NotClosedUnderNegation, RankMismatch
from dlad.exactnum import QZ, QZVector
from dlad.roots import (
    Root,
    RootSubsystem,
    choose_basis,
    classify_components,
    full_root_system,
    phi_x,
    reflection,
    reflection_group,
    simple_roots,
    weyl_order,
)
from dlad.torus import AdTorusElem
from dlad.weyl import SignedPerm


def root(l, i, j, si=1, sj=1):
    vec = [0] * l
    vec[i - 1], vec[j - 1] = si, sj
    return Root(tuple(vec))


# ---------------------------------------------------------------------------
# Root basics


def test_root_validation():
    with pytest.raises(ValueError):
        Root((1, 0, 0, 0))
    with pytest.raises(ValueError):
        Root((1, 1, 1, 0))
    with pytest.raises(ValueError):
        Root((2, -1, 0, 0))


def test_root_parse_str_roundtrip():
    for text in ("+e1-e2", "+e2+e4", "-e1-e3", "+e3-e4"):
        r = Root.parse(text, 4)
        assert str(r) == text
        assert Root.parse(str(r), 4) == r


def test_root_evaluate():
    t = QZVector.parse("0,1/4,1/2,3/4")
    assert root(4, 2, 4).evaluate(t) == QZ(0)       # 1/4 + 3/4
    assert root(4, 1, 3).evaluate(t) == QZ(1, 2)
    assert root(4, 2, 3, 1, -1).evaluate(t) == QZ(3, 4)
    with pytest.raises(RankMismatch):
        root(4, 1, 2).evaluate(QZVector.zero(5))


def test_full_root_system_counts():
    for l in (3, 4, 5):
        roots = full_root_system(l)
        assert len(roots) == 2 * l * (l - 1)
        assert all(-r in roots for r in roots)
        assert sum(1 for r in roots if r.is_positive()) == l * (l - 1)


# ---------------------------------------------------------------------------
# basis selection


def test_simple_roots_cartan_shape():
    for l in (4, 5):
        simple = simple_roots(l)
        assert len(simple) == l
        # D_l diagram: chain 1..l-1, with root l forking off node l-2
        for i, a in enumerate(simple):
            for j, b in enumerate(simple[i + 1:], start=i + 1):
                linked = (j == i + 1 and j != l - 1) or (i == l - 3 and j == l - 1)
                assert a.dot(b) == (-1 if linked else 0)
            assert a.dot(a) == 2


def test_choose_basis_recovers_simple_roots():
    for l in (3, 4, 5):
        assert choose_basis(full_root_system(l)) == simple_roots(l)


def test_choose_basis_requires_negation_closure():
    with pytest.raises(NotClosedUnderNegation):
        choose_basis({root(4, 1, 2)})


def test_choose_basis_on_subsystem():
    # the A1^2 system {+-(e1-e2), +-(e1+e2)} inside D_4
    rs = {root(4, 1, 2, 1, -1), root(4, 1, 2)}
    rs |= {-r for r in rs}
    basis = choose_basis(rs)
    assert basis == (root(4, 1, 2, 1, -1), root(4, 1, 2))


# ---------------------------------------------------------------------------
# classification


def test_classify_full_systems():
    for l, label in ((3, "D3"), (4, "D4"), (5, "D5")):
        comps = classify_components(full_root_system(l))
        assert len(comps) == 1
        assert comps[0][0] == label


def test_classified_subsystem_orders():
    # orders of the Weyl groups of the components seen in the small census
    cases = {
        "D4": 192, "D3": 24, "A3": 24, "A2": 6, "A1": 2,
    }
    for label, order in cases.items():
        sub = RootSubsystem.from_roots(_system_of_type(label))
        assert sub.type_string() == label
        assert sub.weyl_order() == order


def _system_of_type(label):
    if label == "D4":
        return full_root_system(4)
    if label == "D3":
        return {r for r in full_root_system(4) if not r.vec[3]}
    if label == "A3":
        base = {root(4, 1, 2, 1, -1), root(4, 2, 3, 1, -1), root(4, 3, 4, 1, -1)}
        return _closure(base)
    if label == "A2":
        return _closure({root(4, 1, 2, 1, -1), root(4, 2, 3, 1, -1)})
    if label == "A1":
        return {root(4, 1, 2), -root(4, 1, 2)}
    raise AssertionError(label)


def _closure(base):
    rs = set(base) | {-r for r in base}
    changed = True
    while changed:
        changed = False
        for a in list(rs):
            for b in list(rs):
                try:
                    c = a + b
                except ValueError:
                    continue
                if c not in rs:
                    rs.add(c)
                    changed = True
    return rs


def test_phi_x_types():
    cases = {
        "0,0,0,0": ("D4", 192),
        "0,0,0,1/2": ("D3", 24),
        "0,1/4,1/2,3/4": ("A1", 2),
        "0,0,1/2,1/2": ("A1^4", 16),
        "1/4,1/4,1/4,1/4": ("A3", 24),
        "0,1/8,1/4,1/2": ("1", 1),
    }
    for text, (label, order) in cases.items():
        sub = phi_x(AdTorusElem.parse(text))
        assert sub.type_string() == label, text
        assert sub.weyl_order() == order, text


def test_phi_x_vanishing_definition():
    x = AdTorusElem.parse("0,1/4,1/2,3/4")
    rep, alt = x.representatives()
    sub = phi_x(x)
    for r in full_root_system(4):
        vanishes = not r.evaluate(rep) or not r.evaluate(alt)
        assert (r in sub.roots) == vanishes


def test_weyl_order_multiplicative():
    rs = _closure({root(4, 1, 2, 1, -1)}) | {root(4, 3, 4), -root(4, 3, 4)}
    assert weyl_order(rs) == 4  # A1 x A1


# ---------------------------------------------------------------------------
# reflections


def test_reflection_forms():
    assert reflection(root(4, 1, 2, 1, -1)) == SignedPerm.transposition(4, 1, 2)
    assert reflection(root(4, 1, 2)) == SignedPerm(
        SignedPerm.transposition(4, 1, 2).perm, frozenset({1, 2}))


@given(st.sampled_from(sorted(full_root_system(4), key=lambda r: r.vec)))
def test_reflection_involutive_and_even(r):
    s = reflection(r)
    assert s * s == SignedPerm.identity(4)
    assert s.is_even()
    # a reflection negates its root and fixes the perpendicular ones
    assert s.apply_intvec(r.vec) == (-r).vec


def test_reflection_group_orders():
    assert len(reflection_group(full_root_system(4))) == 192
    assert len(reflection_group(_system_of_type("A3"))) == 24
    assert len(reflection_group(_system_of_type("A1"))) == 2
