from __future__ import annotations

import itertools

import pytest

from softtopo.core import (
    ElementBag,
    SoftElement,
    SoftSet,
    Universe,
    full_set,
    is_member,
    is_soft_subset,
    iter_elements,
    null_set,
    pointwise_complement,
    span,
)
from softtopo.errors import NotAdmissibleError, UniverseMismatchError
from softtopo.topology import (
    LimitingMode,
    SoftTopology,
    closed_sets,
    closure,
    full_topology,
    indiscrete_topology,
    interior,
    is_closed,
    is_interior_element,
    is_limiting,
    is_nbd,
    is_open,
    limiting_elements,
    nbd_witness,
    pairwise_admissible_violations,
    space_elements,
    topology_from,
    verify_topology,
)

from conftest import soft


def all_admissible(u: Universe):
    yield null_set(u)
    for combo in itertools.product(range(1, 2**u.n_points), repeat=u.n_params):
        yield SoftSet(u, combo)


# --- verification ---------------------------------------------------------------


def test_regression_space_is_valid(abcd_doc, abcd_topo):
    report = verify_topology(abcd_doc.universe, abcd_topo.members)
    assert report.valid
    assert report.violations == ()
    assert len(abcd_topo) == 6


def test_verifier_reports_every_violation():
    u = Universe.of(("a", "b"), ("e1", "e2"))
    f = soft(u, e1=["a"], e2=["a", "b"])
    g = soft(u, e1=["a", "b"], e2=["a"])
    # no null, no absolute, union and meet of f and g missing: all reported
    report = verify_topology(u, (f, g))
    assert not report.valid
    axioms = sorted(v.axiom for v in report.violations)
    assert axioms == [
        "absolute-member",
        "intersection-closure",
        "phi-member",
        "union-closure",
    ]


def test_verifier_flags_union_closure():
    u = Universe.of(("a", "b", "c"), ("e1", "e2"))
    f = soft(u, e1=["a"], e2=["a"])
    g = soft(u, e1=["b"], e2=["b"])
    report = verify_topology(u, (null_set(u), full_set(u), f, g))
    assert not report.valid
    assert [v.axiom for v in report.violations] == ["union-closure"]
    (viol,) = report.violations
    assert viol.offending == soft(u, e1=["a", "b"], e2=["a", "b"])


def test_verifier_flags_inadmissible_member():
    u = Universe.of(("a", "b"), ("e1", "e2"))
    mixed = soft(u, e1=["a"], e2=[])
    report = verify_topology(u, (null_set(u), full_set(u), mixed))
    assert not report.valid
    assert any(v.axiom == "member-admissible" for v in report.violations)


def test_topology_from_rejects_invalid_families():
    u = Universe.of(("a", "b"), ("e1",))
    with pytest.raises(Exception):
        topology_from(u, (full_set(u),))  # missing the null set


def test_full_topology_size_formula():
    for points, params in ((2, 1), (2, 2), (3, 2)):
        u = Universe.of(tuple(f"p{i}" for i in range(points)),
                        tuple(f"e{i}" for i in range(params)))
        expected = (2**points - 1) ** params + 1
        assert len(full_topology(u)) == expected
        assert verify_topology(u, full_topology(u).members).valid


def test_full_topology_is_memoized():
    u = Universe.of(("a", "b"), ("e1", "e2"))
    assert full_topology(u) is full_topology(Universe.of(("a", "b"), ("e1", "e2")))


def test_indiscrete_topology():
    u = Universe.of(("a", "b"), ("e1", "e2"))
    topo = indiscrete_topology(u)
    assert topo.members == (null_set(u), full_set(u))
    assert verify_topology(u, topo.members).valid


# --- closed sets ------------------------------------------------------------------


def test_closed_set_list(abcd_doc, abcd_topo):
    u = abcd_doc.universe
    expected = {
        full_set(u),
        null_set(u),
        soft(u, e1=["b", "c", "d"], e2=["a", "c", "d"]),
        soft(u, e1=["a", "d"], e2=["a", "b"]),
        soft(u, e1=["d"], e2=["a"]),
    }
    assert set(closed_sets(abcd_topo)) == expected


def test_member_with_inadmissible_complement_contributes_no_closed_set(abcd_doc, abcd_topo):
    # the widest proper member fills one slice, so its complement is mixed
    f4 = abcd_doc.sets["F4"]
    comp = pointwise_complement(f4)
    assert comp == soft(abcd_doc.universe, e1=[], e2=["a"])
    assert not is_closed(abcd_topo, comp)
    assert comp not in closed_sets(abcd_topo)


def test_is_closed_demands_admissible_subject(abcd_doc, abcd_topo):
    u = abcd_doc.universe
    assert is_closed(abcd_topo, soft(u, e1=["d"], e2=["a"]))
    assert is_closed(abcd_topo, null_set(u))
    assert is_closed(abcd_topo, full_set(u))
    assert not is_closed(abcd_topo, abcd_doc.sets["F1"])  # open but not closed
    with pytest.raises(UniverseMismatchError):
        is_closed(abcd_topo, full_set(Universe.of(("a",), ("e1",))))


# --- closure and interior ----------------------------------------------------------


def test_closure_regression_value(abcd_doc, abcd_topo):
    f = abcd_doc.sets["F"]
    assert closure(abcd_topo, f) == soft(
        abcd_doc.universe, e1=["b", "c", "d"], e2=["a", "c", "d"]
    )


def test_interior_regression_value(abcd_doc, abcd_topo):
    g = abcd_doc.sets["G"]
    assert interior(abcd_topo, g) == abcd_doc.sets["F1"]


def test_closure_laws_exhaustively(abcd_doc, abcd_topo):
    for s in all_admissible(abcd_doc.universe):
        c = closure(abcd_topo, s)
        assert is_soft_subset(s, c)
        assert closure(abcd_topo, c) == c
        assert is_closed(abcd_topo, c)


def test_interior_laws_exhaustively(abcd_doc, abcd_topo):
    for s in all_admissible(abcd_doc.universe):
        inner = interior(abcd_topo, s)
        assert is_soft_subset(inner, s)
        assert interior(abcd_topo, inner) == inner
        assert is_open(abcd_topo, inner)


def test_interior_equals_element_scan(abcd_doc, abcd_topo):
    """The member-union route must agree with the defining element scan."""
    u = abcd_doc.universe
    for s in all_admissible(u):
        bag = [
            x
            for x in iter_elements(s)
            if any(
                is_member(x, o) and is_soft_subset(o, s) for o in abcd_topo.members
            )
        ]
        expected = span(ElementBag.of(u, bag)) if bag else null_set(u)
        assert interior(abcd_topo, s) == expected


def test_interior_elements_and_witness(abcd_doc, abcd_topo):
    g = abcd_doc.sets["G"]
    x = SoftElement(abcd_doc.universe, (0, 1))  # (a, b)
    assert is_interior_element(abcd_topo, g, x)
    assert not is_interior_element(
        abcd_topo, g, SoftElement(abcd_doc.universe, (1, 1))
    )


def test_closure_rejects_inadmissible_input(abcd_doc, abcd_topo):
    mixed = soft(abcd_doc.universe, e1=["a"], e2=[])
    with pytest.raises(NotAdmissibleError):
        closure(abcd_topo, mixed)
    with pytest.raises(NotAdmissibleError):
        interior(abcd_topo, mixed)


# --- limiting elements --------------------------------------------------------------


def test_limiting_elements_per_parameter(abcd_doc, abcd_topo):
    f = abcd_doc.sets["F"]
    coords = [x.coords for x in limiting_elements(abcd_topo, f)]
    assert coords == [(1, 0), (1, 3), (3, 0), (3, 3)]


def test_limiting_elements_whole_open_reading(abcd_doc, abcd_topo):
    f = abcd_doc.sets["F"]
    coords = [
        x.coords
        for x in limiting_elements(abcd_topo, f, LimitingMode.WHOLE_OPEN)
    ]
    assert coords == [
        (0, 0), (0, 3), (1, 0), (1, 1), (1, 3), (3, 0), (3, 1), (3, 3)
    ]
    # the readings genuinely differ on this space
    assert len(coords) != len(limiting_elements(abcd_topo, f))


def test_is_limiting_spot_check(abcd_doc, abcd_topo):
    f = abcd_doc.sets["F"]
    u = abcd_doc.universe
    assert is_limiting(abcd_topo, f, SoftElement(u, (1, 0)))
    assert not is_limiting(abcd_topo, f, SoftElement(u, (0, 1)))


# --- neighborhoods -------------------------------------------------------------------


def test_nbd_regression(abcd_doc, abcd_topo):
    g = abcd_doc.sets["G"]
    x = SoftElement(abcd_doc.universe, (0, 1))  # (a, b)
    assert is_nbd(abcd_topo, g, x)
    witness = nbd_witness(abcd_topo, g, x)
    assert witness == abcd_doc.sets["F1"]


def test_nbd_negative(abcd_doc, abcd_topo):
    n = abcd_doc.sets["F"]  # ({c},{c}) holds no open around anything
    x = SoftElement(abcd_doc.universe, (2, 2))
    assert not is_nbd(abcd_topo, n, x)
    assert nbd_witness(abcd_topo, n, x) is None


# --- scans used by the checkers -------------------------------------------------------


def test_space_elements_cover_the_absolute(abcd_topo):
    els = space_elements(abcd_topo)
    assert len(els) == 16
    assert all(is_member(x, abcd_topo.absolute) for x in els)


def test_pairwise_admissibility_scan(abcd_topo):
    u22 = Universe.of(("a", "b"), ("e1", "e2"))
    # the full topology over two or more points and parameters has mixed meets
    assert pairwise_admissible_violations(full_topology(u22))
    # one parameter: an empty meet slice makes the whole meet null, so fine
    u21 = Universe.of(("a", "b"), ("e1",))
    assert not pairwise_admissible_violations(full_topology(u21))
    assert not pairwise_admissible_violations(abcd_topo)
