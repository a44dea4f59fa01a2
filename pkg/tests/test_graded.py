"""Graded algebras: grading checks, object units, strong grading, object
invertibility, crossed-product certification, support restriction.

Laws covered:
  1. A groupoid ring is graded, object unital, strongly graded, and an
     object crossed product; its R0 projection is the bimodule projection.
  2. Object inverses are unique two-sided inverses against object units.
  3. Q[x]/(x^2) graded by C2 with deg x = g is the canonical non-strong
     example: it fails exactly strongly-graded at the non-identity degree
     and cannot be certified as a crossed product.
  4. Zero fibers are detected and restriction lands on the support
     subgroupoid.
  5. Partial identities are the unit sums over object subsets.
"""

from fractions import Fraction

import pytest

from groupoidrings import (
    GradedAlgebra,
    Rationals,
    StructureError,
    build_crossed_product,
    check_grading,
    disjoint_union,
    field_as_algebra,
    group_as_groupoid,
    groupoid_ring,
    is_object_crossed_product,
    is_strongly_graded,
    object_inverse,
    object_units,
    pair_groupoid,
    partial_identity,
    restrict_to_support,
    support_subgroupoid,
    validate_algebra,
    verify_R0_projection,
)

Q = Rationals()
QA = field_as_algebra(Q)
C2 = group_as_groupoid([[0, 1], [1, 0]], labels=("e", "g"))


def qc2():
    return build_crossed_product(groupoid_ring(QA, C2))


def non_strong():
    return GradedAlgebra.from_entries(
        Q, C2, (0, 1),
        [(0, 0, 0, Q.one), (0, 1, 1, Q.one), (1, 0, 1, Q.one)],
        labels=("1", "x"),
    )


def test_group_ring_is_strongly_graded_crossed_product():
    pres = qc2()
    r = pres.algebra
    assert r.dim == 2
    assert check_grading(r).ok
    units, urep = object_units(r)
    assert urep.ok and list(units) == [0]
    assert units[0] == r.unit_element()
    verdict, sections, srep = is_strongly_graded(r)
    assert verdict == "pass", srep.as_dict()
    assert sections is not None and sections.validate().ok
    ocp, _, detail = is_object_crossed_product(r)
    assert ocp == "pass", detail
    assert verify_R0_projection(r).ok


def test_object_inverse_unique_and_scaling():
    pres = qc2()
    r = pres.algebra
    ug = pres.unit(1)
    assert object_inverse(r, ug) == ug  # u_g^2 = 1 in Q[C2]
    two_ug = ug + ug
    inv2 = object_inverse(r, two_ug)
    assert inv2 is not None and inv2 + inv2 == ug


def test_non_strong_fails_exactly_at_nonidentity_degree():
    ns = non_strong()
    assert check_grading(ns).ok
    assert validate_algebra(ns).ok
    _, urep = object_units(ns)
    assert urep.ok
    verdict, sections, rep = is_strongly_graded(ns)
    assert verdict == "fail"
    assert sections is None
    assert rep.checks_failed() == ["strongly-graded"]
    assert any(v.witness == (1,) for v in rep.violations)


def test_non_strong_is_not_a_crossed_product():
    ns = non_strong()
    assert object_inverse(ns, ns.basis_element(1)) is None  # x is nilpotent
    ocp, units, _ = is_object_crossed_product(ns)
    assert ocp == "not-certified"
    assert units is None


def test_pair_groupoid_ring_is_strongly_graded():
    pres = build_crossed_product(groupoid_ring(QA, pair_groupoid(2)))
    r = pres.algebra
    assert r.dim == 4
    verdict, sections, _ = is_strongly_graded(r)
    assert verdict == "pass"
    assert sections.validate().ok


def test_zero_fiber_restriction():
    c1 = group_as_groupoid([[0]], labels=("e",))
    dj = disjoint_union([C2, c1])
    dj_alg = GradedAlgebra.from_entries(
        Q, dj, (0, 1),
        [(0, 0, 0, Q.one), (0, 1, 1, Q.one), (1, 0, 1, Q.one), (1, 1, 0, Q.one)],
        labels=("1e", "ug"),
    )
    _, kept, nonzero = support_subgroupoid(dj_alg)
    assert kept == [0, 1] and nonzero == [0]
    restricted, warning = restrict_to_support(dj_alg)
    assert warning is not None and "zero" in warning
    assert restricted.groupoid.size == 2
    assert is_strongly_graded(restricted)[0] == "pass"


def test_partial_identity_over_object_subsets():
    pres = build_crossed_product(groupoid_ring(QA, pair_groupoid(2)))
    r = pres.algebra
    units, _ = object_units(r)
    for subset in ([0], [3], [0, 3]):
        pid, rep = partial_identity(r, subset)
        assert rep.ok
        expected = r.zero_element()
        for e in subset:
            expected = expected + units[e]
        assert pid == expected
    full, _ = partial_identity(r, list(units))
    assert full == r.unit_element()


def test_component_algebra_embedding_round_trip():
    pres = build_crossed_product(groupoid_ring(QA, pair_groupoid(2)))
    r = pres.algebra
    for e in r.groupoid.objects:
        comp, _ = r.component_algebra(e)
        assert comp.dim == 1
        back = r.embed_component(e, comp.unit_element())
        assert back == r.object_unit(e)
        assert r.restrict_component(e, back) == comp.unit_element()


def test_homogeneous_parts_reassemble():
    pres = qc2()
    r = pres.algebra
    x = r.element([Q.element(Fraction(2, 3)), Q.from_int(5)])
    parts = r.homogeneous_parts(x)
    total = r.zero_element()
    for _, part in parts:
        total = total + part
    assert total == x
    assert r.homogeneous_degree(r.basis_element(1)) == 1
    assert r.homogeneous_degree(r.zero_element()) is None
    with pytest.raises(StructureError, match="not homogeneous"):
        r.homogeneous_degree(x)
