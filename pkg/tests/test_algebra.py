"""Structure-constant algebras: constructors, validation, center, ideals,
minimal polynomials, simplicity certificates.

Laws covered:
  1. matrix_algebra satisfies E_ij E_kl = [j == k] E_il; group_algebra
     multiplies along the table; field_as_algebra flattens to the base.
  2. validate_algebra witnesses broken associativity and broken units.
  3. center() spans exactly the commuting elements.
  4. invert() is two-sided where it succeeds and None on zero divisors.
  5. minimal_polynomial(x) is monic, annihilates x, and no proper prefix does.
  6. two_sided_ideal closes under both multiplications.
  7. is_simple verdicts are certificates: not-simple always carries a proper
     ideal witness, and the decisive methods never contradict each other.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from groupoidrings import (
    ExtensionField,
    PrimeField,
    Rationals,
    StructureConstantAlgebra,
    StructureError,
    center,
    eval_poly_at,
    field_as_algebra,
    group_algebra,
    invert,
    is_simple,
    matrix_algebra,
    minimal_polynomial,
    poly,
    two_sided_ideal,
    validate_algebra,
)

Q = Rationals()
F2 = PrimeField(2)
F3 = PrimeField(3)

M2 = matrix_algebra(Q, 2)
M3 = matrix_algebra(Q, 3)
QC2 = group_algebra(Q, [[0, 1], [1, 0]], labels=("e", "g"))


def test_matrix_units_multiply_by_index_matching():
    n = 3
    m = matrix_algebra(Q, n)
    unit = {(i, j): m.basis_element(i * n + j) for i in range(n) for j in range(n)}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    prod = unit[(i, j)] * unit[(k, l)]
                    assert prod == (unit[(i, l)] if j == k else m.zero_element())


def test_group_algebra_follows_table():
    g = QC2.basis_element(1)
    assert g * g == QC2.unit_element()
    assert validate_algebra(QC2).ok


def test_field_as_algebra_flattens_extensions():
    F4 = ExtensionField(F2, poly(F2, [1, 1, 1]), var="w")
    a4 = field_as_algebra(F4)
    assert a4.field == F2 and a4.dim == 2
    w = a4.basis_element(1)
    assert w * w == a4.element([F2.one, F2.one])  # w^2 = 1 + w
    assert validate_algebra(a4).ok


def test_validation_witnesses_broken_axioms():
    # x*x = y, everything else zero, unit claimed at x: not unital
    bad = StructureConstantAlgebra.from_entries(
        Q, 2, [(0, 0, 1, 1)], (1, 0), labels=("x", "y")
    )
    rep = validate_algebra(bad)
    assert "unit" in rep.checks_failed()
    assert any(v.check == "unit" and v.witness == (0,) for v in rep.violations)


def test_center_of_matrix_algebra_is_scalars():
    z = center(M3)
    assert len(z) == 1
    assert z[0] == M3.unit_element()


def test_center_of_commutative_algebra_is_everything():
    assert len(center(QC2)) == QC2.dim


def test_invert_matrix_and_zero_divisor():
    swap = M2.element([Q.zero, Q.one, Q.one, Q.zero])
    inv = invert(M2, swap)
    assert inv is not None
    assert swap * inv == M2.unit_element() and inv * swap == M2.unit_element()
    e00 = M2.basis_element(0)
    assert invert(M2, e00) is None


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=40)
def test_invert_is_two_sided_when_defined(entries):
    x = M2.element([Q.from_int(c) for c in entries])
    inv = invert(M2, x)
    if inv is not None:
        assert x * inv == M2.unit_element()
        assert inv * x == M2.unit_element()
    else:
        # singular 2x2 matrix: determinant vanishes
        a, b, c, d = entries
        assert a * d - b * c == 0


def test_minimal_polynomial_annihilates():
    e00 = M2.basis_element(0)
    mp = minimal_polynomial(e00)
    assert mp == poly(Q, [0, -1, 1])  # x^2 - x
    assert not eval_poly_at(mp, e00)
    g = QC2.basis_element(1)
    assert minimal_polynomial(g) == poly(Q, [-1, 0, 1])


def test_minimal_polynomial_of_unit():
    assert minimal_polynomial(M2.unit_element()) == poly(Q, [-1, 1])


def test_two_sided_ideal_closure():
    # (1 - g)/2 is idempotent in Q[C2]; its ideal is 1-dimensional
    half = Q.element(Fraction(1, 2))
    p = QC2.element([half, -half])
    ideal = two_sided_ideal(QC2, [p])
    assert ideal.dim == 1
    for b in range(QC2.dim):
        for v in ideal.basis():
            x = QC2.element(v)
            assert ideal.contains((QC2.basis_element(b) * x).coeffs)
            assert ideal.contains((x * QC2.basis_element(b)).coeffs)
    # in a matrix algebra every nonzero element generates everything
    assert two_sided_ideal(M2, [M2.basis_element(1)]).is_everything()


def test_simplicity_certificates():
    assert is_simple(M2).verdict == "simple"
    assert is_simple(M3).verdict == "simple"
    cert = is_simple(QC2)
    assert cert.verdict == "not-simple"
    idem = cert.witness["central_idempotent"]
    assert idem * idem == idem
    ideal = two_sided_ideal(QC2, [idem])
    assert 0 < ideal.dim < QC2.dim


def test_simplicity_witness_is_a_proper_ideal():
    f2c2 = group_algebra(F2, [[0, 1], [1, 0]])
    cert = is_simple(f2c2)
    assert cert.verdict == "not-simple"
    gen = cert.witness["generator"]
    ideal = two_sided_ideal(f2c2, [gen])
    assert 0 < ideal.dim < f2c2.dim


def test_methods_agree_where_both_decide():
    m2_f3 = matrix_algebra(F3, 2)
    by_search = is_simple(m2_f3, method="exhaustive")
    assert by_search.verdict == "simple"
    by_trace = is_simple(m2_f3, method="trace_form")
    assert by_trace.verdict == "undecided"  # char 3 <= dim 4: Dickson bound
    f3c2 = group_algebra(F3, [[0, 1], [1, 0]])
    assert is_simple(f3c2, method="trace_form").verdict == "not-simple"
    assert is_simple(f3c2, method="exhaustive").verdict == "not-simple"


def test_unknown_method_rejected():
    with pytest.raises(StructureError):
        is_simple(M2, method="oracle")
