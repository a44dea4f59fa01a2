"""Field layer: exact arithmetic, polynomial helpers, irreducibility, homs.

Laws covered:
  1. Field axioms (associativity, commutativity, distributivity, units,
     inverses) over Q, GF(p), and GF(p^n).
  2. Polynomial division: a = q*b + r with deg r < deg b.
  3. poly_gcd divides both inputs.
  4. Irreducibility decisions are certificates, never guesses: "no" carries
     a dividing factor, "yes" is reachable only through an exact route,
     everything else degrades to "asserted" and is refused by default.
  5. Field homs verify by modulus-image residual; broken maps get witnesses.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from groupoidrings import (
    ExtensionField,
    FieldHom,
    PrimeField,
    Rationals,
    StructureError,
    poly,
    poly_irreducible,
    verify_field_hom,
)
from groupoidrings.fields import (
    IRR_ASSERTED,
    IRR_NO,
    IRR_YES,
    poly_deg,
    poly_divmod,
    poly_gcd,
    poly_mod,
    poly_mul,
    poly_sub,
)

Q = Rationals()
F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F4 = ExtensionField(F2, poly(F2, [1, 1, 1]), var="w")
F9 = ExtensionField(F3, poly(F3, [1, 0, 1]), var="i")

rationals = st.builds(
    lambda n, d: Q.element(Fraction(n, d)),
    st.integers(-30, 30),
    st.integers(1, 30),
)
gf5 = st.integers(0, 4).map(F5.from_int)
gf9 = st.builds(lambda a, b: F9.from_coeffs([a, b]), st.integers(0, 2), st.integers(0, 2))


@pytest.mark.parametrize(
    "elements",
    [rationals, gf5, gf9],
    ids=["Q", "GF(5)", "GF(9)"],
)
def test_field_axioms(elements):
    @given(elements, elements, elements)
    @settings(max_examples=60)
    def laws(a, b, c):
        f = a.field
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + f.zero == a
        assert a * f.one == a
        assert a + (-a) == f.zero
        if a:
            assert a * a.inverse() == f.one

    laws()


def test_prime_field_rejects_composites():
    with pytest.raises(StructureError):
        PrimeField(6)
    with pytest.raises(StructureError):
        PrimeField(1)


small_gf5_polys = st.lists(st.integers(0, 4), min_size=1, max_size=6).map(
    lambda cs: poly(F5, cs)
)


@given(small_gf5_polys, small_gf5_polys)
@settings(max_examples=80)
def test_poly_divmod_identity(a, b):
    if poly_deg(b) < 0:
        return
    q, r = poly_divmod(a, b, F5)
    assert poly_sub(a, poly_mul(q, b, F5)) == r
    assert poly_deg(r) < poly_deg(b)


@given(small_gf5_polys, small_gf5_polys)
@settings(max_examples=80)
def test_poly_gcd_divides(a, b):
    if poly_deg(a) < 0 or poly_deg(b) < 0:
        return
    g = poly_gcd(a, b, F5)
    assert poly_deg(poly_mod(a, g, F5)) < 0
    assert poly_deg(poly_mod(b, g, F5)) < 0


# -- irreducibility taxonomy -------------------------------------------------


def test_low_degree_rational_decisions():
    assert poly_irreducible(poly(Q, [1, 1]), Q).status == IRR_YES
    assert poly_irreducible(poly(Q, [1, 0, 1]), Q).status == IRR_YES
    res = poly_irreducible(poly(Q, [-1, 0, 1]), Q)
    assert res.status == IRR_NO
    assert poly_deg(poly_mod(poly(Q, [-1, 0, 1]), res.factor, Q)) < 0


def test_degree_pattern_certificate():
    # x^4 + x^3 + x^2 + x + 1 is irreducible mod 2, which alone rules out
    # every proper factor degree.
    res = poly_irreducible(poly(Q, [1, 1, 1, 1, 1]), Q)
    assert res.status == IRR_YES
    assert "degree patterns" in res.detail


def test_quadratic_factor_search_decides_pattern_blind_quartics():
    # x^4 - 10x^2 + 1 = (x - s2 - s3)(...) is reducible mod every prime, so
    # the degree-pattern route can never certify it; the integer quadratic
    # search does.
    res = poly_irreducible(poly(Q, [1, 0, -10, 0, 1]), Q)
    assert res.status == IRR_YES
    assert "no quadratic factor" in res.detail


def test_quadratic_factor_found_with_divisor_witness():
    # (x^2 + 1)(x^2 + 2) has no rational root; only the factor search sees it.
    f = poly(Q, [2, 0, 3, 0, 1])
    res = poly_irreducible(f, Q)
    assert res.status == IRR_NO
    assert res.factor is not None
    assert poly_deg(poly_mod(f, res.factor, Q)) < 0


def test_exponent_two_galois_octic_stays_asserted():
    # x^8 - x^4 + 1 (24th cyclotomic) has Galois group of exponent 2: every
    # mod-p pattern is all 1s and 2s and degree 8 exceeds the quadratic
    # search's reach, so the honest answer is "asserted".
    f = poly(Q, [1, 0, 0, 0, -1, 0, 0, 0, 1])
    res = poly_irreducible(f, Q)
    assert res.status == IRR_ASSERTED


def test_finite_field_decisions_are_exhaustive():
    assert poly_irreducible(poly(F2, [1, 1, 1]), F2).status == IRR_YES
    res = poly_irreducible(poly(F2, [1, 0, 1]), F2)  # (x + 1)^2
    assert res.status == IRR_NO
    assert res.factor == poly(F2, [1, 1])


def test_extension_refuses_unproved_moduli_by_default():
    f = [1, 0, 0, 0, -1, 0, 0, 0, 1]
    with pytest.raises(StructureError, match="irreducible='asserted'"):
        ExtensionField(Q, poly(Q, f))
    k = ExtensionField(Q, poly(Q, f), irreducible="asserted")
    assert k.irreducible_status == "asserted"


def test_asserted_flag_still_rejects_reducibles():
    with pytest.raises(StructureError, match="in fact reducible"):
        ExtensionField(Q, poly(Q, [-1, 0, 1]), irreducible="asserted")


def test_certified_status_on_tower_moduli():
    n = ExtensionField(Q, poly(Q, [108, 0, 0, 0, 0, 0, 1]), var="t")
    assert n.irreducible_status == "certified"
    m = ExtensionField(Q, poly(Q, [1, 0, -10, 0, 1]), var="t")
    assert m.irreducible_status == "certified"


# -- extension arithmetic and homs -------------------------------------------


@given(gf9, gf9)
@settings(max_examples=60)
def test_gf9_frobenius_is_additive_and_multiplicative(a, b):
    frob = lambda x: x * x * x
    assert frob(a + b) == frob(a) + frob(b)
    assert frob(a * b) == frob(a) * frob(b)


def test_field_hom_verification():
    frob = FieldHom(F4, F4, F4.from_coeffs([1, 1]))  # w -> w^2 = 1 + w
    assert verify_field_hom(frob).ok
    ident = FieldHom(F4, F4, F4.generator())
    assert verify_field_hom(ident).ok
    broken = FieldHom(F4, F4, F4.from_coeffs([1, 0]))  # w -> 1 kills the modulus check
    rep = verify_field_hom(broken)
    assert not rep.ok
    assert rep.checks_failed() == ["modulus-image"]


def test_hom_application_respects_structure():
    frob = FieldHom(F4, F4, F4.from_coeffs([1, 1]))
    for a in [F4.from_coeffs([i, j]) for i in range(2) for j in range(2)]:
        assert frob.apply(a) == a * a


def test_tower_field_inverse():
    n = ExtensionField(Q, poly(Q, [108, 0, 0, 0, 0, 0, 1]), var="t")
    t = n.generator()
    x = t * t - n.from_coeffs([3])
    assert x * x.inverse() == n.one
