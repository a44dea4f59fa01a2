"""Exact linear algebra over the field layer.

Laws covered:
  1. solve returns a vector x with rows . x = rhs whenever one exists, and
     None exactly when rhs is outside the row space's column image.
  2. kernel vectors annihilate the matrix, and rank + nullity = ncols.
  3. solve_columns inverts a coordinate expansion.
  4. Subspace.add grows the dimension iff the vector was independent, and
     contains() agrees with membership in the span.
"""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from groupoidrings import PrimeField, Rationals
from groupoidrings.linalg import (
    Subspace,
    kernel,
    mat_vec,
    rank,
    solve,
    solve_columns,
    vec_is_zero,
)

Q = Rationals()
F5 = PrimeField(5)

dims = st.tuples(st.integers(1, 5), st.integers(1, 5))


def matrices(field, lo, hi):
    return dims.flatmap(
        lambda mn: st.lists(
            st.lists(st.integers(lo, hi).map(field.from_int), min_size=mn[1], max_size=mn[1]),
            min_size=mn[0],
            max_size=mn[0],
        )
    )


@given(matrices(F5, 0, 4), st.data())
@settings(max_examples=80)
def test_solve_recovers_images(rows, data):
    n = len(rows[0])
    x = data.draw(st.lists(st.integers(0, 4).map(F5.from_int), min_size=n, max_size=n))
    rhs = mat_vec(rows, x)
    sol = solve(rows, rhs, F5)
    assert sol is not None
    assert mat_vec(rows, sol) == rhs


@given(matrices(F5, 0, 4), st.data())
@settings(max_examples=80)
def test_solve_none_only_outside_image(rows, data):
    m, n = len(rows), len(rows[0])
    rhs = data.draw(st.lists(st.integers(0, 4).map(F5.from_int), min_size=m, max_size=m))
    sol = solve(rows, rhs, F5)
    if sol is None:
        # augmenting with rhs must raise the column rank
        cols = [[rows[i][j] for i in range(m)] for j in range(n)]
        before = rank(cols, m, F5)
        after = rank(cols + [rhs], m, F5)
        assert after == before + 1
    else:
        assert mat_vec(rows, sol) == rhs


@given(matrices(F5, 0, 4))
@settings(max_examples=80)
def test_kernel_and_rank_nullity(rows):
    n = len(rows[0])
    null = kernel(rows, n, F5)
    for v in null:
        assert vec_is_zero(mat_vec(rows, v))
    assert rank(rows, n, F5) + len(null) == n


def test_solve_columns_inverts_expansion():
    half = Q.element(Fraction(1, 2))
    cols = [
        [Q.one, Q.zero, Q.one],
        [Q.zero, half, Q.one],
    ]
    target = [c0 + c1 + c1 for c0, c1 in zip(*cols)]
    combo = solve_columns(cols, target, Q)
    assert combo == [Q.one, Q.from_int(2)]
    assert solve_columns(cols, [Q.zero, Q.zero, Q.one], Q) is None


@given(matrices(F5, 0, 4))
@settings(max_examples=60)
def test_subspace_growth_and_membership(rows):
    n = len(rows[0])
    sub = Subspace(F5, n)
    dim = 0
    for v in rows:
        grew = sub.add(v)
        dim += 1 if grew else 0
        assert sub.dim == dim
        assert sub.contains(v)
    assert sub.dim == rank(rows, n, F5)
