"""Finite-dimensional associative algebras as sparse structure-constant tables.

table[i][j] holds the product b_i * b_j as sorted (k, coeff) pairs. Keeping
the rows sparse is what makes the 27-dimensional corpus members cheap to
validate triple by triple.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dataclass_field

from .fields import (
    ExtensionField,
    Field,
    FieldElement,
    IRR_YES,
    IRR_NO,
    poly_deg,
    poly_divmod,
    poly_gcd,
    poly_irreducible,
    poly_mul,
    poly_to_str,
    poly_xgcd,
)
from . import linalg
from .linalg import Subspace
from .report import StructureError, ValidationReport


def _sparse_row(field: Field, entries) -> tuple:
    acc: dict[int, FieldElement] = {}
    for k, c in entries:
        acc[k] = acc[k] + c if k in acc else c
    return tuple((k, acc[k]) for k in sorted(acc) if acc[k])


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "StructureConstantAlgebra", coeffs):
        self.algebra = algebra
        self.coeffs = list(coeffs)
        if len(self.coeffs) != algebra.dim:
            raise StructureError("coefficient vector has wrong length")

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise StructureError("elements of different algebras")
            return other
        if isinstance(other, int):
            return self.algebra.unit_element().scale(self.algebra.field.from_int(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.algebra.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, s) -> "AlgebraElement":
        if isinstance(s, int):
            s = self.algebra.field.from_int(s)
        return AlgebraElement(self.algebra, [s * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(not a for a in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.coeffs) if a]

    def __repr__(self):
        parts = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            s = self.algebra.field.value_to_str(a)
            name = self.algebra.basis_label(i)
            parts.append(name if s == "1" else f"({s})*{name}")
        return " + ".join(parts) if parts else "0"


class StructureConstantAlgebra:
    """Associative unital algebra on basis b_0..b_{dim-1} over an exact field."""

    def __init__(self, field: Field, dim: int, table, unit, labels: tuple[str, ...] | None = None):
        self.field = field
        self.dim = dim
        self.table = table  # table[i][j]: sorted tuple of (k, coeff)
        self.labels = tuple(labels) if labels else None
        if len(table) != dim or any(len(row) != dim for row in table):
            raise StructureError("structure constant table has wrong shape")
        for i in range(dim):
            for j in range(dim):
                for k, c in table[i][j]:
                    if not (0 <= k < dim):
                        raise StructureError(f"dangling basis index {k} in product ({i},{j})")
                    if not isinstance(c, FieldElement) or c.field != field:
                        raise StructureError(f"bad coefficient in product ({i},{j})")
        self.unit = list(unit)
        if len(self.unit) != dim:
            raise StructureError("unit vector has wrong length")

    @classmethod
    def from_entries(
        cls,
        field: Field,
        dim: int,
        entries,
        unit,
        labels: tuple[str, ...] | None = None,
    ) -> "StructureConstantAlgebra":
        """entries: iterable of (i, j, k, coeff); coeff int or FieldElement."""
        rows: list[list[list]] = [[[] for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in entries:
            if isinstance(c, int):
                c = field.from_int(c)
            rows[i][j].append((k, c))
        table = tuple(tuple(_sparse_row(field, rows[i][j]) for j in range(dim)) for i in range(dim))
        unit_vec = [c if isinstance(c, FieldElement) else field.from_int(c) for c in unit]
        return cls(field, dim, table, unit_vec, labels)

    # -- element helpers ----------------------------------------------------
    def element(self, coeffs) -> AlgebraElement:
        vec = [c if isinstance(c, FieldElement) else self.field.from_int(c) for c in coeffs]
        return AlgebraElement(self, vec)

    def zero_element(self) -> AlgebraElement:
        return AlgebraElement(self, linalg.zero_vector(self.field, self.dim))

    def unit_element(self) -> AlgebraElement:
        return AlgebraElement(self, list(self.unit))

    def basis_element(self, i: int) -> AlgebraElement:
        return AlgebraElement(self, linalg.unit_vector(self.field, self.dim, i))

    def basis_label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        out = linalg.zero_vector(self.field, self.dim)
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            row = self.table[i]
            for j, cb in enumerate(b.coeffs):
                if not cb:
                    continue
                cab = ca * cb
                for k, c in row[j]:
                    out[k] = out[k] + cab * c
        return AlgebraElement(self, out)

    def basis_product(self, i: int, j: int) -> AlgebraElement:
        out = linalg.zero_vector(self.field, self.dim)
        for k, c in self.table[i][j]:
            out[k] = c
        return AlgebraElement(self, out)

    def __eq__(self, other):
        if not isinstance(other, StructureConstantAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.dim == other.dim
            and self.table == other.table
            and self.unit == other.unit
        )

    def __repr__(self):
        return f"Algebra(dim={self.dim} over {self.field})"


# --------------------------------------------------------------------------
# Constructions.


def matrix_algebra(field: Field, n: int) -> StructureConstantAlgebra:
    """Full matrix algebra on units E_ij, row-major basis order."""

    def idx(i: int, j: int) -> int:
        return i * n + j

    entries = []
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j == k:
            entries.append((idx(i, j), idx(k, l), idx(i, l), 1))
    unit = [0] * (n * n)
    for i in range(n):
        unit[idx(i, i)] = 1
    labels = tuple(f"E{i}{j}" for i in range(n) for j in range(n))
    return StructureConstantAlgebra.from_entries(field, n * n, entries, unit, labels)


def group_algebra(field: Field, table: list[list[int]], labels=None) -> StructureConstantAlgebra:
    """Group algebra over a Cayley table with identity at index 0."""
    n = len(table)
    entries = [(a, b, table[a][b], 1) for a in range(n) for b in range(n)]
    unit = [1 if a == 0 else 0 for a in range(n)]
    return StructureConstantAlgebra.from_entries(field, n, entries, unit, labels)


def field_as_algebra(f: Field) -> StructureConstantAlgebra:
    """A field as an algebra over itself (dim 1) or over its base (extensions)."""
    if isinstance(f, ExtensionField):
        base = f.base
        d = f.degree
        entries = []
        for i in range(d):
            for j in range(d):
                prod = f.generator() ** (i + j)
                for k, c in enumerate(f.coeffs(prod)):
                    if c:
                        entries.append((i, j, k, c))
        unit = [1] + [0] * (d - 1)
        labels = tuple("1" if i == 0 else (f.var if i == 1 else f"{f.var}^{i}") for i in range(d))
        return StructureConstantAlgebra.from_entries(base, d, entries, unit, labels)
    return StructureConstantAlgebra.from_entries(f, 1, [(0, 0, 0, 1)], [1], ("1",))


def from_multiplication(
    field: Field, dim: int, mul, unit, labels: tuple[str, ...] | None = None
) -> StructureConstantAlgebra:
    """Build a table from a callback mul(i, j) -> dense coefficient list."""
    entries = []
    for i in range(dim):
        for j in range(dim):
            for k, c in enumerate(mul(i, j)):
                if c:
                    entries.append((i, j, k, c))
    return StructureConstantAlgebra.from_entries(field, dim, entries, unit, labels)


# --------------------------------------------------------------------------
# Predicates and certificates.


def validate_algebra(a: StructureConstantAlgebra) -> ValidationReport:
    """Unit laws plus associativity on every basis triple."""
    rep = ValidationReport()
    one = a.unit_element()
    for i in range(a.dim):
        b = a.basis_element(i)
        if one * b != b:
            rep.add("unit", (i,), f"1 * {a.basis_label(i)} != {a.basis_label(i)}")
        if b * one != b:
            rep.add("unit", (i,), f"{a.basis_label(i)} * 1 != {a.basis_label(i)}")
    for i in range(a.dim):
        bi = a.basis_element(i)
        for j in range(a.dim):
            bij = a.basis_product(i, j)
            for k in range(a.dim):
                bk = a.basis_element(k)
                left = bij * bk
                right = bi * a.basis_product(j, k)
                if left != right:
                    rep.add(
                        "associativity",
                        (i, j, k),
                        f"(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})",
                    )
    return rep


def center(a: StructureConstantAlgebra) -> list[AlgebraElement]:
    """Basis of the center, from the commutation system [x, b_i] = 0."""
    rows = []
    for i in range(a.dim):
        comm = [[a.field.zero for _ in range(a.dim)] for _ in range(a.dim)]
        for j in range(a.dim):
            for k, c in a.table[j][i]:
                comm[k][j] = comm[k][j] + c
            for k, c in a.table[i][j]:
                comm[k][j] = comm[k][j] - c
        rows.extend(comm)
    return [a.element(v) for v in linalg.kernel(rows, a.dim, a.field)]


def invert(a: StructureConstantAlgebra, x: AlgebraElement) -> AlgebraElement | None:
    """Two-sided inverse of x, or None."""
    cols = [(x * a.basis_element(j)).coeffs for j in range(a.dim)]
    sol = linalg.solve_columns(cols, a.unit, a.field)
    if sol is None:
        return None
    y = a.element(sol)
    if y * x != a.unit_element():
        return None  # one-sided only; cannot happen in a unital finite-dim algebra
    return y


def two_sided_ideal(a: StructureConstantAlgebra, generators: list[AlgebraElement]) -> Subspace:
    """Smallest two-sided ideal containing the generators, as a subspace."""
    span = Subspace(a.field, a.dim)
    for g in generators:
        span.add(list(g.coeffs))
    frontier = span.basis()
    while frontier:
        new_frontier = []
        for v in frontier:
            x = a.element(v)
            for i in range(a.dim):
                b = a.basis_element(i)
                for w in ((b * x).coeffs, (x * b).coeffs):
                    if span.add(list(w)):
                        new_frontier.append(w)
        frontier = new_frontier
    return span


def eval_poly_at(coeffs: tuple, x: AlgebraElement) -> AlgebraElement:
    """Evaluate a polynomial with field coefficients at an algebra element."""
    acc = x.algebra.zero_element()
    for c in reversed(coeffs):
        acc = acc * x + x.algebra.unit_element().scale(c)
    return acc


def minimal_polynomial(x: AlgebraElement) -> tuple:
    """Monic minimal polynomial of x, via the first linear dependence of its powers."""
    a = x.algebra
    powers = [a.unit_element()]
    while True:
        nxt = powers[-1] * x
        rel = linalg.solve_columns([p.coeffs for p in powers], nxt.coeffs, a.field)
        if rel is not None:
            # x^k = sum rel_i x^i  =>  minpoly = x^k - sum rel_i x^i
            return tuple([-c for c in rel] + [a.field.one])
        powers.append(nxt)


@dataclass
class SimplicityCertificate:
    verdict: str  # "simple" | "not-simple" | "undecided"
    method: str
    detail: str
    witness: dict = dataclass_field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict, "method": self.method, "detail": self.detail}
        if self.witness:
            out["witness"] = {
                k: (repr(v) if isinstance(v, (AlgebraElement, list)) else v) for k, v in self.witness.items()
            }
        return out


def _trace_vector(a: StructureConstantAlgebra) -> list[FieldElement]:
    traces = []
    for k in range(a.dim):
        t = a.field.zero
        row = a.table[k]
        for m in range(a.dim):
            for idx, c in row[m]:
                if idx == m:
                    t = t + c
        traces.append(t)
    return traces


def _radical_basis(a: StructureConstantAlgebra) -> list[AlgebraElement]:
    # Gram matrix of the trace form B(x, y) = trace(L_{xy}); its kernel is the
    # radical in characteristic 0 or p > dim (Dickson's bound).
    traces = _trace_vector(a)
    gram = []
    for j in range(a.dim):
        row = []
        for i in range(a.dim):
            val = a.field.zero
            for k, c in a.table[i][j]:
                val = val + c * traces[k]
            row.append(val)
        gram.append(row)
    return [a.element(v) for v in linalg.kernel(gram, a.dim, a.field)]


def _simple_by_trace_form(a: StructureConstantAlgebra, seed: int) -> SimplicityCertificate:
    char = a.field.characteristic()
    if char != 0 and char <= a.dim:
        return SimplicityCertificate(
            "undecided",
            "trace_form",
            f"trace-form radical criterion needs characteristic 0 or > dim; have {char} <= {a.dim}",
        )
    radical = _radical_basis(a)
    if radical:
        witness_ideal = two_sided_ideal(a, [radical[0]])
        assert witness_ideal.dim < a.dim, "radical generated the whole algebra"
        return SimplicityCertificate(
            "not-simple",
            "trace_form",
            f"nonzero radical of dimension {len(radical)}",
            witness={
                "radical_element": radical[0],
                "ideal_dim": witness_ideal.dim,
                "ideal_basis": [a.element(v) for v in witness_ideal.basis()],
            },
        )
    z_basis = center(a)
    if len(z_basis) == 1:
        return SimplicityCertificate(
            "simple", "trace_form", "semisimple with one-dimensional center", witness={"center_dim": 1}
        )
    # Semisimple commutative center: find a primitive element, then decide
    # whether the center is a field via its minimal polynomial.
    rng = random.Random(seed)
    candidates = list(z_basis)
    for _ in range(64):
        coeff = [a.field.from_int(rng.randint(-3, 3)) for _ in z_basis]
        if a.field.order() is not None:
            coeff = [a.field.sample(rng) for _ in z_basis]
        combo = a.zero_element()
        for c, z in zip(coeff, z_basis):
            combo = combo + z.scale(c)
        candidates.append(combo)
    for z in candidates:
        m = minimal_polynomial(z)
        if poly_deg(m) != len(z_basis):
            continue
        res = poly_irreducible(m, a.field)
        if res.status == IRR_YES:
            return SimplicityCertificate(
                "simple",
                "trace_form",
                f"semisimple; center is a field of dimension {len(z_basis)} "
                f"(primitive minimal polynomial {poly_to_str(m)} irreducible: {res.detail})",
                witness={"center_dim": len(z_basis), "center_minpoly": poly_to_str(m)},
            )
        if res.status == IRR_NO:
            g = res.factor
            h = poly_divmod(m, g, a.field)[0]
            gcd_gh = poly_gcd(g, h, a.field)
            assert poly_deg(gcd_gh) == 0, "center minimal polynomial is not squarefree"
            _, s, _ = poly_xgcd(g, h, a.field)
            idem = eval_poly_at(poly_mul(s, g, a.field), z)
            assert idem * idem == idem and idem and idem != a.unit_element()
            witness_ideal = two_sided_ideal(a, [idem])
            assert 0 < witness_ideal.dim < a.dim
            return SimplicityCertificate(
                "not-simple",
                "trace_form",
                f"center splits: minimal polynomial {poly_to_str(m)} has factor {poly_to_str(g)}",
                witness={
                    "central_idempotent": idem,
                    "ideal_dim": witness_ideal.dim,
                    "ideal_basis": [a.element(v) for v in witness_ideal.basis()],
                },
            )
        return SimplicityCertificate(
            "undecided",
            "trace_form",
            f"cannot certify irreducibility of the center minimal polynomial: {res.detail}",
        )
    return SimplicityCertificate(
        "undecided", "trace_form", "no primitive central element found in 64 attempts"
    )


def _simple_by_exhaustion(a: StructureConstantAlgebra, limit: int = 20000) -> SimplicityCertificate:
    q = a.field.order()
    if q is None:
        return SimplicityCertificate("undecided", "exhaustive", "field is infinite")
    count = (q**a.dim - 1) // (q - 1)
    if count > limit:
        return SimplicityCertificate(
            "undecided", "exhaustive", f"{count} one-dimensional subspaces exceed the limit {limit}"
        )
    elems = list(a.field.elements())
    checked = 0
    for lead in range(a.dim):
        for tail in itertools.product(elems, repeat=a.dim - lead - 1):
            v = [a.field.zero] * lead + [a.field.one] + list(tail)
            checked += 1
            ideal = two_sided_ideal(a, [a.element(v)])
            if not ideal.is_everything():
                return SimplicityCertificate(
                    "not-simple",
                    "exhaustive",
                    f"proper ideal found after {checked} generators",
                    witness={
                        "generator": a.element(v),
                        "ideal_dim": ideal.dim,
                        "ideal_basis": [a.element(w) for w in ideal.basis()],
                    },
                )
    return SimplicityCertificate(
        "simple", "exhaustive", f"all {checked} one-dimensional subspaces generate the whole algebra"
    )


def is_simple(a: StructureConstantAlgebra, method: str = "auto", seed: int = 0) -> SimplicityCertificate:
    """Certified simplicity check; 'undecided' when no exact route applies."""
    if a.dim == 0:
        return SimplicityCertificate("not-simple", method, "zero algebra")
    if method == "trace_form":
        return _simple_by_trace_form(a, seed)
    if method == "exhaustive":
        return _simple_by_exhaustion(a)
    if method != "auto":
        raise StructureError(f"unknown method {method!r}")
    char = a.field.characteristic()
    if char == 0 or char > a.dim:
        return _simple_by_trace_form(a, seed)
    cert = _simple_by_exhaustion(a)
    return cert
