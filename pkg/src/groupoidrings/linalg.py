"""Exact linear algebra over the scalar fields: elimination, solving, kernels.

Vectors are lists of FieldElement, matrices are lists of row vectors.
Pivoting is deterministic (first nonzero entry in column order), so every
result is reproducible bit for bit.
"""

from __future__ import annotations

from .fields import Field, FieldElement
from .report import StructureError


def zero_vector(field: Field, n: int) -> list[FieldElement]:
    return [field.zero for _ in range(n)]


def unit_vector(field: Field, n: int, i: int) -> list[FieldElement]:
    v = zero_vector(field, n)
    v[i] = field.one
    return v


def vec_add(a: list, b: list) -> list:
    return [x + y for x, y in zip(a, b)]

def vec_sub(a: list, b: list) -> list:
    return [x - y for x, y in zip(a, b)]


def vec_scale(a: list, s: FieldElement) -> list:
    return [x * s for x in a]


def vec_is_zero(a: list) -> bool:
    return all(not x for x in a)


def identity_matrix(field: Field, n: int) -> list[list[FieldElement]]:
    return [unit_vector(field, n, i) for i in range(n)]


def mat_vec(rows: list[list], v: list) -> list:
    out = []
    for row in rows:
        acc = None
        for a, x in zip(row, v):
            term = a * x
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def mat_mul(a: list[list], b: list[list]) -> list[list]:
    if a and b and len(a[0]) != len(b):
        raise StructureError("matrix shape mismatch")
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(ncols):
            acc = None
            for k, x in enumerate(row):
                term = x * b[k][j]
                acc = term if acc is None else acc + term
            new.append(acc)
        out.append(new)
    return out


def rref(rows: list[list], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (copy) and its pivot columns."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    pivot_row = 0
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, len(work)):
            if work[r][col]:
                sel = r
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = work[pivot_row][col].inverse()
        work[pivot_row] = [x * inv for x in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(work):
            break
    return work[:pivot_row], pivots


def rank(rows: list[list], ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[0])


def solve(rows: list[list], rhs: list, field: Field) -> list | None:
    """One solution of A x = rhs (free variables set to 0), or None."""
    n = len(rows)
    if len(rhs) != n:
        raise StructureError("rhs length mismatch")
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    reduced, pivots = rref(aug, ncols + 1, field)
    for row, col in zip(reduced, pivots):
        if col == ncols:
            return None  # pivot in the augmented column: inconsistent
    x = zero_vector(field, ncols)
    for row, col in zip(reduced, pivots):
        x[col] = row[ncols]
    return x


def solve_columns(columns: list[list], target: list, field: Field) -> list | None:
    """Coefficients c with sum c_i * columns[i] = target, or None."""
    if columns and any(len(c) != len(target) for c in columns):
        raise StructureError("column length mismatch")
    rows = [[col[r] for col in columns] for r in range(len(target))]
    return solve(rows, target, field)


def kernel(rows: list[list], ncols: int, field: Field) -> list[list]:
    """Basis of {v : A v = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = zero_vector(field, ncols)
        v[free] = field.one
        for row, col in zip(reduced, pivots):
            v[col] = -row[free]
        basis.append(v)
    return basis


class Subspace:
    """A subspace kept as an echelonized basis; supports closure loops."""

    def __init__(self, field: Field, ambient_dim: int, vectors: list[list] | None = None):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows: list[list] = []
        self.pivots: list[int] = []
        for v in vectors or []:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: list) -> list:
        v = list(v)
        for row, col in zip(self.rows, self.pivots):
            if v[col]:
                factor = v[col]
                v = [x - factor * y for x, y in zip(v, row)]
        return v

    def contains(self, v: list) -> bool:
        return vec_is_zero(self._reduce(v))

    def add(self, v: list) -> bool:
        """Insert v; True when the subspace grew."""
        if len(v) != self.ambient_dim:
            raise StructureError("vector of wrong length")
        red = self._reduce(v)
        col = next((i for i, x in enumerate(red) if x), None)
        if col is None:
            return False
        red = [x * red[col].inverse() for x in red]
        # keep earlier rows reduced against the new one
        for i, row in enumerate(self.rows):
            if row[col]:
                factor = row[col]
                self.rows[i] = [x - factor * y for x, y in zip(row, red)]
        at = next((i for i, p in enumerate(self.pivots) if p > col), len(self.pivots))
        self.rows.insert(at, red)
        self.pivots.insert(at, col)
        return True

    def basis(self) -> list[list]:
        return [list(r) for r in self.rows]

    def is_everything(self) -> bool:
        return self.dim == self.ambient_dim
