"""Groupoid-graded algebras: components, object units, strong grading, sections.

A graded algebra is a structure-constant algebra whose basis vectors carry
degrees in a finite groupoid. Object units (one per object, replacing a
global identity) are solved for at construction; everything downstream works
with them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .algebra import AlgebraElement, StructureConstantAlgebra, _sparse_row
from .fields import Field, FieldElement
from .groupoid import FiniteGroupoid, restrict_to_objects
from .report import FAIL, NOT_CERTIFIED, PASS, StructureError, ValidationReport


class GradedAlgebra(StructureConstantAlgebra):
    def __init__(
        self,
        field: Field,
        groupoid: FiniteGroupoid,
        deg: tuple[int, ...],
        table,
        labels: tuple[str, ...] | None = None,
    ):
        self.groupoid = groupoid
        self.deg = tuple(deg)
        dim = len(self.deg)
        for d in self.deg:
            if not (0 <= d < groupoid.size):
                raise StructureError(f"degree {d} is not an arrow")
        self.basis_by_degree: dict[int, tuple[int, ...]] = {
            s: tuple(i for i, d in enumerate(self.deg) if d == s) for s in range(groupoid.size)
        }
        unit = self._solve_object_units(field, dim, table)
        super().__init__(field, dim, table, unit, labels)
        self._component_cache: dict[int, tuple[StructureConstantAlgebra, tuple[int, ...]]] = {}

    @classmethod
    def from_entries(
        cls,
        field: Field,
        groupoid: FiniteGroupoid,
        deg,
        entries,
        labels: tuple[str, ...] | None = None,
    ) -> "GradedAlgebra":
        dim = len(deg)
        rows: list[list[list]] = [[[] for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in entries:
            if isinstance(c, int):
                c = field.from_int(c)
            rows[i][j].append((k, c))
        table = tuple(tuple(_sparse_row(field, rows[i][j]) for j in range(dim)) for i in range(dim))
        return cls(field, groupoid, tuple(deg), table, labels)

    # -- construction-time unit solve ----------------------------------------
    def _solve_object_units(self, field: Field, dim: int, table) -> list[FieldElement]:
        def mul_basis(i: int, j: int) -> list[FieldElement]:
            out = linalg.zero_vector(field, dim)
            for k, c in table[i][j]:
                out[k] = c
            return out

        self.object_unit_vectors: dict[int, list[FieldElement] | None] = {}
        total = linalg.zero_vector(field, dim)
        for e in self.groupoid.objects:
            comp = self.basis_by_degree[e]
            if not comp:
                self.object_unit_vectors[e] = linalg.zero_vector(field, dim)
                continue
            columns = []
            target: list[FieldElement] = []
            for ci in comp:
                col: list[FieldElement] = []
                for j in comp:
                    col.extend(mul_basis(ci, j))
                    col.extend(mul_basis(j, ci))
                columns.append(col)
            for j in comp:
                bj = linalg.unit_vector(field, dim, j)
                target.extend(bj)
                target.extend(bj)
            sol = linalg.solve_columns(columns, target, field)
            if sol is None:
                self.object_unit_vectors[e] = None
                continue
            vec = linalg.zero_vector(field, dim)
            for ci, c in zip(comp, sol):
                vec[ci] = c
            self.object_unit_vectors[e] = vec
            total = linalg.vec_add(total, vec)
        return total

    # -- degree bookkeeping ---------------------------------------------------
    def homogeneous_degree(self, x: AlgebraElement) -> int | None:
        """The common degree of x's support, None for 0, error if mixed."""
        degrees = {self.deg[i] for i in x.support()}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise StructureError(f"element is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop()

    def component(self, x: AlgebraElement, s: int) -> AlgebraElement:
        out = linalg.zero_vector(self.field, self.dim)
        for i in self.basis_by_degree[s]:
            out[i] = x.coeffs[i]
        return AlgebraElement(self, out)

    def homogeneous_parts(self, x: AlgebraElement) -> list[tuple[int, AlgebraElement]]:
        degrees = sorted({self.deg[i] for i in x.support()})
        return [(s, self.component(x, s)) for s in degrees]

    def object_unit(self, e: int) -> AlgebraElement:
        vec = self.object_unit_vectors.get(e)
        if vec is None:
            raise StructureError(f"component at object {self.groupoid.label(e)} has no two-sided unit")
        return AlgebraElement(self, list(vec))

    def project_to_R0(self, x: AlgebraElement) -> AlgebraElement:
        out = list(x.coeffs)
        for i in range(self.dim):
            if not self.groupoid.is_object(self.deg[i]):
                out[i] = self.field.zero
        return AlgebraElement(self, out)

    def component_algebra(self, e: int) -> tuple[StructureConstantAlgebra, tuple[int, ...]]:
        """The fiber R_e as its own algebra, plus the ambient basis indices."""
        if e in self._component_cache:
            return self._component_cache[e]
        if not self.groupoid.is_object(e):
            raise StructureError(f"{e} is not an object")
        comp = self.basis_by_degree[e]
        pos = {i: p for p, i in enumerate(comp)}
        entries = []
        for pi, i in enumerate(comp):
            for pj, j in enumerate(comp):
                for k, c in self.table[i][j]:
                    if k not in pos:
                        raise StructureError(
                            f"component at {self.groupoid.label(e)} is not closed; fix the grading first"
                        )
                    entries.append((pi, pj, pos[k], c))
        unit_vec = self.object_unit_vectors.get(e)
        local_unit = [unit_vec[i] for i in comp] if unit_vec is not None else [self.field.zero] * len(comp)
        labels = tuple(self.basis_label(i) for i in comp) if self.labels else None
        sub = StructureConstantAlgebra.from_entries(self.field, len(comp), entries, local_unit, labels)
        self._component_cache[e] = (sub, comp)
        return sub, comp

    def embed_component(self, e: int, local: AlgebraElement) -> AlgebraElement:
        _, comp = self.component_algebra(e)
        out = linalg.zero_vector(self.field, self.dim)
        for p, i in enumerate(comp):
            out[i] = local.coeffs[p]
        return AlgebraElement(self, out)

    def restrict_component(self, e: int, x: AlgebraElement) -> AlgebraElement:
        sub, comp = self.component_algebra(e)
        return sub.element([x.coeffs[i] for i in comp])


# --------------------------------------------------------------------------
# Grading and unit checks.


def check_grading(r: GradedAlgebra) -> ValidationReport:
    """R_s R_t inside R_{st} for composable (s,t) and zero otherwise."""
    rep = ValidationReport()
    g = r.groupoid
    for i in range(r.dim):
        s = r.deg[i]
        for j in range(r.dim):
            t = r.deg[j]
            st = g.compose(s, t)
            for k, c in r.table[i][j]:
                if st is None:
                    rep.add(
                        "grading-zero",
                        (i, j, k),
                        f"b{i}*b{j} nonzero at b{k} although degrees "
                        f"{g.label(s)},{g.label(t)} do not compose",
                    )
                elif r.deg[k] != st:
                    rep.add(
                        "grading-component",
                        (i, j, k),
                        f"b{i}*b{j} has degree-{g.label(r.deg[k])} part; expected {g.label(st)}",
                    )
    return rep


def object_units(r: GradedAlgebra) -> tuple[dict[int, AlgebraElement], ValidationReport]:
    """Per-object two-sided units and the object-unitality law on every basis vector."""
    rep = ValidationReport()
    units: dict[int, AlgebraElement] = {}
    g = r.groupoid
    for e in g.objects:
        vec = r.object_unit_vectors.get(e)
        if not r.basis_by_degree[e]:
            rep.add("zero-fiber", (e,), f"component at object {g.label(e)} is zero")
            units[e] = AlgebraElement(r, linalg.zero_vector(r.field, r.dim))
            continue
        if vec is None:
            rep.add("no-unit", (e,), f"component at object {g.label(e)} has no two-sided unit")
            continue
        units[e] = AlgebraElement(r, list(vec))
    for i in range(r.dim):
        s = r.deg[i]
        b = r.basis_element(i)
        left = units.get(g.dst[s])
        right = units.get(g.src[s])
        if left is not None and left * b != b:
            rep.add("unital-law", (i,), f"1_(dst) * b{i} != b{i}")
        if right is not None and b * right != b:
            rep.add("unital-law", (i,), f"b{i} * 1_(src) != b{i}")
    return units, rep


def partial_identity(r: GradedAlgebra, objects) -> tuple[AlgebraElement, ValidationReport]:
    """sum of object units over E, verified as the identity of R_(G(E))."""
    rep = ValidationReport()
    total = AlgebraElement(r, linalg.zero_vector(r.field, r.dim))
    for e in objects:
        total = total + r.object_unit(e)
    keep = set(objects)
    for i in range(r.dim):
        s = r.deg[i]
        if r.groupoid.src[s] in keep and r.groupoid.dst[s] in keep:
            b = r.basis_element(i)
            if total * b != b or b * total != b:
                rep.add("partial-identity", (i,), f"sum of units over {sorted(keep)} does not fix b{i}")
    if total * total != total:
        rep.add("partial-identity", tuple(sorted(keep)), "sum of object units is not idempotent")
    return total, rep


def support_subgroupoid(r: GradedAlgebra) -> tuple[FiniteGroupoid, list[int], list[int]]:
    """Arrows whose endpoint units are nonzero; returns (G', kept arrows, kept objects)."""
    nonzero = [e for e in r.groupoid.objects if r.basis_by_degree[e]]
    sub, kept = restrict_to_objects(r.groupoid, nonzero)
    return sub, kept, nonzero


def restrict_to_support(r: GradedAlgebra) -> tuple[GradedAlgebra, str | None]:
    """Auto-restriction to the support subgroupoid; warns when fibers were dropped.

    Degrees outside the support must carry a zero component, which holds
    automatically for object-unital gradings and is checked here.
    """
    sub, kept_arrows, nonzero = support_subgroupoid(r)
    if len(nonzero) == len(r.groupoid.objects):
        return r, None
    arrow_index = {old: new for new, old in enumerate(kept_arrows)}
    for i in range(r.dim):
        if r.deg[i] not in arrow_index:
            raise StructureError(
                f"basis vector b{i} has degree outside the support subgroupoid; "
                "the grading is not object unital"
            )
    deg = tuple(arrow_index[d] for d in r.deg)
    restricted = GradedAlgebra(r.field, sub, deg, r.table, r.labels)
    dropped = [e for e in r.groupoid.objects if e not in set(nonzero)]
    warning = "restricted away zero fibers at objects " + ", ".join(r.groupoid.label(e) for e in dropped)
    return restricted, warning


# --------------------------------------------------------------------------
# Strong grading and sections.


@dataclass
class SectionData:
    """Pairs (u_i, v_i) per arrow with sum u_i v_i = 1 at dst; identity arrows get (1_e, 1_e)."""

    algebra: GradedAlgebra
    pairs: dict[int, list[tuple[AlgebraElement, AlgebraElement]]]

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        r = self.algebra
        g = r.groupoid
        for s, lst in self.pairs.items():
            if g.is_object(s) and len(lst) != 1:
                rep.add("section-normalization", (s,), "identity arrows carry exactly one pair")
            target = r.object_unit(g.dst[s])
            acc = AlgebraElement(r, linalg.zero_vector(r.field, r.dim))
            for u, v in lst:
                if r.homogeneous_degree(u) not in (None, s):
                    rep.add("section-degree", (s,), "left section element has wrong degree")
                if r.homogeneous_degree(v) not in (None, g.inv[s]):
                    rep.add("section-degree", (s,), "right section element has wrong degree")
                acc = acc + u * v
            if acc != target:
                rep.add("section-sum", (s,), f"sum u_i v_i != unit at {g.label(g.dst[s])}")
        return rep


def section_pairs_at(r: GradedAlgebra, s: int) -> list[tuple[AlgebraElement, AlgebraElement]] | None:
    """Pairs (u_i, v_i) with sum u_i v_i = 1_(dst s), or None when 1 is not in R_s R_(inv s)."""
    g = r.groupoid
    target = r.object_unit(g.dst[s])
    if g.is_object(s):
        return [(target, target)]
    basis_s = r.basis_by_degree[s]
    basis_inv = r.basis_by_degree[g.inv[s]]
    columns = []
    labels = []
    for i in basis_s:
        bi = r.basis_element(i)
        for j in basis_inv:
            columns.append((bi * r.basis_element(j)).coeffs)
            labels.append((i, j))
    sol = linalg.solve_columns(columns, target.coeffs, r.field) if columns else None
    if sol is None:
        return None
    return [
        (r.basis_element(i).scale(c), r.basis_element(j))
        for (i, j), c in zip(labels, sol)
        if c
    ]


def is_strongly_graded(r: GradedAlgebra) -> tuple[str, SectionData | None, ValidationReport]:
    """Solve 1_(dst s) in R_s R_(inv s) for every arrow; keeps the solving pairs."""
    rep = ValidationReport()
    g = r.groupoid
    pairs: dict[int, list[tuple[AlgebraElement, AlgebraElement]]] = {}
    for s in range(g.size):
        e = g.dst[s]
        if not r.basis_by_degree[e]:
            continue  # zero fiber: nothing to hit; callers restrict first
        chosen = section_pairs_at(r, s)
        if chosen is None:
            rep.add(
                "strongly-graded",
                (s,),
                f"unit at {g.label(e)} is not in R_{g.label(s)} * R_{g.label(g.inv[s])}",
            )
            continue
        pairs[s] = chosen
    if not rep.ok:
        return FAIL, None, rep
    return PASS, SectionData(r, pairs), rep


def object_inverse(r: GradedAlgebra, x: AlgebraElement) -> AlgebraElement | None:
    """The unique s in R_(inv deg) with x s = 1_dst and s x = 1_src, or None."""
    s = r.homogeneous_degree(x)
    if s is None:
        return None
    g = r.groupoid
    inv_basis = r.basis_by_degree[g.inv[s]]
    if not inv_basis:
        return None
    left_unit = r.object_unit(g.dst[s])
    right_unit = r.object_unit(g.src[s])
    columns = []
    for j in inv_basis:
        bj = r.basis_element(j)
        columns.append((x * bj).coeffs + (bj * x).coeffs)
    target = left_unit.coeffs + right_unit.coeffs
    sol = linalg.solve_columns(columns, target, r.field)
    if sol is None:
        return None
    # Object inverses are unique, so a solvable system must have zero kernel.
    rows = [[col[k] for col in columns] for k in range(len(target))]
    null = linalg.kernel(rows, len(columns), r.field)
    assert not null, "object inverse is not unique; grading data is inconsistent"
    out = linalg.zero_vector(r.field, r.dim)
    for j, c in zip(inv_basis, sol):
        out[j] = c
    return AlgebraElement(r, out)


def is_object_crossed_product(
    r: GradedAlgebra, seed: int = 0, tries: int = 64
) -> tuple[str, dict[int, AlgebraElement] | None, str]:
    """Search each R_s for an object-invertible element; bounded, seed-deterministic."""
    g = r.groupoid
    rng = random.Random(seed)
    units: dict[int, AlgebraElement] = {}
    for s in range(g.size):
        if g.is_object(s):
            units[s] = r.object_unit(s)
            continue
        basis_s = r.basis_by_degree[s]
        found = None
        for i in basis_s:
            cand = r.basis_element(i)
            if object_inverse(r, cand) is not None:
                found = cand
                break
        attempts = 0
        while found is None and attempts < tries:
            attempts += 1
            vec = linalg.zero_vector(r.field, r.dim)
            for i in basis_s:
                vec[i] = r.field.from_int(rng.randint(-2, 2))
            cand = AlgebraElement(r, vec)
            if cand and object_inverse(r, cand) is not None:
                found = cand
        if found is None:
            return (
                NOT_CERTIFIED,
                None,
                f"no object-invertible element found in R_{g.label(s)} "
                f"(basis scan plus {tries} random draws)",
            )
        units[s] = found
    return PASS, units, "object-invertible element exhibited in every component"


def verify_R0_projection(r: GradedAlgebra) -> ValidationReport:
    """project_to_R0 splits R0 into R as a bimodule map, on basis probes."""
    rep = ValidationReport()
    g = r.groupoid
    r0_basis = [i for i in range(r.dim) if g.is_object(r.deg[i])]
    for i in r0_basis:
        a = r.basis_element(i)
        if r.project_to_R0(a) != a:
            rep.add("projection-identity", (i,), "projection moves an R0 basis vector")
    for i in r0_basis:
        a = r.basis_element(i)
        for j in range(r.dim):
            x = r.basis_element(j)
            if r.project_to_R0(a * x) != a * r.project_to_R0(x):
                rep.add("projection-left", (i, j), "projection is not left R0-linear")
            if r.project_to_R0(x * a) != r.project_to_R0(x) * a:
                rep.add("projection-right", (i, j), "projection is not right R0-linear")
    return rep
