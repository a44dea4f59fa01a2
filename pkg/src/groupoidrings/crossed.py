"""Crossed systems over finite groupoids and their object crossed products.

A system consists of one unital algebra per object, one algebra isomorphism
per arrow, and one invertible cocycle value per composable pair. The product
ring has basis {b u_s} with (a u_s)(a' u_t) = a alpha_s(a') beta_(s,t) u_(st)
when (s, t) compose and 0 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .algebra import AlgebraElement, StructureConstantAlgebra, center, invert, validate_algebra
from .fields import Field, FieldElement
from .graded import GradedAlgebra, check_grading, object_inverse, object_units
from .groupoid import FiniteGroupoid
from .report import StructureError, ValidationReport


class CrossedSystem:
    def __init__(
        self,
        groupoid: FiniteGroupoid,
        fibers: dict[int, StructureConstantAlgebra],
        action: dict[int, list[list[FieldElement]]] | None = None,
        cocycle: dict[tuple[int, int], AlgebraElement] | None = None,
    ):
        self.groupoid = groupoid
        self.fibers = dict(fibers)
        g = groupoid
        for e in g.objects:
            if e not in self.fibers:
                raise StructureError(f"missing fiber algebra at object {g.label(e)}")
        field = None
        for e, a in self.fibers.items():
            if not g.is_object(e):
                raise StructureError(f"fiber attached to non-object {e}")
            field = a.field if field is None else field
            if a.field != field:
                raise StructureError("fibers live over different base fields")
        self.field = field

        self.action: dict[int, list[list[FieldElement]]] = {}
        action = action or {}
        for s in range(g.size):
            src_dim = self.fibers[g.src[s]].dim
            dst_dim = self.fibers[g.dst[s]].dim
            if s in action:
                mat = [list(row) for row in action[s]]
                if len(mat) != dst_dim or any(len(row) != src_dim for row in mat):
                    raise StructureError(f"action matrix at arrow {g.label(s)} has wrong shape")
                self.action[s] = mat
            elif g.is_object(s):
                self.action[s] = linalg.identity_matrix(self.field, src_dim)
            else:
                raise StructureError(f"missing action matrix for arrow {g.label(s)}")

        self.cocycle: dict[tuple[int, int], AlgebraElement] = {}
        trivial = cocycle is None
        cocycle = cocycle or {}
        for key in cocycle:
            if key not in g.comp:
                raise StructureError(f"cocycle value on non-composable pair {key}")
        for (s, t) in g.comp:
            fiber = self.fibers[g.dst[s]]
            if (s, t) in cocycle:
                val = cocycle[(s, t)]
                if val.algebra != fiber:
                    raise StructureError(f"cocycle value at {(s, t)} lives in the wrong fiber")
                self.cocycle[(s, t)] = val
            elif trivial or g.is_object(s) or g.is_object(t):
                # None means the trivial cocycle; identity-touching values default to 1
                self.cocycle[(s, t)] = fiber.unit_element()
            else:
                raise StructureError(f"missing cocycle value for composable pair {(s, t)}")

    # -- pointwise evaluation -------------------------------------------------
    def apply_action(self, s: int, a: AlgebraElement) -> AlgebraElement:
        g = self.groupoid
        src_fiber = self.fibers[g.src[s]]
        dst_fiber = self.fibers[g.dst[s]]
        if a.algebra != src_fiber:
            raise StructureError("action applied to element of the wrong fiber")
        return dst_fiber.element(linalg.mat_vec(self.action[s], a.coeffs))

    def fiber_at(self, e: int) -> StructureConstantAlgebra:
        return self.fibers[e]

    def is_trivial_cocycle(self) -> bool:
        return all(
            val == self.fibers[self.groupoid.dst[s]].unit_element()
            for (s, _t), val in self.cocycle.items()
        )


def validate_crossed_system(sys: CrossedSystem) -> ValidationReport:
    """The four crossed-system axioms, by enumeration over arrows, pairs, triples."""
    rep = ValidationReport()
    g = sys.groupoid
    # (i) every alpha is a unital ring isomorphism and alpha_e = id
    for s in range(g.size):
        src = sys.fibers[g.src[s]]
        dst = sys.fibers[g.dst[s]]
        if g.is_object(s):
            ident = linalg.identity_matrix(sys.field, src.dim)
            if sys.action[s] != ident:
                rep.add("action-identity", (s,), f"alpha at identity arrow {g.label(s)} is not id")
                continue
        if sys.apply_action(s, src.unit_element()) != dst.unit_element():
            rep.add("action-unital", (s,), f"alpha_{g.label(s)}(1) != 1")
        if linalg.rank(sys.action[s], src.dim, sys.field) != src.dim or src.dim != dst.dim:
            rep.add("action-invertible", (s,), f"alpha_{g.label(s)} is not bijective")
        for i in range(src.dim):
            ai = sys.apply_action(s, src.basis_element(i))
            for j in range(src.dim):
                lhs = sys.apply_action(s, src.basis_product(i, j))
                if lhs != ai * sys.apply_action(s, src.basis_element(j)):
                    rep.add(
                        "action-multiplicative",
                        (s, i, j),
                        f"alpha_{g.label(s)} fails on b{i}*b{j}",
                    )
    # (ii) cocycle values invertible, identity-touching ones equal to 1
    inverses: dict[tuple[int, int], AlgebraElement] = {}
    for (s, t), val in sys.cocycle.items():
        fiber = sys.fibers[g.dst[s]]
        inv_val = invert(fiber, val)
        if inv_val is None:
            rep.add("cocycle-invertible", (s, t), f"beta at {(g.label(s), g.label(t))} is not a unit")
        else:
            inverses[(s, t)] = inv_val
        if (g.is_object(s) or g.is_object(t)) and val != fiber.unit_element():
            rep.add("cocycle-normalized", (s, t), "identity-touching beta is not 1")
    # (iii) alpha_s alpha_t = beta_(s,t) alpha_(st) beta_(s,t)^{-1}
    for (s, t), st in g.comp.items():
        beta = sys.cocycle[(s, t)]
        src = sys.fibers[g.src[t]]
        for j in range(src.dim):
            a = src.basis_element(j)
            lhs = sys.apply_action(s, sys.apply_action(t, a)) * beta
            rhs = beta * sys.apply_action(st, a)
            if lhs != rhs:
                rep.add(
                    "twisted-compatibility",
                    (s, t, j),
                    f"alpha_{g.label(s)} alpha_{g.label(t)} differs from "
                    f"beta-conjugated alpha_{g.label(st)} on b{j}",
                )
    # (iv) cocycle identity on composable triples
    for (s, t, r) in g.composable_triples():
        st = g.comp[(s, t)]
        tr = g.comp[(t, r)]
        lhs = sys.cocycle[(s, t)] * sys.cocycle[(st, r)]
        rhs = sys.apply_action(s, sys.cocycle[(t, r)]) * sys.cocycle[(s, tr)]
        if lhs != rhs:
            rep.add(
                "cocycle-identity",
                (s, t, r),
                f"beta identity fails on ({g.label(s)}, {g.label(t)}, {g.label(r)})",
            )
    return rep


@dataclass
class CrossedProductPresentation:
    """A graded algebra together with its crossed-product bookkeeping."""

    algebra: GradedAlgebra
    system: CrossedSystem
    index: dict[tuple[int, int], int]  # (arrow, fiber basis index) -> global basis index

    def unit(self, s: int) -> AlgebraElement:
        """The canonical section element 1_(A_dst) u_s."""
        fiber = self.system.fibers[self.system.groupoid.dst[s]]
        return self.embed(s, fiber.unit_element())

    def embed(self, s: int, a: AlgebraElement) -> AlgebraElement:
        """a u_s for a in the fiber at dst(s)."""
        fiber = self.system.fibers[self.system.groupoid.dst[s]]
        if a.algebra != fiber:
            raise StructureError("embed: element of the wrong fiber")
        out = linalg.zero_vector(self.algebra.field, self.algebra.dim)
        for i, c in enumerate(a.coeffs):
            out[self.index[(s, i)]] = c
        return AlgebraElement(self.algebra, out)

    def coefficient(self, x: AlgebraElement, s: int) -> AlgebraElement:
        """The fiber coefficient a with component x_s = a u_s."""
        fiber = self.system.fibers[self.system.groupoid.dst[s]]
        return fiber.element([x.coeffs[self.index[(s, i)]] for i in range(fiber.dim)])

    def units(self) -> dict[int, AlgebraElement]:
        return {s: self.unit(s) for s in range(self.system.groupoid.size)}


def build_crossed_product(sys: CrossedSystem, validated: bool = False) -> CrossedProductPresentation:
    """Construct the object crossed product and verify it top to bottom."""
    if not validated:
        validate_crossed_system(sys).raise_if_failed("crossed system rejected")
    g = sys.groupoid
    index: dict[tuple[int, int], int] = {}
    deg: list[int] = []
    labels: list[str] = []
    for s in range(g.size):
        fiber = sys.fibers[g.dst[s]]
        for i in range(fiber.dim):
            index[(s, i)] = len(deg)
            deg.append(s)
            labels.append(f"{fiber.basis_label(i)}.u[{g.label(s)}]")
    entries = []
    for (s, t), st in g.comp.items():
        fiber_s = sys.fibers[g.dst[s]]
        fiber_t = sys.fibers[g.dst[t]]
        beta = sys.cocycle[(s, t)]
        for j in range(fiber_t.dim):
            moved = sys.apply_action(s, fiber_t.basis_element(j)) * beta
            for i in range(fiber_s.dim):
                coeff = fiber_s.basis_element(i) * moved
                for k, c in enumerate(coeff.coeffs):
                    if c:
                        entries.append((index[(s, i)], index[(t, j)], index[(st, k)], c))
    product = GradedAlgebra.from_entries(sys.field, g, tuple(deg), entries, tuple(labels))
    check_grading(product).raise_if_failed("built product is not graded")
    validate_algebra(product).raise_if_failed("built product is not associative/unital")
    _, unit_report = object_units(product)
    unit_report.raise_if_failed("built product is not object unital")
    return CrossedProductPresentation(product, sys, index)


# --------------------------------------------------------------------------
# Specializations.


def skew_system(
    groupoid: FiniteGroupoid,
    fibers: dict[int, StructureConstantAlgebra],
    action: dict[int, list[list[FieldElement]]],
) -> CrossedSystem:
    """Crossed system with trivial cocycle."""
    return CrossedSystem(groupoid, fibers, action, None)


def twisted_system(
    groupoid: FiniteGroupoid,
    algebra: StructureConstantAlgebra,
    cocycle: dict[tuple[int, int], AlgebraElement],
) -> CrossedSystem:
    """One algebra for every object, trivial action, central invertible cocycle."""
    central = center(algebra)
    span = linalg.Subspace(algebra.field, algebra.dim, [z.coeffs for z in central])
    for key, val in cocycle.items():
        if not span.contains(val.coeffs):
            raise StructureError(f"twisted cocycle value at {key} is not central")
        if invert(algebra, val) is None:
            raise StructureError(f"twisted cocycle value at {key} is not invertible")
    fibers = {e: algebra for e in groupoid.objects}
    return CrossedSystem(groupoid, fibers, _trivial_action(groupoid, algebra), cocycle)


def groupoid_ring(algebra: StructureConstantAlgebra, groupoid: FiniteGroupoid) -> CrossedSystem:
    """B[G]: trivial action and trivial cocycle."""
    fibers = {e: algebra for e in groupoid.objects}
    return CrossedSystem(groupoid, fibers, _trivial_action(groupoid, algebra), None)


def _trivial_action(groupoid: FiniteGroupoid, algebra: StructureConstantAlgebra):
    ident = linalg.identity_matrix(algebra.field, algebra.dim)
    return {s: ident for s in range(groupoid.size)}


# --------------------------------------------------------------------------
# Extraction: from a graded algebra with chosen homogeneous units back to a system.


@dataclass
class ExtractionResult:
    system: CrossedSystem
    presentation: CrossedProductPresentation
    iso_columns: list[list[FieldElement]]  # image of each source basis vector
    verification: ValidationReport

    def apply_iso(self, x: AlgebraElement) -> AlgebraElement:
        target = self.presentation.algebra
        out = linalg.zero_vector(target.field, target.dim)
        for i, c in enumerate(x.coeffs):
            if c:
                col = self.iso_columns[i]
                for k, v in enumerate(col):
                    if v:
                        out[k] = out[k] + c * v
        return AlgebraElement(target, out)


def extract_crossed_system(r: GradedAlgebra, units: dict[int, AlgebraElement]) -> ExtractionResult:
    """Recover (fibers, action, cocycle) from object-invertible units u_s.

    Identity arrows always use u_e = 1_(R_e); a different choice is rejected.
    The recovered system is validated, its product is built, and the map
    gamma(x) = (x v) u is verified to be a degree-preserving isomorphism.
    """
    g = r.groupoid
    chosen: dict[int, AlgebraElement] = {}
    for s in range(g.size):
        if g.is_object(s):
            given = units.get(s)
            if given is not None and given != r.object_unit(s):
                raise StructureError("units at identity arrows must be the object units")
            chosen[s] = r.object_unit(s)
        else:
            if s not in units:
                raise StructureError(f"missing unit for arrow {g.label(s)}")
            if r.homogeneous_degree(units[s]) != s:
                raise StructureError(f"unit for arrow {g.label(s)} has the wrong degree")
            chosen[s] = units[s]
    inverses: dict[int, AlgebraElement] = {}
    for s, u in chosen.items():
        v = object_inverse(r, u)
        if v is None:
            raise StructureError(f"unit at arrow {g.label(s)} is not object invertible")
        inverses[s] = v
    # freeness of each component over its unit: a |-> a u_s has zero kernel
    for s, u in chosen.items():
        _, comp = r.component_algebra(g.dst[s])
        cols = [(r.basis_element(i) * u).coeffs for i in comp]
        rows = [[col[k] for col in cols] for k in range(r.dim)]
        assert not linalg.kernel(rows, len(cols), r.field), "component is not free over its unit"

    fibers = {e: r.component_algebra(e)[0] for e in g.objects}
    action: dict[int, list[list[FieldElement]]] = {}
    for s in range(g.size):
        src_fiber, src_idx = r.component_algebra(g.src[s])
        dst_fiber, _ = r.component_algebra(g.dst[s])
        cols = []
        for i in src_idx:
            moved = chosen[s] * r.basis_element(i) * inverses[s]
            cols.append(r.restrict_component(g.dst[s], moved).coeffs)
        action[s] = [[cols[j][i] for j in range(len(cols))] for i in range(dst_fiber.dim)]
    cocycle: dict[tuple[int, int], AlgebraElement] = {}
    for (s, t), st in g.comp.items():
        val = chosen[s] * chosen[t] * inverses[st]
        cocycle[(s, t)] = r.restrict_component(g.dst[s], val)

    system = CrossedSystem(g, fibers, action, cocycle)
    validate_crossed_system(system).raise_if_failed("extracted system fails the axioms")
    presentation = build_crossed_product(system, validated=True)

    verification = ValidationReport()
    iso_columns: list[list[FieldElement]] = []
    for i in range(r.dim):
        s = r.deg[i]
        coeff = r.restrict_component(g.dst[s], r.basis_element(i) * inverses[s])
        iso_columns.append(presentation.embed(s, coeff).coeffs)
    result = ExtractionResult(system, presentation, iso_columns, verification)
    if linalg.rank(iso_columns, presentation.algebra.dim, r.field) != r.dim:
        verification.add("iso-bijective", (), "gamma is not bijective")
    images = [result.apply_iso(r.basis_element(i)) for i in range(r.dim)]
    for i in range(r.dim):
        for j in range(r.dim):
            if result.apply_iso(r.basis_product(i, j)) != images[i] * images[j]:
                verification.add("iso-multiplicative", (i, j), f"gamma(b{i} b{j}) != gamma(b{i}) gamma(b{j})")
    if result.apply_iso(r.unit_element()) != presentation.algebra.unit_element():
        verification.add("iso-unital", (), "gamma(1) != 1")
    return result


def coboundary_twist(sys: CrossedSystem, c: dict[int, AlgebraElement]) -> tuple[CrossedSystem, ExtractionResult]:
    """Replace units u_s by c_s u_s (c_e = 1, c_s a unit) and re-extract the system."""
    g = sys.groupoid
    pres = build_crossed_product(sys)
    new_units: dict[int, AlgebraElement] = {}
    for s in range(g.size):
        fiber = sys.fibers[g.dst[s]]
        if g.is_object(s):
            if s in c and c[s] != fiber.unit_element():
                raise StructureError("coboundary values at identity arrows must be 1")
            continue
        if s not in c:
            raise StructureError(f"missing coboundary value at arrow {g.label(s)}")
        if invert(fiber, c[s]) is None:
            raise StructureError(f"coboundary value at arrow {g.label(s)} is not a unit")
        new_units[s] = pres.embed(s, c[s])
    result = extract_crossed_system(pres.algebra, new_units)
    result.verification.raise_if_failed("coboundary twist broke the isomorphism")
    return result.system, result
