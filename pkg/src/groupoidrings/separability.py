"""Local traces and separability certificates for strongly graded algebras.

Sections (u_s^(i), v_(inv s)^(i)) express each object unit as a sum of
products across opposite degrees. Conjugation by a section gives maps
gamma_s on central elements, the local trace at an object sums gamma over
its isotropy group, and R/R_0 is separable exactly when every trace hits
the object unit. For crossed-product presentations the certificate is made
explicit both ways: trace solutions expand into Casimir elements of
R (x) R over R_0, and verified Casimir families collapse back into trace
solutions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field

from . import linalg
from .algebra import AlgebraElement, center, invert
from .crossed import CrossedProductPresentation
from .graded import (
    GradedAlgebra,
    SectionData,
    is_strongly_graded,
    restrict_to_support,
    section_pairs_at,
)
from .report import FAIL, PASS, StructureError, ValidationReport


# --------------------------------------------------------------------------
# Sections.


def canonical_sections(pres: CrossedProductPresentation) -> SectionData:
    """The n_s = 1 sections (beta_(s, inv s)^-1 u_s, u_(inv s)) of a crossed product."""
    g = pres.system.groupoid
    pairs: dict[int, list[tuple[AlgebraElement, AlgebraElement]]] = {}
    for s in range(g.size):
        if g.is_object(s):
            u = pres.algebra.object_unit(s)
            pairs[s] = [(u, u)]
            continue
        fiber = pres.system.fibers[g.dst[s]]
        beta = pres.system.cocycle[(s, g.inv[s])]
        beta_inv = invert(fiber, beta)
        assert beta_inv is not None, "validated cocycle values are units"
        pairs[s] = [(pres.embed(s, beta_inv), pres.unit(g.inv[s]))]
    return SectionData(pres.algebra, pairs)


def find_section(
    source: GradedAlgebra | CrossedProductPresentation, sigma: int
) -> list[tuple[AlgebraElement, AlgebraElement]]:
    """Section pairs at one arrow: canonical for presentations, solved otherwise."""
    if isinstance(source, CrossedProductPresentation):
        return canonical_sections(source).pairs[sigma]
    pairs = section_pairs_at(source, sigma)
    if pairs is None:
        g = source.groupoid
        raise StructureError(f"not strongly graded at arrow {g.label(sigma)}")
    return pairs


def sections_for(source: GradedAlgebra | CrossedProductPresentation) -> SectionData:
    if isinstance(source, CrossedProductPresentation):
        return canonical_sections(source)
    verdict, data, rep = is_strongly_graded(source)
    if verdict != PASS:
        witness = rep.violations[0].witness
        label = source.groupoid.label(witness[0])
        raise StructureError(f"not strongly graded at arrow {label}")
    return data


# --------------------------------------------------------------------------
# gamma and the local traces.


def central_in_R0(r: GradedAlgebra, x: AlgebraElement) -> bool:
    """Membership in Z(R_0): supported on identity degrees and commuting with R_0."""
    g = r.groupoid
    for i, c in enumerate(x.coeffs):
        if c and not g.is_object(r.deg[i]):
            return False
    for i in range(r.dim):
        if g.is_object(r.deg[i]):
            b = r.basis_element(i)
            if x * b != b * x:
                return False
    return True


def gamma_raw(r: GradedAlgebra, sections: SectionData, sigma: int, x: AlgebraElement) -> AlgebraElement:
    """Sum of u x v over the section pairs at sigma; no well-definedness claim."""
    if sigma not in sections.pairs:
        raise StructureError(f"no section pairs at arrow {r.groupoid.label(sigma)}")
    out = AlgebraElement(r, linalg.zero_vector(r.field, r.dim))
    for u, v in sections.pairs[sigma]:
        out = out + u * x * v
    return out


def gamma(
    r: GradedAlgebra,
    sections: SectionData,
    sigma: int,
    x: AlgebraElement,
    alternate: SectionData | None = None,
) -> AlgebraElement:
    """gamma_sigma on Z(R_0); lands in Z(R_(dst sigma)) independently of the sections."""
    if not central_in_R0(r, x):
        raise StructureError("gamma input is not central in the degree-zero part")
    out = gamma_raw(r, sections, sigma, x)
    e = r.groupoid.dst[sigma]
    assert r.homogeneous_degree(out) in (None, e), "gamma output escaped its component"
    for i in r.basis_by_degree[e]:
        b = r.basis_element(i)
        assert out * b == b * out, "gamma output is not central in its component"
    if alternate is not None:
        assert gamma_raw(r, alternate, sigma, x) == out, "gamma depends on the section choice"
    return out


def trace(
    r: GradedAlgebra, sections: SectionData, e: int, x: AlgebraElement
) -> AlgebraElement:
    """tr_e(x) = sum of gamma_s(x) over the isotropy group at e, for x in Z(R_0)."""
    if not central_in_R0(r, x):
        raise StructureError("trace input is not central in the degree-zero part")
    out = AlgebraElement(r, linalg.zero_vector(r.field, r.dim))
    for s in r.groupoid.isotropy(e):
        out = out + gamma_raw(r, sections, s, x)
    return out


# --------------------------------------------------------------------------
# The separability criterion.


@dataclass
class ObjectSeparability:
    object: int
    isotropy_size: int
    verdict: str
    trace_solution: AlgebraElement | None
    fiber_trace_witness: AlgebraElement | None = None
    twisted_verdict: str | None = None
    note: str | None = None

    def as_dict(self, r: GradedAlgebra) -> dict:
        out = {
            "object": r.groupoid.label(self.object),
            "isotropy-size": self.isotropy_size,
            "verdict": self.verdict,
        }
        out["trace-solution"] = _element_json(self.trace_solution)
        if self.fiber_trace_witness is not None:
            out["fiber-trace-witness"] = _element_json(self.fiber_trace_witness)
        if self.twisted_verdict is not None:
            out["twisted-path"] = self.twisted_verdict
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass
class SeparabilityReport:
    algebra: GradedAlgebra
    per_object: dict[int, ObjectSeparability]
    verdict: str
    support_note: str | None = None

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "objects": [self.per_object[e].as_dict(self.algebra) for e in sorted(self.per_object)],
        }
        if self.support_note is not None:
            out["support-note"] = self.support_note
        return out


def _element_json(x: AlgebraElement | None):
    if x is None:
        return None
    f = x.algebra.field
    return [[i, f.value_to_json(c)] for i, c in enumerate(x.coeffs) if c]


def separability_criterion(
    source: GradedAlgebra | CrossedProductPresentation,
    sections: SectionData | None = None,
) -> SeparabilityReport:
    """Solve tr_e(z) = 1_(R_e) over Z(R_e) for every object.

    Crossed-product presentations also run the direct fast path (a solution a
    of sum alpha_s(a) = 1 over the whole fiber) and, for trivial actions, the
    isotropy-order unit test; disagreement with the trace solve is an error,
    not a verdict.
    """
    pres = source if isinstance(source, CrossedProductPresentation) else None
    r = pres.algebra if pres is not None else source
    note = None
    if pres is None:
        r, note = restrict_to_support(r)
    if sections is None:
        sections = sections_for(pres if pres is not None else r)
    g = r.groupoid
    system = pres.system if pres is not None else None
    trivial_action = system is not None and all(
        system.action[s] == linalg.identity_matrix(r.field, system.fibers[g.dst[s]].dim)
        and system.fibers[g.src[s]].dim == system.fibers[g.dst[s]].dim
        for s in range(g.size)
    )

    per_object: dict[int, ObjectSeparability] = {}
    for e in g.objects:
        fiber, _ = r.component_algebra(e)
        iso = g.isotropy(e)
        central_basis = center(fiber)
        columns = []
        for z in central_basis:
            z_amb = r.embed_component(e, z)
            tr = trace(r, sections, e, z_amb)
            columns.append(r.restrict_component(e, tr).coeffs)
        sol = linalg.solve_columns(columns, fiber.unit_element().coeffs, r.field)
        solution = None
        if sol is not None:
            acc = AlgebraElement(r, linalg.zero_vector(r.field, r.dim))
            for c, z in zip(sol, central_basis):
                acc = acc + r.embed_component(e, z).scale(c)
            solution = acc
        entry = ObjectSeparability(
            object=e,
            isotropy_size=len(iso),
            verdict=PASS if sol is not None else FAIL,
            trace_solution=solution,
        )
        if sol is None:
            image_rank = linalg.rank(columns, fiber.dim, r.field)
            entry.note = f"trace image has rank {image_rank} in a centre of dimension {len(central_basis)}"
        if system is not None:
            witness = _fiber_trace_witness(system, e, iso)
            if (witness is None) != (sol is None):
                raise RuntimeError(
                    f"direct crossed-product path disagrees with the trace solve at {g.label(e)}"
                )
            entry.fiber_trace_witness = witness
        if trivial_action:
            fiber_e = system.fibers[e]
            n_unit = fiber_e.unit_element().scale(r.field.from_int(len(iso)))
            order_invertible = invert(fiber_e, n_unit) is not None
            if order_invertible != (sol is not None):
                raise RuntimeError(
                    f"isotropy-order path disagrees with the trace solve at {g.label(e)}"
                )
            entry.twisted_verdict = PASS if order_invertible else FAIL
        per_object[e] = entry

    verdict = PASS if all(p.verdict == PASS for p in per_object.values()) else FAIL
    return SeparabilityReport(r, per_object, verdict, note)


def _fiber_trace_witness(system, e: int, iso) -> AlgebraElement | None:
    """Solve sum over the isotropy of alpha_s(a) = 1 for a in the whole fiber."""
    fiber = system.fibers[e]
    f = fiber.field
    total = [[f.zero for _ in range(fiber.dim)] for _ in range(fiber.dim)]
    for s in iso:
        mat = system.action[s]
        for i in range(fiber.dim):
            for j in range(fiber.dim):
                total[i][j] = total[i][j] + mat[i][j]
    sol = linalg.solve(total, fiber.unit_element().coeffs, f)
    return fiber.element(sol) if sol is not None else None


# --------------------------------------------------------------------------
# Tensor elements over R_0 in crossed-product normal form.


class TensorElement:
    """Sum of a_(s,t) u_s (x) u_t over composable pairs, a_(s,t) in the fiber at dst(s).

    Non-composable simple tensors vanish over R_0, so this normal form spans
    the whole of R (x)_{R_0} R for a crossed-product presentation.
    """

    __slots__ = ("presentation", "coeffs")

    def __init__(
        self,
        presentation: CrossedProductPresentation,
        coeffs: dict[tuple[int, int], AlgebraElement] | None = None,
    ):
        self.presentation = presentation
        g = presentation.system.groupoid
        clean: dict[tuple[int, int], AlgebraElement] = {}
        for (s, t), a in (coeffs or {}).items():
            if (s, t) not in g.comp:
                raise StructureError(f"tensor coefficient on non-composable pair {(s, t)}")
            if a.algebra != presentation.system.fibers[g.dst[s]]:
                raise StructureError(f"tensor coefficient at {(s, t)} lives in the wrong fiber")
            if any(a.coeffs):
                clean[(s, t)] = a
        self.coeffs = clean

    def support(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElement)
            and self.presentation is other.presentation
            and self.coeffs == other.coeffs
        )

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.coeffs)
        for key, a in other.coeffs.items():
            out[key] = out[key] + a if key in out else a
        return TensorElement(self.presentation, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale(self.presentation.algebra.field.from_int(-1))

    def scale(self, c) -> "TensorElement":
        return TensorElement(
            self.presentation, {key: a.scale(c) for key, a in self.coeffs.items()}
        )

    def mu(self) -> AlgebraElement:
        """Multiplication map: a u_s (x) u_t -> a beta_(s,t) u_(st)."""
        pres = self.presentation
        sys = pres.system
        g = sys.groupoid
        out = AlgebraElement(pres.algebra, linalg.zero_vector(pres.algebra.field, pres.algebra.dim))
        for (s, t), a in self.coeffs.items():
            out = out + pres.embed(g.comp[(s, t)], a * sys.cocycle[(s, t)])
        return out

    def left_mul(self, y: AlgebraElement) -> "TensorElement":
        """y times self: b u_p acts on a u_s (x) u_t as (b alpha_p(a) beta_(p,s)) u_(ps) (x) u_t."""
        pres = self.presentation
        sys = pres.system
        g = sys.groupoid
        out: dict[tuple[int, int], AlgebraElement] = {}
        for p in range(g.size):
            b = pres.coefficient(y, p)
            if not any(b.coeffs):
                continue
            for (s, t), a in self.coeffs.items():
                if (p, s) not in g.comp:
                    continue
                key = (g.comp[(p, s)], t)
                term = b * sys.apply_action(p, a) * sys.cocycle[(p, s)]
                out[key] = out[key] + term if key in out else term
        return TensorElement(pres, out)

    def right_mul(self, y: AlgebraElement) -> "TensorElement":
        """self times y: right leg absorbs b u_p, the carry moves through u_s by alpha_s."""
        pres = self.presentation
        sys = pres.system
        g = sys.groupoid
        out: dict[tuple[int, int], AlgebraElement] = {}
        for p in range(g.size):
            b = pres.coefficient(y, p)
            if not any(b.coeffs):
                continue
            for (s, t), a in self.coeffs.items():
                if (t, p) not in g.comp:
                    continue
                key = (s, g.comp[(t, p)])
                carry = sys.apply_action(t, b) * sys.cocycle[(t, p)]
                term = a * sys.apply_action(s, carry)
                out[key] = out[key] + term if key in out else term
        return TensorElement(pres, out)

    def __repr__(self) -> str:
        g = self.presentation.system.groupoid
        if not self.coeffs:
            return "TensorElement(0)"
        parts = [
            f"({self.coeffs[(s, t)]})u[{g.label(s)}](x)u[{g.label(t)}]"
            for (s, t) in self.support()
        ]
        return " + ".join(parts)


def w_sigma(pres: CrossedProductPresentation, sigma: int) -> TensorElement:
    """w_s = beta_(s, inv s)^-1 u_s (x) u_(inv s), the canonical section tensor."""
    sys = pres.system
    g = sys.groupoid
    fiber = sys.fibers[g.dst[sigma]]
    beta_inv = invert(fiber, sys.cocycle[(sigma, g.inv[sigma])])
    assert beta_inv is not None, "validated cocycle values are units"
    return TensorElement(pres, {(sigma, g.inv[sigma]): beta_inv})


# --------------------------------------------------------------------------
# Casimir families.


def casimir_construct(
    pres: CrossedProductPresentation, report: SeparabilityReport
) -> dict[int, TensorElement]:
    """x_e = sum over s from the class representative w to e of gamma_s(r_w) w_s."""
    if report.verdict != PASS:
        raise StructureError("separability criterion did not pass; no Casimir family exists")
    r = pres.algebra
    if report.algebra is not r:
        raise StructureError("report was computed for a different algebra")
    g = r.groupoid
    sections = canonical_sections(pres)
    rep_of: dict[int, int] = {}
    for comp in g.connected_components():
        for e in comp:
            rep_of[e] = comp[0]
    family: dict[int, TensorElement] = {}
    for e in g.objects:
        omega = rep_of[e]
        r_omega = report.per_object[omega].trace_solution
        x = TensorElement(pres)
        for s in g.hom_set(omega, e):
            value = gamma(r, sections, s, r_omega)
            x = x + w_sigma(pres, s).left_mul(value)
        family[e] = x
    return family


def casimir_verify(
    pres: CrossedProductPresentation, family: dict[int, TensorElement]
) -> ValidationReport:
    """mu(x_e) = 1_(R_e) for all e, and x_e a = a x_f for homogeneous a from f to e."""
    rep = ValidationReport()
    r = pres.algebra
    g = r.groupoid
    for e in g.objects:
        if e not in family:
            rep.add("casimir-missing", (e,), f"no tensor element at object {g.label(e)}")
            continue
        if family[e].mu() != r.object_unit(e):
            rep.add("casimir-mu", (e,), f"mu(x_{g.label(e)}) != unit at {g.label(e)}")
    for i in range(r.dim):
        s = r.deg[i]
        e, f = g.dst[s], g.src[s]
        if e not in family or f not in family:
            continue
        a = r.basis_element(i)
        if family[e].right_mul(a) != family[f].left_mul(a):
            rep.add(
                "casimir-commute",
                (e, f, i),
                f"x_{g.label(e)} * {r.basis_label(i)} != {r.basis_label(i)} * x_{g.label(f)}",
            )
    return rep


def trace_solution_from_casimir(
    pres: CrossedProductPresentation, family: dict[int, TensorElement]
) -> dict[int, AlgebraElement]:
    """Collapse a verified diagonal Casimir family into trace solutions d_e.

    Per object: c_s = mu of the (s, inv s) component, one representative s per
    source object, d_e their sum; centrality of each c_s and tr_e(d_e) = 1 are
    checked before returning.
    """
    casimir_verify(pres, family).raise_if_failed("family is not a Casimir family")
    r = pres.algebra
    g = r.groupoid
    sections = canonical_sections(pres)
    out: dict[int, AlgebraElement] = {}
    for e in g.objects:
        x = family[e]
        for (s, t) in x.support():
            if t != g.inv[s] or g.dst[s] != e:
                raise StructureError(
                    f"tensor shape not handled: component at {(s, t)} is not of the form "
                    f"(s, inv s) ending at {g.label(e)}"
                )
        c: dict[int, AlgebraElement] = {}
        for (s, t) in x.support():
            c[s] = TensorElement(pres, {(s, t): x.coeffs[(s, t)]}).mu()
            for i in r.basis_by_degree[e]:
                b = r.basis_element(i)
                if c[s] * b != b * c[s]:
                    raise StructureError(
                        f"mu of the component at ({g.label(s)}, {g.label(t)}) is not central"
                    )
        by_source: dict[int, int] = {}
        for s in sorted(c):
            by_source.setdefault(g.src[s], s)
        d = AlgebraElement(r, linalg.zero_vector(r.field, r.dim))
        for f in sorted(by_source):
            d = d + c[by_source[f]]
        if trace(r, sections, e, d) != r.object_unit(e):
            raise StructureError(f"recovered d at {g.label(e)} does not have trace 1")
        out[e] = d
    return out


def exhaustive_casimir_search(
    pres: CrossedProductPresentation, cap: int = 1 << 20
) -> tuple[dict[int, TensorElement] | None, int]:
    """Enumerate every family over the composable-pair tensor spaces at each object.

    Finite fields only. Returns the first verified family and the total size
    of the search space, or None when no family passes.
    """
    r = pres.algebra
    f = r.field
    if f.order() is None:
        raise StructureError("exhaustive search needs a finite base field")
    g = r.groupoid
    scalars = list(f.elements())
    pair_lists: dict[int, list[tuple[int, int]]] = {}
    total = 1
    for e in g.objects:
        pairs = [
            (s, t)
            for (s, t) in sorted(g.comp)
            if g.dst[s] == e and g.src[t] == e
        ]
        pair_lists[e] = pairs
        slots = sum(pres.system.fibers[g.dst[s]].dim for s, _ in pairs)
        total *= len(scalars) ** slots
    if total > cap:
        raise StructureError(f"search space of size {total} exceeds the cap {cap}")

    def candidates(e: int) -> list[TensorElement]:
        pairs = pair_lists[e]
        dims = [pres.system.fibers[g.dst[s]].dim for s, _ in pairs]
        slots = sum(dims)
        found = []
        for combo in itertools.product(scalars, repeat=slots):
            coeffs = {}
            pos = 0
            for (s, t), dim in zip(pairs, dims):
                fiber = pres.system.fibers[g.dst[s]]
                coeffs[(s, t)] = fiber.element(list(combo[pos : pos + dim]))
                pos += dim
            x = TensorElement(pres, coeffs)
            if x.mu() == r.object_unit(e):
                found.append(x)
        return found

    per_object = [candidates(e) for e in g.objects]
    for choice in itertools.product(*per_object):
        family = dict(zip(g.objects, choice))
        if casimir_verify(pres, family).ok:
            return family, total
    return None, total
