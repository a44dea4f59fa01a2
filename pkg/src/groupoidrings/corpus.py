"""Built-in example rings.

Matrix rings as groupoid rings over pair groupoids, finite-field skew
products generated by Frobenius, the rational quaternions as a twisted group
ring, two number-field towers shipped as bundled data files, and a small
graded algebra that fails strong gradedness. Every generator validates its
output before returning it, and the bundled files are re-verified from
scratch on each load: automorphism residuals, span closure, groupoid laws,
and a byte-exact canonical-form check.
"""

from __future__ import annotations

import importlib.resources
import json
import re
from dataclasses import dataclass

from . import linalg
from .algebra import StructureConstantAlgebra, field_as_algebra, matrix_algebra
from .crossed import (
    CrossedProductPresentation,
    CrossedSystem,
    build_crossed_product,
    groupoid_ring,
    skew_system,
    twisted_system,
    validate_crossed_system,
)
from .fields import ExtensionField, Field, FieldHom, PrimeField, Rationals, poly_irreducible, verify_field_hom
from .graded import GradedAlgebra
from .groupoid import FiniteGroupoid, group_as_groupoid, pair_groupoid, validate_groupoid
from .report import StructureError
from .schema import FORMAT, canonical_json, groupoid_from_block


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


KLEIN_TABLE = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]

# Quaternion relations i^2 = j^2 = -1, ij = k = -ji written as a 2-cocycle on
# the Klein four group {e, a, b, ab} ~ {1, i, j, k}; identity-touching values
# default to +1 and the rest satisfy the cocycle identity.
QUATERNION_SIGNS = {
    (1, 1): -1,
    (1, 2): 1,
    (1, 3): -1,
    (2, 1): -1,
    (2, 2): -1,
    (2, 3): 1,
    (3, 1): 1,
    (3, 2): -1,
    (3, 3): -1,
}


# --------------------------------------------------------------------------
# Elementary generators.


def gen_matrix(n: int, field: Field | None = None) -> CrossedProductPresentation:
    """M_n(field) as the groupoid ring of the pair groupoid on n objects."""
    if n < 1:
        raise StructureError("matrix example needs n >= 1")
    field = field if field is not None else Rationals()
    sys = groupoid_ring(field_as_algebra(field), pair_groupoid(n))
    pres = build_crossed_product(sys)
    # Independent cross-check against the direct matrix-unit construction.
    if not (pres.algebra == matrix_algebra(field, n)):
        raise StructureError(f"pair groupoid ring disagrees with the E_ij table for n = {n}")
    return pres


def gen_cyclic(field: Field, n: int) -> CrossedProductPresentation:
    """The group ring field[C_n] with trivial action and cocycle."""
    if n < 1:
        raise StructureError("cyclic example needs n >= 1")
    labels = tuple("e" if k == 0 else ("g" if k == 1 else f"g^{k}") for k in range(n))
    sys = groupoid_ring(field_as_algebra(field), group_as_groupoid(cyclic_table(n), labels))
    return build_crossed_product(sys)


def _least_irreducible(field: PrimeField, n: int) -> tuple:
    # Lexicographically least monic degree-n modulus, low coefficients first.
    p = field.p
    for m in range(p**n):
        coeffs = [(m // p**i) % p for i in range(n)] + [1]
        f = tuple(field.from_int(c) for c in coeffs)
        if poly_irreducible(f, field).status == "yes":
            return f
    raise StructureError(f"no irreducible polynomial of degree {n} over GF({p})")


def gen_finite_field_skew(p: int, n: int) -> CrossedProductPresentation:
    """GF(p^n) x| C_n, the cyclic group acting through Frobenius, trivial cocycle."""
    if n < 1:
        raise StructureError("skew example needs n >= 1")
    base = PrimeField(p)  # rejects composite p
    if p**n > 1 << 16:
        raise StructureError(f"GF({p}^{n}) is too large to tabulate")
    labels = tuple("e" if k == 0 else ("f" if k == 1 else f"f^{k}") for k in range(n))
    groupoid = group_as_groupoid(cyclic_table(n), labels)
    if n == 1:
        sys = groupoid_ring(field_as_algebra(base), groupoid)
        return build_crossed_product(sys)

    ext = ExtensionField(base, _least_irreducible(base, n), var="t")
    frob = FieldHom(ext, ext, ext.generator() ** p)
    verify_field_hom(frob).raise_if_failed("Frobenius is not a field map")
    action = {}
    for k in range(1, n):
        cols = []
        for j in range(n):
            image = ext.generator() ** j
            for _ in range(k):
                image = frob.apply(image)
            cols.append(list(ext.coeffs(image)))
        action[k] = [[cols[j][i] for j in range(n)] for i in range(n)]
    # Frobenius has exact order n on GF(p^n).
    power = ext.generator()
    for _ in range(n):
        power = frob.apply(power)
    if power != ext.generator():
        raise StructureError(f"Frobenius does not have order {n} on GF({p}^{n})")
    sys = skew_system(groupoid, {0: field_as_algebra(ext)}, action)
    validate_crossed_system(sys).raise_if_failed("skew system rejected")
    return build_crossed_product(sys, validated=True)


def gen_quaternion() -> CrossedProductPresentation:
    """The rational quaternions as a twisted group ring of the Klein four group."""
    field = Rationals()
    algebra = field_as_algebra(field)
    cocycle = {key: algebra.element([v]) for key, v in QUATERNION_SIGNS.items()}
    groupoid = group_as_groupoid(KLEIN_TABLE, labels=("e", "a", "b", "ab"))
    sys = twisted_system(groupoid, algebra, cocycle)
    return build_crossed_product(sys)


def gen_non_strong() -> GradedAlgebra:
    """Q[x]/(x^2) graded by C_2 with deg x = g: object unital, not strongly graded."""
    field = Rationals()
    c2 = group_as_groupoid(cyclic_table(2), labels=("e", "g"))
    entries = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]  # x*x = 0
    return GradedAlgebra.from_entries(field, c2, (0, 1), entries, labels=("1", "x"))


# --------------------------------------------------------------------------
# Bundled number-field towers.


@dataclass
class FieldTowerData:
    """A splitting field with verified automorphisms, subfield spans, and the
    groupoid of restricted isomorphisms between the subfields."""

    name: str
    field: ExtensionField
    automorphisms: list[FieldHom]
    groupoid: FiniteGroupoid
    spans: list[list]  # spans[i]: basis of subfield i, as field elements
    subfield_names: list[str]
    object_subfield: dict[int, int]
    arrow_automorphisms: list[int]


def _span_coords(field: ExtensionField, span: list, x) -> list:
    cols = [list(field.coeffs(v)) for v in span]
    sol = linalg.solve_columns(cols, list(field.coeffs(x)), field.base)
    if sol is None:
        raise StructureError(f"{field.value_to_str(x)} is not in the declared span")
    return sol


def load_tower_data(resource: str) -> FieldTowerData:
    """Load and fully re-verify a bundled field-tower file."""
    path = importlib.resources.files("groupoidrings").joinpath("corpus_data", resource)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise StructureError(f"no bundled tower data {resource!r}") from None
    doc = json.loads(text)
    if canonical_json(doc) != text:
        raise StructureError(f"bundled file {resource} is not in canonical form")
    if doc.get("format") != FORMAT or doc.get("kind") != "field-tower":
        raise StructureError(f"bundled file {resource} is not a field-tower document")

    rationals = Rationals()
    modulus = tuple(rationals.value_from_json(c) for c in doc["modulus"])
    field = ExtensionField(rationals, modulus, var=doc["variable"])

    autos = []
    for spec in doc["automorphisms"]:
        hom = FieldHom(field, field, field.value_from_json(spec["image"]))
        verify_field_hom(hom).raise_if_failed(f"{resource}: automorphism {spec['name']} rejected")
        autos.append(hom)

    groupoid = groupoid_from_block(doc["groupoid"])
    validate_groupoid(groupoid).raise_if_failed(f"{resource}: groupoid rejected")

    spans = []
    names = []
    for sf in doc["subfields"]:
        span = [field.value_from_json(v) for v in sf["span"]]
        rows = [list(field.coeffs(v)) for v in span]
        if linalg.rank(rows, field.degree, rationals) != len(span):
            raise StructureError(f"{resource}: span of {sf['name']} is not independent")
        _span_coords(field, span, field.one)  # 1 must lie in every subfield
        spans.append(span)
        names.append(sf["name"])

    object_subfield = {}
    for e, i in doc["object_subfield"]:
        object_subfield[e] = i
    if sorted(object_subfield) != sorted(groupoid.objects):
        raise StructureError(f"{resource}: object_subfield does not cover the objects exactly")
    if any(not (0 <= i < len(spans)) for i in object_subfield.values()):
        raise StructureError(f"{resource}: object_subfield references a missing subfield")

    arrow_autos = list(doc["arrow_automorphisms"])
    if len(arrow_autos) != groupoid.size or any(not (0 <= k < len(autos)) for k in arrow_autos):
        raise StructureError(f"{resource}: arrow_automorphisms table is malformed")

    # Each arrow's automorphism must carry the source span into the target
    # span; composition must agree with the groupoid on source spans.
    for s in range(groupoid.size):
        hom = autos[arrow_autos[s]]
        src_span = spans[object_subfield[groupoid.src[s]]]
        dst_span = spans[object_subfield[groupoid.dst[s]]]
        for v in src_span:
            _span_coords(field, dst_span, hom.apply(v))
        if groupoid.is_object(s):
            for v in src_span:
                if hom.apply(v) != v:
                    raise StructureError(f"{resource}: identity arrow {s} does not fix its subfield")
    for (s, t), st in groupoid.comp.items():
        hs, ht, hst = autos[arrow_autos[s]], autos[arrow_autos[t]], autos[arrow_autos[st]]
        for v in spans[object_subfield[groupoid.src[t]]]:
            if hs.apply(ht.apply(v)) != hst.apply(v):
                raise StructureError(f"{resource}: automorphisms do not compose along ({s}, {t})")

    if doc.get("beta") != "trivial":
        raise StructureError(f"{resource}: only trivial cocycles are bundled")
    return FieldTowerData(
        doc["name"], field, autos, groupoid, spans, names, object_subfield, arrow_autos
    )


def tower_presentation(tower: FieldTowerData) -> CrossedProductPresentation:
    """Skew product of the tower: one fiber per subfield copy, arrows act by
    the restricted isomorphisms, trivial cocycle."""
    field = tower.field
    rationals = field.base
    groupoid = tower.groupoid

    fibers = {}
    for e in groupoid.objects:
        span = tower.spans[tower.object_subfield[e]]
        d = len(span)
        entries = []
        for i in range(d):
            for j in range(d):
                for k, c in enumerate(_span_coords(field, span, span[i] * span[j])):
                    if c:
                        entries.append((i, j, k, c))
        unit = _span_coords(field, span, field.one)
        labels = tuple(field.value_to_str(v) for v in span)
        fibers[e] = StructureConstantAlgebra.from_entries(rationals, d, entries, unit, labels)

    action = {}
    for s in range(groupoid.size):
        hom = tower.automorphisms[tower.arrow_automorphisms[s]]
        src_span = tower.spans[tower.object_subfield[groupoid.src[s]]]
        dst_span = tower.spans[tower.object_subfield[groupoid.dst[s]]]
        cols = [_span_coords(field, dst_span, hom.apply(v)) for v in src_span]
        action[s] = [[cols[j][i] for j in range(len(src_span))] for i in range(len(dst_span))]

    sys = skew_system(groupoid, fibers, action)
    validate_crossed_system(sys).raise_if_failed(f"{tower.name}: tower system rejected")
    return build_crossed_product(sys, validated=True)


def gen_cbrt2() -> CrossedProductPresentation:
    """Conjugates of Q(cbrt 2) inside Q[t]/(t^6 + 108), one isomorphism per
    ordered pair of conjugates; 27-dimensional over Q."""
    return tower_presentation(load_tower_data("cbrt2_tower.json"))


def gen_klein_galois() -> CrossedProductPresentation:
    """The Galois extension Q(sqrt 2, sqrt 3)/Q with its Klein four group;
    16-dimensional over Q."""
    return tower_presentation(load_tower_data("klein_galois_tower.json"))


# --------------------------------------------------------------------------
# Name registry.

_MATRIX = re.compile(r"^matrix-(\d+)(?:-gf(\d+))?$")
_FF_SKEW = re.compile(r"^ff-skew-(\d+)-(\d+)$")
_Q_CYCLIC = re.compile(r"^q-c(\d+)$")
_GF_CYCLIC = re.compile(r"^gf(\d+)-c(\d+)$")


def example_names() -> tuple[str, ...]:
    """Canonical spellings; matrix-n, gf<p>, ff-skew-p-n, and q-cn generalize."""
    return (
        "matrix-2",
        "matrix-3",
        "matrix-4",
        "matrix-3-gf2",
        "ff-skew-2-2",
        "ff-skew-2-3",
        "ff-skew-3-2",
        "quaternion",
        "cbrt2",
        "klein-galois",
        "non-strong",
        "gf2-c2",
        "q-c2",
        "q-c3",
    )


def build_example(name: str):
    """Build a named example: a crossed-product presentation, or a graded
    algebra for the negative controls."""
    if name == "quaternion":
        return gen_quaternion()
    if name == "cbrt2":
        return gen_cbrt2()
    if name == "klein-galois":
        return gen_klein_galois()
    if name == "non-strong":
        return gen_non_strong()
    m = _MATRIX.match(name)
    if m:
        field = PrimeField(int(m.group(2))) if m.group(2) else Rationals()
        return gen_matrix(int(m.group(1)), field)
    m = _FF_SKEW.match(name)
    if m:
        return gen_finite_field_skew(int(m.group(1)), int(m.group(2)))
    m = _Q_CYCLIC.match(name)
    if m:
        return gen_cyclic(Rationals(), int(m.group(1)))
    m = _GF_CYCLIC.match(name)
    if m:
        return gen_cyclic(PrimeField(int(m.group(1))), int(m.group(2)))
    known = ", ".join(example_names())
    raise StructureError(f"unknown example {name!r}; known examples: {known}")
