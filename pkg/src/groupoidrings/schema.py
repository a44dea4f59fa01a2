"""Definition documents: JSON in, rebuilt objects out, and back again.

A document is an object {"format": "groupoidrings/1", "kind": ..., ...} with
kind one of groupoid | algebra | graded | crossed_system. Loading re-creates
the object exactly; malformed or unresolvable input raises SchemaError, while
mathematical axiom violations are deliberately left to the validate_* layer,
so a well-formed file describing a broken structure loads fine and then fails
validation with witnesses.

Scalars are encoded per field: rationals as "num/den" strings, prime-field
residues as integers, extension-field elements as ascending coefficient lists
over the base encoding.
"""

from __future__ import annotations

import json

from .algebra import StructureConstantAlgebra, field_as_algebra, matrix_algebra
from .crossed import CrossedProductPresentation, CrossedSystem
from .fields import ExtensionField, Field, PrimeField, Rationals
from .graded import GradedAlgebra
from .groupoid import FiniteGroupoid
from .report import StructureError

FORMAT = "groupoidrings/1"
KINDS = ("groupoid", "algebra", "graded", "crossed_system")


class SchemaError(StructureError):
    """Malformed definition document (distinct from a failed axiom check)."""


def canonical_json(doc) -> str:
    """Stable byte encoding: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# Scalars and fields.


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def _get(block: dict, key: str, context: str):
    _expect(isinstance(block, dict), f"{context}: expected an object")
    if key not in block:
        raise SchemaError(f"{context}: missing key {key!r}")
    return block[key]


def field_from_spec(spec) -> Field:
    """Inverse of Field.to_spec."""
    kind = _get(spec, "kind", "field spec")
    if kind == "rational":
        return Rationals()
    if kind == "prime":
        p = _get(spec, "p", "prime field spec")
        _expect(isinstance(p, int), "prime field spec: p must be an integer")
        return PrimeField(p)
    if kind == "extension":
        base = field_from_spec(_get(spec, "base", "extension field spec"))
        modulus_json = _get(spec, "modulus", "extension field spec")
        _expect(isinstance(modulus_json, list), "extension field spec: modulus must be a list")
        modulus = tuple(base.value_from_json(c) for c in modulus_json)
        var = spec.get("var", "x")
        flag = spec.get("irreducible", "certified")
        if flag == "certified":
            mode = "check"
        elif flag in ("asserted", "check"):
            mode = "asserted" if flag == "asserted" else "check"
        else:
            raise SchemaError(f"extension field spec: bad irreducible flag {flag!r}")
        return ExtensionField(base, modulus, var=var, irreducible=mode)
    raise SchemaError(f"unknown field kind {kind!r}")


# --------------------------------------------------------------------------
# Groupoids.


def groupoid_to_block(g: FiniteGroupoid) -> dict:
    block = {
        "size": g.size,
        "inv": list(g.inv),
        "src": list(g.src),
        "dst": list(g.dst),
        "comp": [[s, t, u] for (s, t), u in sorted(g.comp.items())],
    }
    if g.labels is not None:
        block["labels"] = list(g.labels)
    return block


def groupoid_from_block(block) -> FiniteGroupoid:
    size = _get(block, "size", "groupoid block")
    comp_rows = _get(block, "comp", "groupoid block")
    _expect(isinstance(comp_rows, list), "groupoid block: comp must be a list")
    comp = {}
    for row in comp_rows:
        _expect(isinstance(row, list) and len(row) == 3, f"groupoid block: bad comp row {row!r}")
        s, t, u = row
        if (s, t) in comp:
            raise SchemaError(f"groupoid block: duplicate comp row for ({s}, {t})")
        comp[(s, t)] = u
    labels = block.get("labels")
    return FiniteGroupoid(
        size,
        tuple(_get(block, "inv", "groupoid block")),
        tuple(_get(block, "src", "groupoid block")),
        tuple(_get(block, "dst", "groupoid block")),
        comp,
        tuple(labels) if labels is not None else None,
    )


# --------------------------------------------------------------------------
# Plain algebras.


def algebra_to_block(a: StructureConstantAlgebra) -> dict:
    field = a.field
    entries = []
    for i in range(a.dim):
        for j in range(a.dim):
            for k, c in a.table[i][j]:
                entries.append([i, j, k, field.value_to_json(c)])
    block = {
        "dim": a.dim,
        "table": entries,
        "unit": [field.value_to_json(c) for c in a.unit],
    }
    if a.labels is not None:
        block["labels"] = list(a.labels)
    return block


def algebra_from_block(field: Field, block) -> StructureConstantAlgebra:
    _expect(isinstance(block, dict), "algebra block: expected an object")
    if "builtin" in block:
        name = block["builtin"]
        if name == "field":
            return field_as_algebra(field)
        if name == "matrix":
            n = _get(block, "n", "matrix algebra block")
            _expect(isinstance(n, int) and n >= 1, "matrix algebra block: n must be a positive integer")
            return matrix_algebra(field, n)
        raise SchemaError(f"unknown builtin algebra {name!r}")
    dim = _get(block, "dim", "algebra block")
    _expect(isinstance(dim, int) and dim >= 1, "algebra block: dim must be a positive integer")
    entries = []
    for row in _get(block, "table", "algebra block"):
        _expect(isinstance(row, list) and len(row) == 4, f"algebra block: bad table row {row!r}")
        i, j, k, value = row
        entries.append((i, j, k, field.value_from_json(value)))
    unit_json = _get(block, "unit", "algebra block")
    _expect(isinstance(unit_json, list), "algebra block: unit must be a list")
    unit = [field.value_from_json(c) for c in unit_json]
    labels = block.get("labels")
    return StructureConstantAlgebra.from_entries(
        field, dim, entries, unit, tuple(labels) if labels is not None else None
    )


# --------------------------------------------------------------------------
# Graded algebras.


def graded_to_block(r: GradedAlgebra) -> dict:
    field = r.field
    entries = []
    for i in range(r.dim):
        for j in range(r.dim):
            for k, c in r.table[i][j]:
                entries.append([i, j, k, field.value_to_json(c)])
    block = {"deg": list(r.deg), "table": entries}
    if r.labels is not None:
        block["labels"] = list(r.labels)
    return block


def graded_from_block(field: Field, groupoid: FiniteGroupoid, block) -> GradedAlgebra:
    deg = _get(block, "deg", "graded block")
    _expect(isinstance(deg, list), "graded block: deg must be a list")
    entries = []
    for row in _get(block, "table", "graded block"):
        _expect(isinstance(row, list) and len(row) == 4, f"graded block: bad table row {row!r}")
        i, j, k, value = row
        entries.append((i, j, k, field.value_from_json(value)))
    labels = block.get("labels")
    return GradedAlgebra.from_entries(
        field, groupoid, tuple(deg), entries, tuple(labels) if labels is not None else None
    )


# --------------------------------------------------------------------------
# Crossed systems.


def crossed_system_to_blocks(sys: CrossedSystem) -> dict:
    g = sys.groupoid
    field = sys.field
    fibers = [[e, algebra_to_block(sys.fibers[e])] for e in g.objects]
    action = []
    for s in range(g.size):
        mat = sys.action[s]
        action.append([s, [[field.value_to_json(c) for c in row] for row in mat]])
    if sys.is_trivial_cocycle():
        cocycle = "trivial"
    else:
        cocycle = []
        for (s, t), val in sorted(sys.cocycle.items()):
            fiber = sys.fibers[g.dst[s]]
            cocycle.append([s, t, [fiber.field.value_to_json(c) for c in val.coeffs]])
    return {"fibers": fibers, "action": action, "cocycle": cocycle}


def crossed_system_from_blocks(field: Field, groupoid: FiniteGroupoid, doc: dict) -> CrossedSystem:
    fibers = {}
    for row in _get(doc, "fibers", "crossed_system document"):
        _expect(isinstance(row, list) and len(row) == 2, f"crossed_system: bad fiber row {row!r}")
        e, block = row
        if e in fibers:
            raise SchemaError(f"crossed_system: duplicate fiber for object {e}")
        fibers[e] = algebra_from_block(field, block)
    action = {}
    for row in _get(doc, "action", "crossed_system document"):
        _expect(isinstance(row, list) and len(row) == 2, f"crossed_system: bad action row {row!r}")
        s, mat = row
        _expect(
            isinstance(s, int) and 0 <= s < groupoid.size,
            f"crossed_system: action row references unknown arrow {s!r}",
        )
        _expect(isinstance(mat, list), f"crossed_system: action matrix at {s} must be a list")
        action[s] = [[field.value_from_json(c) for c in mrow] for mrow in mat]
    cocycle_doc = _get(doc, "cocycle", "crossed_system document")
    if cocycle_doc == "trivial":
        cocycle = None
    else:
        _expect(isinstance(cocycle_doc, list), "crossed_system: cocycle must be 'trivial' or a list")
        cocycle = {}
        for row in cocycle_doc:
            _expect(isinstance(row, list) and len(row) == 3, f"crossed_system: bad cocycle row {row!r}")
            s, t, coeffs = row
            _expect(isinstance(coeffs, list), f"crossed_system: cocycle value at ({s}, {t}) must be a list")
            fiber = fibers.get(groupoid.dst[s]) if isinstance(s, int) and 0 <= s < groupoid.size else None
            if fiber is None:
                raise SchemaError(f"crossed_system: cocycle row references unknown arrow {s}")
            if (s, t) in cocycle:
                raise SchemaError(f"crossed_system: duplicate cocycle row for ({s}, {t})")
            cocycle[(s, t)] = fiber.element([field.value_from_json(c) for c in coeffs])
    return CrossedSystem(groupoid, fibers, action, cocycle)


# --------------------------------------------------------------------------
# Whole documents.


def document_from_object(obj, name: str | None = None) -> dict:
    """Serialize a groupoid, algebra, graded algebra, or crossed system."""
    if isinstance(obj, CrossedProductPresentation):
        obj = obj.system
    if isinstance(obj, FiniteGroupoid):
        doc = {"format": FORMAT, "kind": "groupoid", "groupoid": groupoid_to_block(obj)}
    elif isinstance(obj, CrossedSystem):
        doc = {
            "format": FORMAT,
            "kind": "crossed_system",
            "field": obj.field.to_spec(),
            "groupoid": groupoid_to_block(obj.groupoid),
        }
        doc.update(crossed_system_to_blocks(obj))
    elif isinstance(obj, GradedAlgebra):
        doc = {
            "format": FORMAT,
            "kind": "graded",
            "field": obj.field.to_spec(),
            "groupoid": groupoid_to_block(obj.groupoid),
            "graded": graded_to_block(obj),
        }
    elif isinstance(obj, StructureConstantAlgebra):
        doc = {
            "format": FORMAT,
            "kind": "algebra",
            "field": obj.field.to_spec(),
            "algebra": algebra_to_block(obj),
        }
    else:
        raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")
    if name is not None:
        doc["name"] = name
    return doc


def object_from_document(doc):
    """Rebuild the object a document describes; SchemaError on malformed input."""
    _expect(isinstance(doc, dict), "document: expected a JSON object")
    fmt = _get(doc, "format", "document")
    if fmt != FORMAT:
        raise SchemaError(f"unsupported format {fmt!r} (expected {FORMAT!r})")
    kind = _get(doc, "kind", "document")
    if kind == "groupoid":
        return groupoid_from_block(_get(doc, "groupoid", "document"))
    if kind == "algebra":
        field = field_from_spec(_get(doc, "field", "document"))
        return algebra_from_block(field, _get(doc, "algebra", "document"))
    if kind == "graded":
        field = field_from_spec(_get(doc, "field", "document"))
        groupoid = groupoid_from_block(_get(doc, "groupoid", "document"))
        return graded_from_block(field, groupoid, _get(doc, "graded", "document"))
    if kind == "crossed_system":
        field = field_from_spec(_get(doc, "field", "document"))
        groupoid = groupoid_from_block(_get(doc, "groupoid", "document"))
        return crossed_system_from_blocks(field, groupoid, doc)
    raise SchemaError(f"unknown document kind {kind!r}")


def loads_definition(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return object_from_document(doc)


def dumps_definition(obj, name: str | None = None) -> str:
    return canonical_json(document_from_object(obj, name))
