"""Command line front end.

Verbs: validate, check, separability, simplicity, example, report. Exit codes:
0 when every requested check passes, 1 when a check fails or is not certified,
2 on malformed input (schema errors, unknown names, unreadable files).

Structured output is canonical JSON with no timings, so two runs on the same
input with the same seed produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import StructureConstantAlgebra, is_simple, validate_algebra
from .crossed import (
    CrossedProductPresentation,
    CrossedSystem,
    build_crossed_product,
    extract_crossed_system,
    validate_crossed_system,
)
from .corpus import build_example, example_names
from .graded import (
    GradedAlgebra,
    check_grading,
    is_object_crossed_product,
    is_strongly_graded,
    object_units,
)
from .groupoid import FiniteGroupoid, validate_groupoid
from .report import FAIL, NOT_CERTIFIED, PASS, StructureError, ValidationReport
from .schema import FORMAT, SchemaError, canonical_json, dumps_definition, loads_definition
from .separability import (
    casimir_construct,
    casimir_verify,
    separability_criterion,
    trace_solution_from_casimir,
)

PROPERTIES = ("grading", "object-unital", "strongly-graded", "crossed-product", "skew", "twisted")
_TOOL = f"groupoidrings {__version__}"


# --------------------------------------------------------------------------
# Report assembly.


def _entry(check: str, verdict: str, witnesses: list, detail: str | None = None) -> dict:
    out = {"check": check, "verdict": verdict, "witnesses": witnesses}
    if detail is not None:
        out["detail"] = detail
    return out


def _entry_from_validation(check: str, rep: ValidationReport, detail: str | None = None) -> dict:
    verdict = PASS if rep.ok else FAIL
    return _entry(check, verdict, [v.as_dict() for v in rep.violations], detail)


def _report_doc(command: str, source: str, entries: list[dict], seed: int | None = None) -> dict:
    status = 0 if all(e["verdict"] == PASS for e in entries) else 1
    doc = {
        "format": FORMAT,
        "tool": _TOOL,
        "command": command,
        "input": source,
        "checks": entries,
        "exit_status": status,
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def _render(doc: dict, fmt: str, out) -> None:
    if fmt == "structured":
        out.write(canonical_json(doc))
        return
    header = f"{doc['tool']} -- {doc['command']} ({doc['input']})"
    if "seed" in doc:
        header += f" [seed {doc['seed']}]"
    print(header, file=out)
    for entry in doc["checks"]:
        line = f"  {entry['check']}: {entry['verdict']}"
        if entry.get("detail"):
            line += f" -- {entry['detail']}"
        print(line, file=out)
        for w in entry["witnesses"]:
            print(f"    - {json.dumps(w, sort_keys=True)}", file=out)
    print(f"exit status: {doc['exit_status']}", file=out)


def _element_json(x) -> list:
    f = x.algebra.field
    return [[i, f.value_to_json(c)] for i, c in enumerate(x.coeffs) if c]


def _family_json(family: dict) -> list:
    out = []
    for e in sorted(family):
        tensor = family[e]
        pairs = [[s, t, _element_json(a)] for (s, t), a in sorted(tensor.coeffs.items())]
        out.append([e, pairs])
    return out


# --------------------------------------------------------------------------
# Input loading.


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    return loads_definition(text)


def _validation_entries(obj) -> list[dict]:
    if isinstance(obj, FiniteGroupoid):
        return [_entry_from_validation("groupoid-axioms", validate_groupoid(obj))]
    if isinstance(obj, CrossedSystem):
        entries = [_entry_from_validation("groupoid-axioms", validate_groupoid(obj.groupoid))]
        for e in obj.groupoid.objects:
            entries.append(
                _entry_from_validation(
                    f"fiber-algebra[{obj.groupoid.label(e)}]", validate_algebra(obj.fibers[e])
                )
            )
        entries.append(_entry_from_validation("crossed-system-axioms", validate_crossed_system(obj)))
        return entries
    if isinstance(obj, GradedAlgebra):
        entries = [_entry_from_validation("algebra-axioms", validate_algebra(obj))]
        entries.append(_entry_from_validation("grading", check_grading(obj)))
        entries.append(_entry_from_validation("object-unital", object_units(obj)[1]))
        return entries
    if isinstance(obj, StructureConstantAlgebra):
        return [_entry_from_validation("algebra-axioms", validate_algebra(obj))]
    raise SchemaError(f"nothing to validate for {type(obj).__name__}")


def _as_presentation(obj, entries: list[dict]) -> CrossedProductPresentation | None:
    """Crossed systems are validated and built; a failure is recorded and ends
    the command with the validation entries."""
    rep = validate_crossed_system(obj)
    if not rep.ok:
        entries.append(_entry_from_validation("crossed-system-axioms", rep))
        return None
    return build_crossed_product(obj, validated=True)


def _graded_of(obj, entries: list[dict]):
    """(graded algebra, presentation | None) for check/separability inputs."""
    if isinstance(obj, CrossedSystem):
        pres = _as_presentation(obj, entries)
        if pres is None:
            return None, None
        return pres.algebra, pres
    if isinstance(obj, GradedAlgebra):
        return obj, None
    raise SchemaError("this command needs a graded algebra or a crossed system")


# --------------------------------------------------------------------------
# Skew / twisted classification of a presented system.


def _skew_entry(sys: CrossedSystem) -> dict:
    g = sys.groupoid
    offending = [
        [s, t, _element_json(val)]
        for (s, t), val in sorted(sys.cocycle.items())
        if val != sys.fibers[g.dst[s]].unit_element()
    ]
    if offending:
        return _entry("skew", FAIL, offending[:8], "cocycle is not trivial")
    return _entry("skew", PASS, [], "trivial cocycle")


def _twisted_entry(sys: CrossedSystem) -> dict:
    from . import linalg
    from .algebra import center

    g = sys.groupoid
    witnesses = []
    base = sys.fibers[g.objects[0]]
    for e in g.objects:
        if not (sys.fibers[e] == base):
            witnesses.append({"object": g.label(e), "message": "fibers differ between objects"})
    ident = linalg.identity_matrix(sys.field, base.dim)
    for s in range(g.size):
        if sys.fibers[g.src[s]].dim != base.dim or sys.action[s] != ident:
            witnesses.append({"arrow": g.label(s), "message": "action is not trivial"})
    if not witnesses:
        central = center(base)
        span = linalg.Subspace(sys.field, base.dim, [z.coeffs for z in central])
        for (s, t), val in sorted(sys.cocycle.items()):
            if not span.contains(val.coeffs):
                witnesses.append(
                    {"pair": [s, t], "message": "cocycle value is not central"}
                )
    if witnesses:
        return _entry("twisted", FAIL, witnesses[:8])
    return _entry("twisted", PASS, [], "trivial action with central cocycle values")


# --------------------------------------------------------------------------
# Verbs.


def cmd_validate(args) -> int:
    entries = _validation_entries(_load(args.path))
    doc = _report_doc("validate", args.path, entries, seed=args.seed)
    _render(doc, args.format, sys.stdout)
    return doc["exit_status"]


def cmd_check(args) -> int:
    obj = _load(args.path)
    entries: list[dict] = []
    r, pres = _graded_of(obj, entries)
    if r is not None:
        prop = args.property
        if prop == "grading":
            entries.append(_entry_from_validation("grading", check_grading(r)))
        elif prop == "object-unital":
            entries.append(_entry_from_validation("object-unital", object_units(r)[1]))
        elif prop == "strongly-graded":
            verdict, _, rep = is_strongly_graded(r)
            entries.append(_entry("strongly-graded", verdict, [v.as_dict() for v in rep.violations]))
        elif prop == "crossed-product":
            verdict, units, detail = is_object_crossed_product(r, seed=args.seed)
            listed = (
                [[s, _element_json(u)] for s, u in sorted(units.items())] if units is not None else []
            )
            entries.append(_entry("crossed-product", verdict, listed, detail))
        else:  # skew / twisted need a presented system
            sys_obj = pres.system if pres is not None else None
            if sys_obj is None:
                verdict, units, detail = is_object_crossed_product(r, seed=args.seed)
                if verdict != PASS:
                    entries.append(_entry(prop, NOT_CERTIFIED, [], detail))
                else:
                    sys_obj = extract_crossed_system(r, units).system
            if sys_obj is not None:
                entries.append(_skew_entry(sys_obj) if prop == "skew" else _twisted_entry(sys_obj))
    doc = _report_doc("check", args.path, entries, seed=args.seed)
    _render(doc, args.format, sys.stdout)
    return doc["exit_status"]


def cmd_separability(args) -> int:
    obj = _load(args.path)
    entries: list[dict] = []
    r, pres = _graded_of(obj, entries)
    if r is not None:
        rep = separability_criterion(pres if pres is not None else r)
        payload = rep.as_dict()
        witnesses = payload["objects"]
        detail = payload.get("support-note")
        entries.append(_entry("separability-criterion", rep.verdict, witnesses, detail))

        wants_casimir = args.construct_casimir or args.verify_only or args.from_casimir
        if wants_casimir:
            if pres is None:
                verdict, units, detail = is_object_crossed_product(r, seed=args.seed)
                if verdict != PASS:
                    entries.append(_entry("casimir-construct", NOT_CERTIFIED, [], detail))
                else:
                    pres = extract_crossed_system(r, units).presentation
                    rep = separability_criterion(pres)
            if pres is not None:
                if rep.verdict != PASS:
                    entries.append(
                        _entry(
                            "casimir-construct",
                            FAIL,
                            [],
                            "criterion failed; no Casimir family exists",
                        )
                    )
                else:
                    family = casimir_construct(pres, rep)
                    if not args.verify_only:
                        entries.append(_entry("casimir-family", PASS, _family_json(family)))
                    entries.append(
                        _entry_from_validation("casimir-verify", casimir_verify(pres, family))
                    )
                    if args.from_casimir:
                        solutions = trace_solution_from_casimir(pres, family)
                        listed = [[e, _element_json(d)] for e, d in sorted(solutions.items())]
                        entries.append(_entry("casimir-trace-solution", PASS, listed))
    doc = _report_doc("separability", args.path, entries, seed=args.seed)
    _render(doc, args.format, sys.stdout)
    return doc["exit_status"]


def cmd_simplicity(args) -> int:
    obj = _load(args.path)
    if isinstance(obj, CrossedSystem):
        entries: list[dict] = []
        pres = _as_presentation(obj, entries)
        if pres is None:
            doc = _report_doc("simplicity", args.path, entries, seed=args.seed)
            _render(doc, args.format, sys.stdout)
            return doc["exit_status"]
        algebra = pres.algebra
    elif isinstance(obj, StructureConstantAlgebra):
        algebra = obj
    else:
        raise SchemaError("simplicity needs an algebra or a crossed system")
    cert = is_simple(algebra, seed=args.seed)
    verdict = {"simple": PASS, "not-simple": FAIL}.get(cert.verdict, cert.verdict)
    payload = cert.as_dict()
    witnesses = [payload]
    doc = _report_doc(
        "simplicity", args.path, [_entry("simplicity", verdict, witnesses)], seed=args.seed
    )
    _render(doc, args.format, sys.stdout)
    return doc["exit_status"]


def cmd_example(args) -> int:
    obj = build_example(args.name)
    text = dumps_definition(obj, name=args.name)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {args.emit}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_report(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {args.path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT or "checks" not in doc:
        raise SchemaError(f"{args.path} is not a report document")
    _render(doc, args.format, sys.stdout)
    status = doc.get("exit_status")
    return status if isinstance(status, int) else 0


# --------------------------------------------------------------------------
# Argument parsing.


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupoidrings",
        description="Validate groupoid-graded rings and certify separability of R over R_0.",
    )
    parser.add_argument("--version", action="version", version=_TOOL)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if seed:
            p.add_argument("--seed", type=_seed, default=0, help="seed for randomized searches")

    p = sub.add_parser("validate", help="schema plus axiom checks for a definition file")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="run one named structural check")
    p.add_argument("path")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("separability", help="decide separability of R over R_0")
    p.add_argument("path")
    p.add_argument("--construct-casimir", action="store_true", help="also build and verify the Casimir family")
    p.add_argument("--verify-only", action="store_true", help="verify the family but omit its payload")
    p.add_argument("--from-casimir", action="store_true", help="re-derive trace solutions from the family")
    common(p)
    p.set_defaults(func=cmd_separability)

    p = sub.add_parser("simplicity", help="decide simplicity of the algebra")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_simplicity)

    p = sub.add_parser("example", help="emit a built-in example as a definition file")
    p.add_argument("name", help=f"one of: {', '.join(example_names())} (patterns generalize)")
    p.add_argument("--emit", metavar="PATH", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("report", help="render a stored structured report")
    p.add_argument("path")
    common(p, seed=False)
    p.set_defaults(func=cmd_report)
    return parser


def _seed(text: str) -> int:
    value = int(text)
    if not (0 <= value < 1 << 64):
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except StructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
