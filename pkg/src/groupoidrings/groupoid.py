"""Finite groupoids as explicit tables: involution, endpoints, partial composition.

Arrows are integers 0..size-1. Objects are identified with their identity
arrows, so `src`/`dst` map arrows to arrow indices. `comp[(s, t)]` is the
product s*t, defined exactly when src(s) == dst(t) (s composed after t).
"""

from __future__ import annotations

import itertools

from .report import StructureError, ValidationReport


class FiniteGroupoid:
    def __init__(
        self,
        size: int,
        inv: tuple[int, ...],
        src: tuple[int, ...],
        dst: tuple[int, ...],
        comp: dict[tuple[int, int], int],
        labels: tuple[str, ...] | None = None,
    ):
        self.size = size
        self.inv = tuple(inv)
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.comp = dict(comp)
        self.labels = tuple(labels) if labels is not None else None
        self._check_shape()
        self.objects = tuple(sorted(set(self.src) | set(self.dst)))

    def _check_shape(self) -> None:
        if self.size < 0:
            raise StructureError("negative size")
        for name, table in (("inv", self.inv), ("src", self.src), ("dst", self.dst)):
            if len(table) != self.size:
                raise StructureError(f"{name} table has length {len(table)}, expected {self.size}")
            for i, v in enumerate(table):
                if not isinstance(v, int) or not (0 <= v < self.size):
                    raise StructureError(f"dangling index in {name}[{i}] = {v!r}")
        for key, value in self.comp.items():
            if (
                not isinstance(key, tuple)
                or len(key) != 2
                or not all(isinstance(k, int) and 0 <= k < self.size for k in key)
            ):
                raise StructureError(f"bad comp key {key!r}")
            if not isinstance(value, int) or not (0 <= value < self.size):
                raise StructureError(f"dangling index in comp[{key}] = {value!r}")
        if self.labels is not None and len(self.labels) != self.size:
            raise StructureError("labels length mismatch")

    # -- basic queries ------------------------------------------------------
    def label(self, s: int) -> str:
        return self.labels[s] if self.labels else str(s)

    def compose(self, s: int, t: int) -> int | None:
        return self.comp.get((s, t))

    def is_object(self, e: int) -> bool:
        return e in self.objects

    def composable_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.comp.keys())

    def composable_triples(self) -> list[tuple[int, int, int]]:
        out = []
        for (s, t) in self.composable_pairs():
            for r in range(self.size):
                if (t, r) in self.comp:
                    out.append((s, t, r))
        return out

    def isotropy(self, e: int) -> tuple[int, ...]:
        """Arrows with both endpoints at e; a group under comp."""
        if not self.is_object(e):
            raise StructureError(f"{e} is not an object")
        return tuple(s for s in range(self.size) if self.src[s] == e and self.dst[s] == e)

    def hom_set(self, e: int, f: int) -> tuple[int, ...]:
        """Arrows s with src(s) = e and dst(s) = f."""
        return tuple(s for s in range(self.size) if self.src[s] == e and self.dst[s] == f)

    def arrows_between_objects(self, objects) -> list[int]:
        keep = set(objects)
        return [s for s in range(self.size) if self.src[s] in keep and self.dst[s] in keep]

    def connected_components(self) -> list[list[int]]:
        """Partition of the objects; representatives are the least members."""
        parent = {e: e for e in self.objects}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in range(self.size):
            a, b = find(self.src[s]), find(self.dst[s])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for e in self.objects:
            groups.setdefault(find(e), []).append(e)
        return [sorted(groups[r]) for r in sorted(groups)]

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (
            self.size == other.size
            and self.inv == other.inv
            and self.src == other.src
            and self.dst == other.dst
            and self.comp == other.comp
        )

    def __repr__(self):
        return f"FiniteGroupoid(size={self.size}, objects={len(self.objects)})"


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    """Table enumeration of the groupoid axioms; empty report iff g is a groupoid."""
    rep = ValidationReport()
    for s in range(g.size):
        if g.inv[g.inv[s]] != s:
            rep.add("involution", (s,), f"inv(inv({g.label(s)})) = {g.label(g.inv[g.inv[s]])}")
    for s in range(g.size):
        for t in range(g.size):
            defined = (s, t) in g.comp
            expected = g.src[s] == g.dst[t]
            if defined and not expected:
                rep.add("composability", (s, t), "composite defined although src(s) != dst(t)")
            if expected and not defined:
                rep.add("composability", (s, t), "composite missing although src(s) == dst(t)")
    for s in range(g.size):
        d = g.comp.get((g.inv[s], s))
        if d != g.src[s]:
            rep.add(
                "domain",
                (s,),
                f"inv(s)*s = {None if d is None else g.label(d)}, declared src is {g.label(g.src[s])}",
            )
        r = g.comp.get((s, g.inv[s]))
        if r != g.dst[s]:
            rep.add(
                "range",
                (s,),
                f"s*inv(s) = {None if r is None else g.label(r)}, declared dst is {g.label(g.dst[s])}",
            )
    for (s, t), st in g.comp.items():
        d = g.comp.get((g.inv[s], s))
        if d is not None and g.comp.get((d, t)) != t:
            rep.add("domain", (s, t), f"d(s)*t != t for s={g.label(s)}, t={g.label(t)}")
        r = g.comp.get((t, g.inv[t]))
        if r is not None and g.comp.get((s, r)) != s:
            rep.add("range", (s, t), f"s*r(t) != s for s={g.label(s)}, t={g.label(t)}")
    for (s, t) in g.comp:
        for r in range(g.size):
            if (t, r) not in g.comp:
                continue
            left = g.comp.get((g.comp[(s, t)], r))
            right = g.comp.get((s, g.comp[(t, r)]))
            if left is None or right is None or left != right:
                rep.add(
                    "associativity",
                    (s, t, r),
                    f"(s*t)*r = {left}, s*(t*r) = {right}",
                )
    return rep


# --------------------------------------------------------------------------
# Constructors.


def group_as_groupoid(table: list[list[int]], labels: tuple[str, ...] | None = None) -> FiniteGroupoid:
    """One-object groupoid from a group Cayley table (table[a][b] = a*b)."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise StructureError("Cayley table is not square")
    for row in table:
        for v in row:
            if not isinstance(v, int) or not (0 <= v < n):
                raise StructureError(f"dangling index {v!r} in Cayley table")
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise StructureError("table has no identity element")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == identity and table[b][a] == identity), None)
        if b is None:
            raise StructureError(f"element {a} has no inverse")
        inv.append(b)
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise StructureError(f"table is not associative at {(a, b, c)}")
    if identity != 0:
        raise StructureError("expect the identity at index 0")
    comp = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid(n, tuple(inv), (0,) * n, (0,) * n, comp, labels)


def pair_groupoid(n: int) -> FiniteGroupoid:
    """I x I with (i,j)(k,l) = (i,l) when j = k; arrow (i,j) sits at index i*n + j."""
    if n < 1:
        raise StructureError("pair groupoid needs at least one object")

    def idx(i: int, j: int) -> int:
        return i * n + j

    size = n * n
    inv = [0] * size
    src = [0] * size
    dst = [0] * size
    labels = []
    comp = {}
    for i in range(n):
        for j in range(n):
            s = idx(i, j)
            inv[s] = idx(j, i)
            src[s] = idx(j, j)
            dst[s] = idx(i, i)
            labels.append(f"({i},{j})")
    for i, j, k in itertools.product(range(n), repeat=3):
        comp[(idx(i, j), idx(j, k))] = idx(i, k)
    return FiniteGroupoid(size, tuple(inv), tuple(src), tuple(dst), comp, tuple(labels))


def disjoint_union(parts: list[FiniteGroupoid]) -> FiniteGroupoid:
    size = sum(p.size for p in parts)
    inv: list[int] = []
    src: list[int] = []
    dst: list[int] = []
    labels: list[str] = []
    comp: dict[tuple[int, int], int] = {}
    offset = 0
    for k, p in enumerate(parts):
        inv.extend(v + offset for v in p.inv)
        src.extend(v + offset for v in p.src)
        dst.extend(v + offset for v in p.dst)
        labels.extend(f"{k}:{p.label(s)}" for s in range(p.size))
        for (s, t), st in p.comp.items():
            comp[(s + offset, t + offset)] = st + offset
        offset += p.size
    return FiniteGroupoid(size, tuple(inv), tuple(src), tuple(dst), comp, tuple(labels))


def restrict_to_objects(g: FiniteGroupoid, objects) -> tuple[FiniteGroupoid, list[int]]:
    """Full subgroupoid on the given objects; also returns the kept arrow indices."""
    keep_objects = sorted(set(objects))
    for e in keep_objects:
        if not g.is_object(e):
            raise StructureError(f"{e} is not an object")
    kept = g.arrows_between_objects(keep_objects)
    index = {old: new for new, old in enumerate(kept)}
    inv = tuple(index[g.inv[s]] for s in kept)
    src = tuple(index[g.src[s]] for s in kept)
    dst = tuple(index[g.dst[s]] for s in kept)
    comp = {
        (index[s], index[t]): index[st]
        for (s, t), st in g.comp.items()
        if s in index and t in index
    }
    labels = tuple(g.label(s) for s in kept) if g.labels else None
    return FiniteGroupoid(len(kept), inv, src, dst, comp, labels), kept
