"""Derive and write the bundled number-field tower data files.

Everything here is recomputed and re-verified by the corpus loader; this
script exists so the shipped JSON is generated from exact arithmetic rather
than typed by hand.
"""

import json
import os
from fractions import Fraction

from groupoidrings import linalg
from groupoidrings.fields import Rationals, ExtensionField, poly, FieldHom, verify_field_hom
from groupoidrings.groupoid import pair_groupoid, group_as_groupoid

Q = Rationals()


def frac(a, b=1):
    return Q.element(Fraction(a, b))


def span_coords(field_ext, span, x):
    cols = [list(field_ext.coeffs(v)) for v in span]
    sol = linalg.solve_columns(cols, list(field_ext.coeffs(x)), Q)
    return sol


# ---------------------------------------------------------------- cbrt2 tower
N = ExtensionField(Q, poly(Q, [frac(108), frac(0), frac(0), frac(0), frac(0), frac(0), frac(1)]), var="t")
print("modulus certificate:", N.irreducible_status, N._irreducible_detail)
t = N.generator()
one = N.one

omega = N.from_coeffs((frac(-1, 2),)) + N.from_coeffs((frac(0), frac(0), frac(0), frac(1, 12)))
assert omega * omega + omega + one == N.zero, "omega is a primitive cube root of unity"

c1 = N.from_coeffs((frac(0), frac(0), frac(0), frac(0), frac(1, 18)))
c2 = N.from_coeffs((frac(0), frac(1, 2), frac(0), frac(0), frac(-1, 36)))
c3 = N.from_coeffs((frac(0), frac(-1, 2), frac(0), frac(0), frac(-1, 36)))
two = N.from_coeffs((frac(2),))
for c in (c1, c2, c3):
    assert c * c * c == two, "cube roots of 2"
assert c3 == omega * c1 and c2 == omega * omega * c1

spans = [[one, c, c * c] for c in (c1, c2, c3)]
for span in spans:
    cols = [list(N.coeffs(v)) for v in span]
    assert linalg.rank(cols, 6, Q) == 3  # columns are 6-vectors; independent

images = [t, omega * t, omega * omega * t, -t, -(omega * t), -(omega * omega * t)]
homs = []
for k, img in enumerate(images):
    h = FieldHom(N, N, img)
    rep = verify_field_hom(h)
    assert rep.ok, (k, rep.as_dict())
    homs.append(h)

# arrow (i, j) of the pair groupoid runs from L_j to L_i; it carries the least
# automorphism sending the generator of L_j exactly onto the generator of L_i
gens = [c1, c2, c3]
arrow_autos = []
g9 = pair_groupoid(3)
for a in range(9):
    i, j = a // 3, a % 3
    pick = None
    for k, h in enumerate(homs):
        if h.apply(gens[j]) == gens[i]:
            pick = k
            break
    assert pick is not None, (i, j)
    arrow_autos.append(pick)
print("cbrt2 arrow automorphisms:", arrow_autos)

# closure: the chosen automorphism maps the whole source span into the target span
for a in range(9):
    i, j = a // 3, a % 3
    h = homs[arrow_autos[a]]
    for v in spans[j]:
        assert span_coords(N, spans[i], h.apply(v)) is not None, (a, "span closure")

# composition consistency on the source spans
for (s, u), su in g9.comp.items():
    hs, hu, hsu = homs[arrow_autos[s]], homs[arrow_autos[u]], homs[arrow_autos[su]]
    j = u % 3
    for v in spans[j]:
        assert hs.apply(hu.apply(v)) == hsu.apply(v), (s, u, "composition")

rat = Q.value_to_json


def n_json(x):
    return [rat(c) for c in N.coeffs(x)]


cbrt2_doc = {
    "format": "groupoidrings/1",
    "kind": "field-tower",
    "name": "cbrt2-tower",
    "notes": [
        "Splitting data for x^3 - 2 inside N = Q[t]/(t^6 + 108).",
        "t^3 squares to -108, so s = t^3/6 satisfies s^2 = -3 and w = (-1 + s)/2",
        "is a primitive cube root of unity.",
        "c1 = t^4/18 satisfies c1^3 = 2; c2 = w^2 c1 = t/2 - t^4/36 and",
        "c3 = w c1 = -t/2 - t^4/36 are the other cube roots of 2.",
        "L_i = Q(c_i) has Q-basis {1, c_i, c_i^2}; the three fields are the",
        "conjugates of Q(cbrt 2), each with trivial automorphism group, so the",
        "groupoid of field isomorphisms between them is the pair groupoid on",
        "three objects: exactly one arrow (i, j): L_j -> L_i per ordered pair.",
        "Automorphisms of N are determined by t -> (unit) t for the six units",
        "drawn from {1, w, w^2, -1, -w, -w^2}; arrow (i, j) stores the least",
        "automorphism index sending c_j exactly to c_i, which makes every",
        "restriction matrix the identity in the chosen bases.",
    ],
    "variable": "t",
    "modulus": [rat(c) for c in N.modulus],
    "subfields": [
        {"name": f"L{i + 1}", "span": [n_json(v) for v in spans[i]]} for i in range(3)
    ],
    "automorphisms": [
        {"name": f"g{k}", "image": n_json(img)} for k, img in enumerate(images)
    ],
    "groupoid": {
        "size": g9.size,
        "inv": list(g9.inv),
        "src": list(g9.src),
        "dst": list(g9.dst),
        "comp": sorted([s, u, su] for (s, u), su in g9.comp.items()),
        "labels": [g9.label(s) for s in range(9)],
    },
    "object_subfield": [[4 * i, i] for i in range(3)],
    "arrow_automorphisms": arrow_autos,
    "beta": "trivial",
}

# ---------------------------------------------------------- klein four tower
M = ExtensionField(Q, poly(Q, [frac(1), frac(0), frac(-10), frac(0), frac(1)]), var="t")
print("klein modulus certificate:", M.irreducible_status, M._irreducible_detail)
u = M.generator()
m_images = [
    u,
    M.from_coeffs((frac(0), frac(10), frac(0), frac(-1))),
    M.from_coeffs((frac(0), frac(-10), frac(0), frac(1))),
    -u,
]
m_homs = []
for k, img in enumerate(m_images):
    h = FieldHom(M, M, img)
    rep = verify_field_hom(h)
    assert rep.ok, (k, rep.as_dict())
    m_homs.append(h)
# the four automorphisms form the Klein four group
klein = group_as_groupoid(
    [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
    labels=("id", "s", "u", "su"),
)
for (a, b), ab in klein.comp.items():
    lhs = m_homs[a].apply(m_homs[b].apply(u))
    assert lhs == m_images[ab], (a, b)

m_span = [M.from_coeffs(tuple(frac(1) if k == d else frac(0) for k in range(4))) for d in range(4)]


def m_json(x):
    return [rat(c) for c in M.coeffs(x)]


klein_doc = {
    "format": "groupoidrings/1",
    "kind": "field-tower",
    "name": "klein-galois-tower",
    "notes": [
        "The Galois closure M = Q[t]/(t^4 - 10 t^2 + 1) of Q(sqrt 2, sqrt 3),",
        "with t = sqrt 2 + sqrt 3: sqrt 2 = (t^3 - 9t)/2 and sqrt 3 = (11t - t^3)/2.",
        "The Galois group is the Klein four group; the automorphism s negates",
        "sqrt 2 (t -> 10t - t^3), u negates sqrt 3 (t -> t^3 - 10t), su = -t.",
        "One object: the tower groupoid is the group itself acting on M, and",
        "the single subfield span is the full power basis of M.",
    ],
    "variable": "t",
    "modulus": [rat(c) for c in M.modulus],
    "subfields": [{"name": "M", "span": [m_json(v) for v in m_span]}],
    "automorphisms": [
        {"name": name, "image": m_json(img)}
        for name, img in zip(("id", "s", "u", "su"), m_images)
    ],
    "groupoid": {
        "size": klein.size,
        "inv": list(klein.inv),
        "src": list(klein.src),
        "dst": list(klein.dst),
        "comp": sorted([a, b, ab] for (a, b), ab in klein.comp.items()),
        "labels": [klein.label(s) for s in range(4)],
    },
    "object_subfield": [[0, 0]],
    "arrow_automorphisms": [0, 1, 2, 3],
    "beta": "trivial",
}

out_dir = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "src", "groupoidrings", "corpus_data",
)
os.makedirs(out_dir, exist_ok=True)
for name, doc in (("cbrt2_tower.json", cbrt2_doc), ("klein_galois_tower.json", klein_doc)):
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    print("wrote", path)
