"""Face colourings, derived edge colourings and reflection-group presentations.

Colours live in the Klein four-group encoded as 0..3 with addition = XOR.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from rapoly.circuits import admissible
from rapoly.errors import (
    ImproperFaceColoring,
    InputError,
    InternalConsistencyError,
    NotAdmissible,
    NotTrivalent,
)
from rapoly.gluing import composition
from rapoly.polyhedron import CombinatorialPolyhedron

ORIENTATION_INDEX = 2
COLORING_INDEX = 4


@dataclass(frozen=True)
class FaceColoring:
    colors: dict[int, int]
    boundary_face: int | None = None

    def to_json(self) -> dict:
        return {
            "colors": [[f, c] for f, c in sorted(self.colors.items())],
            "boundary_face": self.boundary_face,
        }


@dataclass(frozen=True)
class EdgeColoring:
    colors: dict[int, int]
    verified: bool

    def to_json(self) -> dict:
        return {"colors": [[e, c] for e, c in sorted(self.colors.items())], "verified": self.verified}


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    generators: tuple[str, ...]
    relators: tuple[str, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        gens = set(self.generators)
        for word in self.relators:
            for letter in word_letters(word):
                if letter not in gens:
                    raise InternalConsistencyError(f"relator {word} uses undeclared generator {letter}")

    def to_text(self) -> str:
        """One generator per line, a blank line, then one relator per line."""
        return "\n".join(self.generators) + "\n\n" + "\n".join(self.relators) + "\n"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relators": list(self.relators),
            "metadata": self.metadata,
        }


def word_letters(word: str) -> list[str]:
    """Generator names of a word like ``a3*a7^-1``, inverses stripped."""
    return [tok.removesuffix("^-1") for tok in word.split("*")]


def parse_presentation_text(text: str) -> tuple[list[str], list[str]]:
    head, _, tail = text.partition("\n\n")
    return head.split(), tail.split()


# ---------------------------------------------------------------------------
# colourings
# ---------------------------------------------------------------------------


def face_four_coloring(p: CombinatorialPolyhedron, boundary_face: int | None = None) -> FaceColoring:
    """Proper colouring of the face-adjacency graph by backtracking.

    Faces are coloured in id order, values tried 0..3.  ``boundary_face`` is
    left out of the domain when given.
    """
    if boundary_face is not None:
        p.check_face(boundary_face)
    order = [f for f in range(p.num_faces) if f != boundary_face]
    nbrs = [sorted(p.face_neighbors[f]) for f in range(p.num_faces)]
    colors = [-1] * p.num_faces
    i = 0
    # iterative backtracking; colors[f] holds the value being tried
    while 0 <= i < len(order):
        f = order[i]
        c = colors[f] + 1
        taken = {colors[g] for g in nbrs[f] if g != boundary_face}
        while c < 4 and c in taken:
            c += 1
        if c < 4:
            colors[f] = c
            i += 1
        else:
            colors[f] = -1
            i -= 1
    if i < 0:
        raise InternalConsistencyError("no proper face 4-colouring found")
    return FaceColoring({f: colors[f] for f in order}, boundary_face)


def check_face_coloring(p: CombinatorialPolyhedron, fc: FaceColoring) -> None:
    domain = set(range(p.num_faces)) - {fc.boundary_face}
    if set(fc.colors) != domain:
        raise ImproperFaceColoring("colouring domain does not match the faces")
    for f, c in fc.colors.items():
        if c not in (0, 1, 2, 3):
            raise ImproperFaceColoring(f"face {f} has colour {c} outside 0..3")
    for eid, (f, g) in enumerate(p.edge_faces):
        if f in domain and g in domain and fc.colors[f] == fc.colors[g]:
            raise ImproperFaceColoring(f"faces {f} and {g} share edge {eid} and colour {fc.colors[f]}")


def edge_coloring(p: CombinatorialPolyhedron, fc: FaceColoring) -> EdgeColoring:
    """Colour each edge by the sum of the colours of its two faces."""
    check_face_coloring(p, fc)
    if not p.is_trivalent:
        v = next(x for x in p.vertices if p.vertex_degree[x] != 3)
        raise NotTrivalent(f"vertex {v} has degree {p.vertex_degree[v]}", vertex=v)
    colors = {}
    for eid, (f, g) in enumerate(p.edge_faces):
        if fc.boundary_face in (f, g):
            continue
        colors[eid] = fc.colors[f] ^ fc.colors[g]
    at_vertex: dict[int, list[int]] = {}
    for eid, c in colors.items():
        for v in p.edges[eid]:
            at_vertex.setdefault(v, []).append(c)
    ok = all(c != 0 for c in colors.values()) and all(
        len(cs) == len(set(cs)) for cs in at_vertex.values()
    )
    if not ok:
        raise InternalConsistencyError("derived edge colouring is not proper")
    return EdgeColoring(colors, True)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


def _reflection_relators(p: CombinatorialPolyhedron, prefix: str, excluded: set[int]) -> tuple[list[str], list[str]]:
    faces = [f for f in range(p.num_faces) if f not in excluded]
    gens = [f"{prefix}{f}" for f in faces]
    rels = [f"{g}*{g}" for g in gens]
    for f, g in sorted({tuple(sorted(pair)) for pair in p.edge_faces}):
        if f in excluded or g in excluded:
            continue
        rels.append(f"{prefix}{f}*{prefix}{g}*{prefix}{f}*{prefix}{g}")
    return gens, rels


def _wirtinger(p: CombinatorialPolyhedron, boundary_face: int | None) -> GroupPresentation:
    skip_e = set(p.face_edges[boundary_face]) if boundary_face is not None else set()
    skip_v = set(p.faces[boundary_face]) if boundary_face is not None else set()
    edges = [e for e in range(len(p.edges)) if e not in skip_e]
    gens = [f"a{e}" for e in edges]
    rels = [f"a{e}*a{e}" for e in edges]
    vertex_rels = 0
    for v in p.vertices:
        if v in skip_v:
            continue
        fi, fj, fk = sorted(p.vertex_faces[v])
        e_ij = _edge_between(p, v, fi, fj)
        e_jk = _edge_between(p, v, fj, fk)
        e_ik = _edge_between(p, v, fi, fk)
        # a_ij a_jk = a_ik
        rels.append(f"a{e_ij}*a{e_jk}*a{e_ik}^-1")
        vertex_rels += 1
    return GroupPresentation(
        "G_P",
        tuple(gens),
        tuple(rels),
        {"involutions": len(edges), "vertex_relations": vertex_rels, "boundary_face": boundary_face},
    )


def _edge_between(p: CombinatorialPolyhedron, v: int, f: int, g: int) -> int:
    common = set(p.face_edges[f]) & set(p.face_edges[g])
    for e in common:
        if v in p.edges[e]:
            return e
    raise InternalConsistencyError(f"faces {f} and {g} share no edge at vertex {v}")


def _image(word: str, values: dict[str, int]) -> int:
    acc = 0
    for letter in word_letters(word):
        acc ^= values[letter]
    return acc


@dataclass(frozen=True)
class Presentations:
    gamma: GroupPresentation
    g: GroupPresentation
    h_values: dict[str, int]
    certificate: tuple[tuple[str, int], ...]
    surjective: bool

    @property
    def certificate_ok(self) -> bool:
        return all(img == 0 for _, img in self.certificate)

    @property
    def index(self) -> dict[str, int]:
        return {
            "orientation": ORIENTATION_INDEX,
            "coloring": COLORING_INDEX,
            "total": ORIENTATION_INDEX * COLORING_INDEX,
        }

    def h_spec_json(self) -> dict:
        return {
            "values": dict(sorted(self.h_values.items(), key=lambda kv: int(kv[0][1:]))),
            "surjective": self.surjective,
            "relator_images": [[w, img] for w, img in self.certificate],
            "certificate_ok": self.certificate_ok,
            "index": self.index,
        }


def presentations(
    p: CombinatorialPolyhedron, fc: FaceColoring, boundary_face: int | None = None
) -> Presentations:
    """Standard reflection presentation, Wirtinger presentation and the
    colour homomorphism with a relator-by-relator certificate."""
    verdict = admissible(p)
    if not verdict:
        raise NotAdmissible(f"polyhedron is not admissible: {verdict.describe(p)}", verdict)
    if boundary_face is None:
        boundary_face = fc.boundary_face
    elif fc.boundary_face not in (None, boundary_face):
        raise InputError("boundary face differs from the colouring's boundary face")
    ec = edge_coloring(p, fc)
    excluded = {boundary_face} if boundary_face is not None else set()
    gens, rels = _reflection_relators(p, "r", excluded)
    gamma = GroupPresentation(
        "Gamma_P", tuple(gens), tuple(rels), {"boundary_face": boundary_face}
    )
    g = _wirtinger(p, boundary_face)
    values = {f"a{e}": c for e, c in ec.colors.items()}
    cert = tuple((w, _image(w, values)) for w in g.relators)
    if any(img != 0 for _, img in cert):
        raise InternalConsistencyError("colour homomorphism does not kill every relator")
    surjective = len({c for c in values.values()}) >= 2
    return Presentations(gamma, g, values, cert, surjective)


def amalgam_presentation(
    p1: CombinatorialPolyhedron,
    f1: int,
    p2: CombinatorialPolyhedron,
    f2: int,
    offset: int = 0,
    flip: bool = False,
) -> GroupPresentation:
    """Amalgamated presentation of the reflection group of a composition.

    Generators ``s{f}`` are the faces of ``p1`` other than ``f1``, ``t{f}``
    those of ``p2`` other than ``f2``.  Relators: involutions, commuting
    squares for adjacent faces within each factor, and one identification
    ``s*t^-1`` for each pair of faces merged across an edge of the glued face.
    """
    comp = composition(p1, f1, p2, f2, offset, flip)
    s_gens, s_rels = _reflection_relators(p1, "s", {f1})
    t_gens, t_rels = _reflection_relators(p2, "t", {f2})
    ident = [f"s{a}*t{b}^-1" for a, b in comp.glued_pairs]
    face_of = {}
    for i, origin in enumerate(comp.face_origin):
        for side, fid in origin:
            face_of[f"{'s' if side == 1 else 't'}{fid}"] = i
    return GroupPresentation(
        "amalgam",
        tuple(s_gens + t_gens),
        tuple(s_rels + t_rels + ident),
        {
            "identifications": len(ident),
            "composition_face": dict(sorted(face_of.items(), key=lambda kv: (kv[0][0], int(kv[0][1:])))),
            "composition_faces": comp.polyhedron.num_faces,
        },
    )


def collapse_identifications(pres: GroupPresentation) -> int:
    """Number of generators left after identifying ``s_j = t_j``."""
    parent = {g: g for g in pres.generators}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in pres.relators:
        letters = w.split("*")
        if len(letters) == 2 and letters[1].endswith("^-1"):
            a, b = find(letters[0]), find(letters[1][:-3])
            if a != b:
                parent[a] = b
    return len({find(g) for g in pres.generators})
