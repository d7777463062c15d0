"""Composition and doubling of polyhedra along a face.

Both operations glue two polyhedra along matching ``k``-gons, delete the
``k`` glued edges and demote their endpoints.  The elementary moves used here
(:func:`merge_across_edge`, :func:`suppress_vertex`) are shared with edge
surgery in :mod:`rapoly.reduction`.
"""

from __future__ import annotations

from dataclasses import dataclass

from rapoly.circuits import PrismaticCircuit, admissible, circuit_from_edges
from rapoly.errors import FaceSizeMismatch, InputError, InternalConsistencyError, NotAdmissible
from rapoly.polyhedron import CombinatorialPolyhedron, build


def _rotate_to(face: list[int], u: int, v: int) -> list[int]:
    n = len(face)
    for i in range(n):
        if face[i] == u and face[(i + 1) % n] == v:
            return face[i:] + face[:i]
    raise KeyError((u, v))


def merge_across_edge(faces: list[list[int]], u: int, v: int) -> tuple[int, int]:
    """Delete edge ``u-v`` in place, merging its two faces.

    The face holding ``u->v`` keeps its slot and absorbs the face holding
    ``v->u``, which becomes ``None``.  Returns ``(kept, removed)`` slots.
    """
    a = b = None
    for i, f in enumerate(faces):
        if f is None:
            continue
        n = len(f)
        for j in range(n):
            x, y = f[j], f[(j + 1) % n]
            if (x, y) == (u, v):
                a = i
            elif (x, y) == (v, u):
                b = i
    if a is None or b is None or a == b:
        raise InternalConsistencyError(f"cannot merge across edge {u}-{v}")
    fa = _rotate_to(faces[a], u, v)
    fb = _rotate_to(faces[b], v, u)
    faces[a] = [v] + fa[2:] + [u] + fb[2:]
    faces[b] = None
    return a, b


def suppress_vertex(faces: list[list[int]], w: int) -> None:
    """Remove a degree-2 vertex, fusing its two edges."""
    hits = 0
    for f in faces:
        if f is not None and w in f:
            f.remove(w)
            hits += 1
    if hits != 2:
        raise InternalConsistencyError(f"vertex {w} is not of degree 2 (in {hits} faces)")


def compact_faces(faces: list[list[int]]) -> list[list[int]]:
    """Renumber vertices 0..v-1 preserving their relative order."""
    verts = sorted({v for f in faces for v in f})
    index = {v: i for i, v in enumerate(verts)}
    return [[index[v] for v in f] for f in faces]


def third_neighbor(p: CombinatorialPolyhedron, v: int, exclude: set[int]) -> int:
    rest = [w for w in p.rotation[v] if w not in exclude]
    if len(rest) != 1:
        raise InternalConsistencyError(f"vertex {v} has no unique neighbour off the glued face")
    return rest[0]


@dataclass(frozen=True)
class Composition:
    """A composition with its provenance.

    ``face_origin[i]`` lists ``(side, face id)`` for every input face that
    went into result face ``i``; ``side`` is 1 or 2.  ``glued_pairs`` lists,
    for each edge of the glued ``k``-gon in order, the faces of P1 and P2
    that merged across it.
    """

    polyhedron: CombinatorialPolyhedron
    circuit: PrismaticCircuit
    face_origin: tuple[tuple[tuple[int, int], ...], ...]
    glued_pairs: tuple[tuple[int, int], ...]


def face_correspondence(p1, f1, p2, f2, offset, flip):
    """Vertex matching of the two glued faces.

    Faces are read from their lowest-id edge ``(a_0, a_1)`` and
    ``(b_0, b_1)``.  Without ``flip``, ``a_j`` meets ``b_{offset+1-j}`` so that
    offset 0 glues the two lowest edges together; with ``flip`` the second
    polyhedron is mirrored and ``a_j`` meets ``b_{offset+j}``.
    """
    a = p1.face_starting_at_lowest_edge(f1)
    b = p2.face_starting_at_lowest_edge(f2)
    k = len(a)
    if flip:
        return a, [b[(offset + j) % k] for j in range(k)]
    return a, [b[(offset + 1 - j) % k] for j in range(k)]


def composition(
    p1: CombinatorialPolyhedron,
    f1: int,
    p2: CombinatorialPolyhedron,
    f2: int,
    offset: int = 0,
    flip: bool = False,
    *,
    check: bool = True,
) -> Composition:
    f1 = p1.check_face(f1)
    f2 = p2.check_face(f2)
    k = p1.face_size(f1)
    if p2.face_size(f2) != k:
        raise FaceSizeMismatch(
            f"face {f1} has {k} edges but face {f2} has {p2.face_size(f2)}", cell=(f1, f2)
        )
    if not 0 <= offset < k:
        raise InputError(f"offset must lie in [0, {k}), got {offset}")
    if check:
        for label, p in (("first", p1), ("second", p2)):
            verdict = admissible(p)
            if not verdict:
                raise NotAdmissible(f"{label} polyhedron is not admissible: {verdict.describe(p)}", verdict)

    a, matched = face_correspondence(p1, f1, p2, f2, offset, flip)
    shift = max(p1.vertices) + 1
    rename = {w: w + shift for w in p2.vertices}
    for aj, bj in zip(a, matched):
        rename[bj] = aj

    faces: list[list[int] | None] = []
    origin: list[list[tuple[int, int]]] = []
    for fid, face in enumerate(p1.faces):
        if fid != f1:
            faces.append(list(face))
            origin.append([(1, fid)])
    for fid, face in enumerate(p2.faces):
        if fid != f2:
            cyc = [rename[w] for w in face]
            faces.append(cyc[::-1] if flip else cyc)
            origin.append([(2, fid)])

    # the third neighbours give the merged (crossed) edges of the new circuit
    a_set = set(a)
    x = [third_neighbor(p1, aj, a_set) for aj in a]
    b_set = set(matched)
    y = [rename[third_neighbor(p2, bj, b_set)] for bj in matched]

    pairs = []
    for j in range(k):
        u, v = a[j], a[(j + 1) % k]
        # P1's neighbour of the glued face holds v->u and keeps its slot
        kept, removed = merge_across_edge(faces, v, u)
        origin[kept] = origin[kept] + origin[removed]
        origin[removed] = []
        s1 = next(fid for side, fid in origin[kept] if side == 1)
        s2 = next(fid for side, fid in origin[kept] if side == 2)
        pairs.append((s1, s2))
    for aj in a:
        suppress_vertex(faces, aj)

    live = [i for i, f in enumerate(faces) if f is not None]
    raw = [faces[i] for i in live]
    verts = sorted({v for f in raw for v in f})
    index = {v: i for i, v in enumerate(verts)}
    result = build([[index[v] for v in f] for f in raw])
    crossed = [result.edge_id(index[x[j]], index[y[j]]) for j in range(k)]
    circuit = circuit_from_edges(result, crossed)
    if check:
        verdict = admissible(result)
        if not verdict:
            raise InternalConsistencyError(
                f"composition of admissible polyhedra is not admissible: {verdict.describe(result)}"
            )
    return Composition(
        result,
        circuit,
        tuple(tuple(sorted(origin[i])) for i in live),
        tuple(pairs),
    )


def compose(p1, f1, p2, f2, offset=0, flip=False):
    """Glue ``p1`` and ``p2`` along faces ``f1``, ``f2``.

    Returns the composition and its distinguished prismatic circuit (the
    ``k`` merged edges that crossed the glued face).
    """
    c = composition(p1, f1, p2, f2, offset, flip)
    return c.polyhedron, c.circuit


def double(p: CombinatorialPolyhedron, face: int) -> CombinatorialPolyhedron:
    """Double of ``p`` across ``face``: ``p`` glued to its mirror image."""
    p.check_face(face)
    return composition(p, face, p, face, 0, True).polyhedron
