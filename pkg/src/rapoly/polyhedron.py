"""Combinatorial polyhedra: validated face lists on the 2-sphere.

A polyhedron is stored as an ordered tuple of faces, each face a cyclic tuple
of vertex ids listed counterclockwise as seen from outside.  Everything else
(edges, incidences, rotations) is derived lazily and cached.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from rapoly import kernels
from rapoly.errors import (
    DisconnectedSkeleton,
    EdgeNotSharedByTwoFaces,
    EulerViolation,
    InputError,
    InternalConsistencyError,
    MalformedFace,
    NoSuchEdge,
    NoSuchFace,
    NonManifoldVertex,
    NotTrivalent,
    OrientationMismatch,
)

FORMAT_TAG = "rap-polyhedron/1"

Edge = tuple[int, int]


@dataclass(frozen=True)
class CanonicalCode:
    """Complete isomorphism invariant (mirror images compare equal)."""

    code: tuple[int, ...]

    def digest(self) -> str:
        raw = ",".join(map(str, self.code)).encode()
        return hashlib.sha256(raw).hexdigest()[:16]

    def __lt__(self, other: "CanonicalCode") -> bool:
        return self.code < other.code


@dataclass(frozen=True)
class CombinatorialPolyhedron:
    faces: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        faces = tuple(tuple(int(v) for v in f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        _validate(faces)

    def __repr__(self):
        v, e, f, _ = counts(self)
        label = f" {self.name!r}" if self.name else ""
        return f"<CombinatorialPolyhedron{label} v={v} e={e} f={f}>"

    # -- derived structure -------------------------------------------------

    @cached_property
    def dart_face(self) -> dict[Edge, int]:
        """Face id containing each directed edge ``(u, v)``."""
        out = {}
        for fid, face in enumerate(self.faces):
            n = len(face)
            for i in range(n):
                out[face[i], face[(i + 1) % n]] = fid
        return out

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.faces for v in f}))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """Undirected edges as ``(min, max)`` pairs; the index is the edge id."""
        return tuple(sorted({(u, v) for (u, v) in self.dart_face if u < v}))

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_faces(self) -> tuple[tuple[int, int], ...]:
        """For edge ``(u, v)``: (face traversing u->v, face traversing v->u)."""
        df = self.dart_face
        return tuple((df[u, v], df[v, u]) for (u, v) in self.edges)

    @cached_property
    def face_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids of each face; entry ``j`` is the edge ``(f[j], f[j+1])``."""
        idx = self.edge_index
        out = []
        for face in self.faces:
            n = len(face)
            out.append(tuple(idx[_key(face[i], face[(i + 1) % n])] for i in range(n)))
        return tuple(out)

    @cached_property
    def rotation(self) -> dict[int, tuple[int, ...]]:
        """Neighbours of each vertex in cyclic order around it."""
        succ: dict[int, dict[int, int]] = {}
        for face in self.faces:
            n = len(face)
            for i in range(n):
                u, v, w = face[i - 1], face[i], face[(i + 1) % n]
                succ.setdefault(v, {})[u] = w
        out = {}
        for v, nxt in succ.items():
            start = min(nxt)
            cyc = [start]
            x = nxt[start]
            while x != start:
                cyc.append(x)
                x = nxt[x]
            out[v] = tuple(cyc)
        return out

    @cached_property
    def vertex_degree(self) -> dict[int, int]:
        return {v: len(r) for v, r in self.rotation.items()}

    @cached_property
    def vertex_faces(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for fid, face in enumerate(self.faces):
            for v in face:
                out.setdefault(v, []).append(fid)
        return {v: tuple(fs) for v, fs in out.items()}

    @cached_property
    def face_neighbors(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in self.faces]
        for a, b in self.edge_faces:
            out[a].add(b)
            out[b].add(a)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def is_trivalent(self) -> bool:
        return all(d == 3 for d in self.vertex_degree.values())

    @cached_property
    def dual_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Face adjacency in CSR form plus compact edge endpoints.

        Returns ``(ptr, nbr_face, nbr_edge, edge_u, edge_v)``; the dual
        neighbours of face ``f`` sit in ``ptr[f]:ptr[f+1]``.
        """
        index = {v: i for i, v in enumerate(self.vertices)}
        rows = []
        for fid, fe in enumerate(self.face_edges):
            row = []
            for e in fe:
                a, b = self.edge_faces[e]
                row.append((b if a == fid else a, e))
            rows.append(sorted(row))
        ptr = np.zeros(len(rows) + 1, dtype=np.int64)
        ptr[1:] = np.cumsum([len(r) for r in rows])
        nbr_face = np.array([g for r in rows for g, _ in r], dtype=np.int64)
        nbr_edge = np.array([e for r in rows for _, e in r], dtype=np.int64)
        edge_u = np.array([index[u] for u, _ in self.edges], dtype=np.int64)
        edge_v = np.array([index[v] for _, v in self.edges], dtype=np.int64)
        return ptr, nbr_face, nbr_edge, edge_u, edge_v

    @cached_property
    def canonical(self) -> CanonicalCode:
        return _canonical_code(self)

    # -- small accessors ---------------------------------------------------

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def face_size(self, fid: int) -> int:
        return len(self.faces[fid])

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self.edge_index[_key(u, v)]
        except KeyError:
            raise NoSuchEdge(f"no edge between vertices {u} and {v}", cell=(u, v)) from None

    def check_face(self, fid: int) -> int:
        if not isinstance(fid, (int, np.integer)) or not 0 <= fid < len(self.faces):
            raise NoSuchFace(f"no face with id {fid}", cell=fid)
        return int(fid)

    def check_edge(self, eid: int) -> int:
        if not isinstance(eid, (int, np.integer)) or not 0 <= eid < len(self.edges):
            raise NoSuchEdge(f"no edge with id {eid}", cell=eid)
        return int(eid)

    def shared_edges(self, fa: int, fb: int) -> list[int]:
        eb = set(self.face_edges[fb])
        return [e for e in self.face_edges[fa] if e in eb]

    def face_starting_at_lowest_edge(self, fid: int) -> tuple[int, ...]:
        """Face cycle rotated so its first edge has the lowest edge id."""
        face = self.faces[fid]
        fe = self.face_edges[fid]
        j = fe.index(min(fe))
        return face[j:] + face[:j]

    def with_name(self, name: str | None) -> "CombinatorialPolyhedron":
        out = CombinatorialPolyhedron.__new__(CombinatorialPolyhedron)
        object.__setattr__(out, "faces", self.faces)
        object.__setattr__(out, "name", name)
        return out


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _validate(faces: tuple[tuple[int, ...], ...]) -> None:
    if len(faces) < 4:
        raise InputError(f"a polyhedron needs at least 4 faces, got {len(faces)}")
    for fid, face in enumerate(faces):
        if len(face) < 3:
            raise MalformedFace(f"face {fid} has {len(face)} < 3 edges", cell=fid)
        if any(v < 0 for v in face):
            raise MalformedFace(f"face {fid} has a negative vertex id", cell=fid)
        if len(set(face)) != len(face):
            raise MalformedFace(f"face {fid} repeats a vertex", cell=fid)

    uses: dict[Edge, list[tuple[int, int, int]]] = {}
    for fid, face in enumerate(faces):
        n = len(face)
        for i in range(n):
            u, v = face[i], face[(i + 1) % n]
            uses.setdefault(_key(u, v), []).append((fid, u, v))
    for e, occ in sorted(uses.items()):
        if len(occ) != 2:
            fids = [o[0] for o in occ]
            raise EdgeNotSharedByTwoFaces(
                f"edge {e} lies in {len(occ)} face(s) {fids}, expected 2", cell=e
            )
        (f1, u1, v1), (f2, u2, v2) = occ
        if (u1, v1) == (u2, v2):
            raise OrientationMismatch(
                f"faces {f1} and {f2} both traverse edge {e} as {u1}->{v1}", cell=e
            )

    succ: dict[int, dict[int, int]] = {}
    for face in faces:
        n = len(face)
        for i in range(n):
            succ.setdefault(face[i], {})[face[i - 1]] = face[(i + 1) % n]
    for v, nxt in sorted(succ.items()):
        start = next(iter(nxt))
        x, steps = nxt[start], 1
        while x != start and steps <= len(nxt):
            x = nxt.get(x, start)
            steps += 1
        if steps != len(nxt):
            raise NonManifoldVertex(f"the faces around vertex {v} do not form a single disk", cell=v)

    adj: dict[int, list[int]] = {}
    for u, v in uses:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = min(adj)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(adj):
        stray = min(set(adj) - seen)
        raise DisconnectedSkeleton(f"vertex {stray} is not connected to vertex {start}", cell=stray)

    nv, ne, nf = len(adj), len(uses), len(faces)
    if nv - ne + nf != 2:
        raise EulerViolation(f"v - e + f = {nv} - {ne} + {nf} = {nv - ne + nf}, expected 2")


def build(face_lists: Iterable[Sequence[int]], name: str | None = None) -> CombinatorialPolyhedron:
    """Validate a face list and return the polyhedron."""
    try:
        faces = tuple(tuple(int(v) for v in f) for f in face_lists)
    except (TypeError, ValueError) as exc:
        raise InputError(f"faces must be lists of integers: {exc}") from None
    return CombinatorialPolyhedron(faces, name)


def counts(p: CombinatorialPolyhedron) -> tuple[int, int, int, dict[int, int]]:
    hist = Counter(len(f) for f in p.faces)
    return len(p.vertices), len(p.edges), len(p.faces), dict(sorted(hist.items()))


def pentagon_excess(p: CombinatorialPolyhedron, *, admissible_input: bool = False) -> tuple[int, int]:
    """Number of pentagons and the excess ``c = sum(|F| - 5) = 2e - 5f``.

    For trivalent polyhedra ``f - c == 12`` always; with
    ``admissible_input=True`` the pentagon count is also checked to be >= 12.
    """
    if not p.is_trivalent:
        v = next(v for v, d in sorted(p.vertex_degree.items()) if d != 3)
        raise NotTrivalent(f"vertex {v} has degree {p.vertex_degree[v]}", vertex=v)
    _, e, f, hist = counts(p)
    c = 2 * e - 5 * f
    k = hist.get(5, 0)
    if f - c != 12:
        raise InternalConsistencyError(f"f - c = {f - c} for a trivalent polyhedron")
    if admissible_input and k < 12:
        raise InternalConsistencyError(f"admissible polyhedron with only {k} pentagons")
    return k, c


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------


def rotation_arrays(p: CombinatorialPolyhedron) -> tuple[np.ndarray, np.ndarray]:
    verts = p.vertices
    index = {v: i for i, v in enumerate(verts)}
    deg = np.array([p.vertex_degree[v] for v in verts], dtype=np.int64)
    nbr = np.full((len(verts), int(deg.max())), -1, dtype=np.int64)
    for v in verts:
        for j, w in enumerate(p.rotation[v]):
            nbr[index[v], j] = index[w]
    return nbr, deg


def _canonical_code(p: CombinatorialPolyhedron) -> CanonicalCode:
    nbr, deg = rotation_arrays(p)
    body = kernels.canonical_code(nbr, deg)
    return CanonicalCode((len(p.vertices), len(p.edges)) + tuple(int(x) for x in body))


def face_code(p: CombinatorialPolyhedron, fid: int) -> tuple[int, ...]:
    """Canonical code rooted at face ``fid``.

    Two faces get equal codes exactly when an automorphism (possibly
    orientation-reversing) carries one onto the other.
    """
    nbr, deg = rotation_arrays(p)
    index = {v: i for i, v in enumerate(p.vertices)}
    face = p.faces[p.check_face(fid)]
    n = len(face)
    roots = []
    for i in range(n):
        u, v, w = face[i - 1], face[i], face[(i + 1) % n]
        rot = p.rotation[v]
        roots.append((index[v], rot.index(u), 1))
        roots.append((index[v], rot.index(w), -1))
    body = kernels.rooted_code(nbr, deg, np.array(roots, dtype=np.int64))
    return tuple(int(x) for x in body)


def face_orbits(p: CombinatorialPolyhedron) -> list[list[int]]:
    """Faces grouped into automorphism orbits, ordered by smallest member."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for f in range(p.num_faces):
        groups.setdefault(face_code(p, f), []).append(f)
    return sorted(groups.values())


def canonical_form(p: CombinatorialPolyhedron) -> CanonicalCode:
    return p.canonical


def isomorphic(p: CombinatorialPolyhedron, q: CombinatorialPolyhedron) -> bool:
    """Combinatorial isomorphism, orientation-reversing maps allowed."""
    if counts(p) != counts(q):
        return False
    return p.canonical == q.canonical


# ---------------------------------------------------------------------------
# relabelling helpers
# ---------------------------------------------------------------------------


def relabel(p: CombinatorialPolyhedron, mapping: dict[int, int]) -> CombinatorialPolyhedron:
    return build([[mapping[v] for v in f] for f in p.faces], name=p.name)


def compacted(face_lists: Sequence[Sequence[int]], name: str | None = None) -> CombinatorialPolyhedron:
    """Build after renumbering vertices 0..v-1 in order of first appearance."""
    index: dict[int, int] = {}
    faces = []
    for f in face_lists:
        row = []
        for v in f:
            if v not in index:
                index[v] = len(index)
            row.append(index[v])
        faces.append(row)
    return build(faces, name=name)


def mirror(p: CombinatorialPolyhedron) -> CombinatorialPolyhedron:
    """Same cell structure with the opposite orientation."""
    return build([tuple(reversed(f)) for f in p.faces], name=p.name)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def _normalized_face(face: Sequence[int]) -> list[int]:
    j = face.index(min(face))
    return list(face[j:]) + list(face[:j])


def to_document(p: CombinatorialPolyhedron) -> dict:
    doc: dict = {"format": FORMAT_TAG}
    if p.name is not None:
        doc["name"] = p.name
    doc["faces"] = [_normalized_face(f) for f in p.faces]
    return doc


def from_document(doc: dict) -> CombinatorialPolyhedron:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise InputError(f"not a {FORMAT_TAG} document")
    faces = doc.get("faces")
    if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
        raise InputError("'faces' must be a list of integer lists")
    for f in faces:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise InputError("face entries must be integers")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("'name' must be a string")
    return build(faces, name=name)


def dumps(p: CombinatorialPolyhedron) -> str:
    doc = to_document(p)
    faces = ",\n    ".join(json.dumps(f) for f in doc["faces"])
    head = {k: v for k, v in doc.items() if k != "faces"}
    lines = ["{"] + [f"  {json.dumps(k)}: {json.dumps(v)}," for k, v in head.items()]
    lines.append(f'  "faces": [\n    {faces}\n  ]')
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> CombinatorialPolyhedron:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def load(path: str | Path) -> CombinatorialPolyhedron:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def dump(p: CombinatorialPolyhedron, path: str | Path) -> None:
    Path(path).write_text(dumps(p))
