"""Prismatic circuits, side profiles and right-angled admissibility."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from rapoly import kernels
from rapoly.errors import InputError, InternalConsistencyError
from rapoly.polyhedron import CombinatorialPolyhedron, counts


@dataclass(frozen=True)
class PrismaticCircuit:
    """Cyclic face sequence ``F_0..F_{k-1}`` with ``crossed_edges[i]`` shared
    by ``F_{i-1}`` and ``F_i``.

    Stored normalised: ``F_0`` is the smallest face id and
    ``crossed_edges[1] < crossed_edges[0]``.
    """

    faces: tuple[int, ...]
    crossed_edges: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.faces)

    @property
    def key(self) -> tuple[int, ...]:
        """Rotation/reflection-independent identity: sorted crossed edge ids."""
        return tuple(sorted(self.crossed_edges))

    @property
    def ident(self) -> str:
        return ",".join(map(str, self.key))

    def endpoint_pairs(self, p: CombinatorialPolyhedron) -> list[tuple[int, int]]:
        return [p.edges[e] for e in self.crossed_edges]

    def to_json(self, p: CombinatorialPolyhedron) -> dict:
        return {
            "id": self.ident,
            "k": self.k,
            "faces": list(self.faces),
            "crossed_edges": list(self.crossed_edges),
            "endpoints": [list(pair) for pair in self.endpoint_pairs(p)],
        }


def _normalize(faces: Sequence[int], edges: Sequence[int]) -> PrismaticCircuit:
    k = len(faces)
    r = list(faces).index(min(faces))
    f = list(faces[r:]) + list(faces[:r])
    e = list(edges[r:]) + list(edges[:r])
    if e[1] > e[0]:
        # walk the other way round: F'_i = F_{-i}, e'_i = e_{1-i}
        f = [f[-i % k] for i in range(k)]
        e = [e[(1 - i) % k] for i in range(k)]
    return PrismaticCircuit(tuple(f), tuple(e))


def is_prismatic(p: CombinatorialPolyhedron, edges: Sequence[int]) -> bool:
    ends = [v for e in edges for v in p.edges[e]]
    return len(set(ends)) == len(ends)


def circuit_from_edges(p: CombinatorialPolyhedron, edges: Sequence[int]) -> PrismaticCircuit:
    """Circuit through the given cyclically ordered crossed edges."""
    k = len(edges)
    if k < 3:
        raise InputError("a circuit crosses at least 3 edges")
    faces = []
    for i in range(k):
        shared = set(p.edge_faces[edges[i]]) & set(p.edge_faces[edges[(i + 1) % k]])
        if len(shared) != 1:
            raise InputError(f"edges {edges[i]} and {edges[(i + 1) % k]} do not share exactly one face")
        faces.append(shared.pop())
    if len(set(faces)) != k:
        raise InputError("circuit visits a face twice")
    if not is_prismatic(p, edges):
        raise InputError("crossed edges share an endpoint; circuit is not prismatic")
    return _normalize(faces, list(edges))


def parse_circuit_id(p: CombinatorialPolyhedron, ident: str) -> PrismaticCircuit:
    """Find the prismatic circuit whose sorted crossed-edge ids are ``ident``."""
    try:
        key = tuple(sorted(int(x) for x in ident.split(",")))
    except ValueError:
        raise InputError(f"circuit id must be comma-separated edge ids, got {ident!r}") from None
    for c in prismatic_circuits(p, len(key)):
        if c.key == key:
            return c
    raise InputError(f"no prismatic circuit with crossed edges {ident}")


def prismatic_circuits(p: CombinatorialPolyhedron, k: int) -> list[PrismaticCircuit]:
    """All prismatic ``k``-circuits, ordered by sorted crossed-edge ids."""
    if k < 3:
        raise InputError(f"k must be at least 3, got {k}")
    if k > p.num_faces:
        return []
    return list(_circuits_cached(p, k))


@lru_cache(maxsize=512)
def _circuits_cached(p: CombinatorialPolyhedron, k: int) -> tuple[PrismaticCircuit, ...]:
    ptr, nbr_face, nbr_edge, eu, ev = p.dual_csr
    capacity = 256
    while True:
        count, out_e, out_f = kernels.prismatic_cycles(
            ptr, nbr_face, nbr_edge, eu, ev, len(p.vertices), k, capacity
        )
        if count >= 0:
            break
        capacity *= 4
    found = [
        PrismaticCircuit(tuple(int(x) for x in out_f[r]), tuple(int(x) for x in out_e[r]))
        for r in range(count)
    ]
    found.sort(key=lambda c: c.key)
    return tuple(found)


# ---------------------------------------------------------------------------
# side profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SideProfile:
    """Arc lengths on both sides of a circuit inside each crossed face.

    ``arcs[i] = (side1, side2)`` for face ``F_i``.  Side 1 is the arc running
    counterclockwise from ``e_i`` to ``e_{i+1}``, i.e. the right-hand side when
    walking the circuit in its stored direction; the labelling is consistent
    all the way round.
    """

    circuit: PrismaticCircuit
    arcs: tuple[tuple[int, int], ...]

    def flats(self, side: int) -> list[int]:
        return [i for i, a in enumerate(self.arcs) if a[side - 1] == 1]

    def roofs(self, side: int) -> list[int]:
        return [i for i, a in enumerate(self.arcs) if a[side - 1] == 2]

    @property
    def has_flat(self) -> bool:
        return any(1 in a for a in self.arcs)

    def to_json(self) -> dict:
        return {
            "circuit": self.circuit.ident,
            "faces": list(self.circuit.faces),
            "arcs": [list(a) for a in self.arcs],
            "flats": {"side1": self.flats(1), "side2": self.flats(2)},
            "roofs": {"side1": self.roofs(1), "side2": self.roofs(2)},
        }


def side_profile(p: CombinatorialPolyhedron, c: PrismaticCircuit) -> SideProfile:
    arcs = []
    k = c.k
    for i, f in enumerate(c.faces):
        fe = p.face_edges[f]
        m = len(fe)
        a = fe.index(c.crossed_edges[i])
        b = fe.index(c.crossed_edges[(i + 1) % k])
        right = (b - a - 1) % m
        arcs.append((right, m - 2 - right))
    return SideProfile(c, tuple(arcs))


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`admissible`; ``witness`` explains a negative answer."""

    ok: bool
    reason: str = "admissible"
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, p: CombinatorialPolyhedron) -> str:
        if self.ok:
            return "admissible: trivalent, no prismatic 3- or 4-circuits"
        if self.reason == "not-trivalent":
            return f"not trivalent: vertex {self.witness} has degree {p.vertex_degree[self.witness]}"
        if self.reason == "excluded-type":
            return f"excluded type: {self.witness}"
        c: PrismaticCircuit = self.witness
        pairs = " ".join(f"{u}-{v}" for u, v in c.endpoint_pairs(p))
        return f"{self.reason}: faces {list(c.faces)} crossing edges {pairs}"

    def to_json(self, p: CombinatorialPolyhedron) -> dict:
        out: dict = {"admissible": self.ok, "reason": self.reason}
        if isinstance(self.witness, PrismaticCircuit):
            out["witness"] = self.witness.to_json(p)
        elif self.witness is not None:
            out["witness"] = self.witness
        return out


def _excluded_type(p: CombinatorialPolyhedron) -> str | None:
    _, _, f, hist = counts(p)
    if f == 4 and hist == {3: 4}:
        return "tetrahedron"
    if f == 5 and hist == {3: 2, 4: 3}:
        return "triangular prism"
    return None


def admissible(p: CombinatorialPolyhedron) -> Verdict:
    """Decide whether ``p`` is realisable as a right-angled hyperbolic polyhedron."""
    return _admissible_cached(p)


@lru_cache(maxsize=1024)
def _admissible_cached(p: CombinatorialPolyhedron) -> Verdict:
    for v in p.vertices:
        if p.vertex_degree[v] != 3:
            return Verdict(False, "not-trivalent", v)
    for k in (3, 4):
        found = prismatic_circuits(p, k)
        if found:
            return Verdict(False, f"prismatic-{k}-circuit", found[0])
    kind = _excluded_type(p)
    if kind is not None:
        return Verdict(False, "excluded-type", kind)
    _, _, _, hist = counts(p)
    if min(hist) < 5 or hist.get(5, 0) < 12:
        raise InternalConsistencyError(
            f"admissible verdict but face sizes {hist} violate the 12-pentagon bound"
        )
    return Verdict(True)
