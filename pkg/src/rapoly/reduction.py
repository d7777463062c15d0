"""Edge classification, edge surgery, decomposition and the reduction driver.

A reduction repeatedly decomposes along flat-free prismatic 5-circuits or
performs surgery on very good edges until every component is a Lobell
polyhedron.  The sum of the terminal Lobell volumes is a lower bound for the
hyperbolic volume of the input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from rapoly.circuits import (
    PrismaticCircuit,
    Verdict,
    admissible,
    circuit_from_edges,
    is_prismatic,
    prismatic_circuits,
    side_profile,
)
from rapoly.config import verify_enabled
from rapoly.errors import (
    CircuitTooShort,
    DecompositionInvalid,
    HasFlat,
    IncompleteTrace,
    InputError,
    InternalConsistencyError,
    NotAdmissible,
    NotTrivalent,
    NotVeryGood,
    RapError,
    TheoremViolation,
)
from rapoly.gluing import merge_across_edge, suppress_vertex
from rapoly.lobell import recognize_lobell
from rapoly.polyhedron import CombinatorialPolyhedron, build, from_document, to_document
from rapoly.volumes import Volume, lobell_volume

TRACE_FORMAT = "rap-trace/1"
POLICIES = ("decompose-first", "surgery-first")
# fallback decompositions stop at 9-circuits: splitting along a k-circuit
# changes sum(f_i - 12) by k - 10, so longer circuits would not shrink it
FALLBACK_MAX_K = 9


def _require_admissible(p: CombinatorialPolyhedron) -> Verdict:
    verdict = admissible(p)
    if not verdict:
        raise NotAdmissible(f"polyhedron is not admissible: {verdict.describe(p)}", verdict)
    return verdict


# ---------------------------------------------------------------------------
# edge classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeInfo:
    edge: int
    endpoints: tuple[int, int]
    containing_faces: tuple[int, int]
    connected_faces: tuple[int, int]
    status: str  # "plain" | "good" | "very_good"


@dataclass(frozen=True)
class EdgeClassification:
    edges: tuple[EdgeInfo, ...]

    def with_status(self, *statuses: str) -> list[int]:
        return [info.edge for info in self.edges if info.status in statuses]

    @property
    def good(self) -> list[int]:
        """Good edges, very good ones included."""
        return self.with_status("good", "very_good")

    @property
    def very_good(self) -> list[int]:
        return self.with_status("very_good")

    def __getitem__(self, eid: int) -> EdgeInfo:
        return self.edges[eid]


def edge_connection(p: CombinatorialPolyhedron, eid: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """``(containing faces, connected faces)`` of an edge of a trivalent polyhedron.

    The connected faces are the third faces at the two endpoints.
    """
    p.check_edge(eid)
    u, v = p.edges[eid]
    for w in (u, v):
        if p.vertex_degree[w] != 3:
            raise NotTrivalent(f"vertex {w} has degree {p.vertex_degree[w]}", vertex=w)
    containing = p.edge_faces[eid]
    cu = [f for f in p.vertex_faces[u] if f not in containing]
    cv = [f for f in p.vertex_faces[v] if f not in containing]
    return containing, (cu[0], cv[0])


def classify_edges(p: CombinatorialPolyhedron) -> EdgeClassification:
    _require_admissible(p)
    on_5_circuit = {e for c in prismatic_circuits(p, 5) for e in c.crossed_edges}
    infos = []
    for eid, (u, v) in enumerate(p.edges):
        containing, connected = edge_connection(p, eid)
        large = all(p.face_size(f) >= 6 for f in connected)
        if not large:
            status = "plain"
        elif eid in on_5_circuit:
            status = "good"
        else:
            status = "very_good"
        infos.append(EdgeInfo(eid, (u, v), containing, connected, status))
    return EdgeClassification(tuple(infos))


# ---------------------------------------------------------------------------
# edge surgery
# ---------------------------------------------------------------------------


def _surgery_faces(p: CombinatorialPolyhedron, eid: int) -> list[list[int]]:
    u, v = p.edges[eid]
    faces: list[list[int] | None] = [list(f) for f in p.faces]
    merge_across_edge(faces, u, v)
    suppress_vertex(faces, u)
    suppress_vertex(faces, v)
    live = [f for f in faces if f is not None]
    verts = sorted({x for f in live for x in f})
    index = {x: i for i, x in enumerate(verts)}
    return [[index[x] for x in f] for f in live]


def edge_surgery(p: CombinatorialPolyhedron, eid: int, *, force: bool = False) -> CombinatorialPolyhedron:
    """Delete edge ``eid`` and demote its endpoints.

    Requires a very good edge unless ``force``; a forced surgery may produce
    an inadmissible (or even invalid) complex.  Vertices of the result are
    renumbered 0..v-1 preserving order.
    """
    p.check_edge(eid)
    info = classify_edges(p)[eid]
    if info.status != "very_good" and not force:
        raise NotVeryGood(f"edge {eid} {info.endpoints} is {info.status}, not very good")
    try:
        result = build(_surgery_faces(p, eid))
    except InputError as exc:
        raise RapError(f"surgery on edge {eid} does not give a polyhedron: {exc}") from None
    if info.status == "very_good":
        verdict = admissible(result)
        if not verdict:
            raise InternalConsistencyError(
                f"surgery on very good edge {eid} broke admissibility: {verdict.describe(result)}"
            )
    return result


def surgery_report(p: CombinatorialPolyhedron, eid: int) -> tuple[CombinatorialPolyhedron, Verdict]:
    """Forced surgery plus the admissibility verdict of its result."""
    result = edge_surgery(p, eid, force=True)
    return result, admissible(result)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def _check_circuit(p: CombinatorialPolyhedron, c: PrismaticCircuit) -> None:
    k = c.k
    for e in c.crossed_edges:
        p.check_edge(e)
    if len(set(c.faces)) != k or not is_prismatic(p, c.crossed_edges):
        raise InputError(f"{c.ident} is not a prismatic circuit")
    for i, f in enumerate(c.faces):
        fe = p.face_edges[f]
        if c.crossed_edges[i] not in fe or c.crossed_edges[(i + 1) % k] not in fe:
            raise InputError(f"face {f} does not hold crossed edges of circuit {c.ident}")


def split_faces(p: CombinatorialPolyhedron, c: PrismaticCircuit) -> tuple[list[list[int]], list[list[int]]]:
    """Face lists of the two capped halves (side 1, side 2) before relabelling."""
    k = c.k
    base = max(p.vertices) + 1
    cut = [base + i for i in range(k)]
    crossed = set(c.crossed_edges)
    halves: tuple[list[list[int]], list[list[int]]] = ([], [])
    seeds = []
    for i, f in enumerate(c.faces):
        face = p.faces[f]
        m = len(face)
        fe = p.face_edges[f]
        a = fe.index(c.crossed_edges[i])
        b = fe.index(c.crossed_edges[(i + 1) % k])
        right = [face[(a + 1 + j) % m] for j in range((b - a) % m)]
        left = [face[(b + 1 + j) % m] for j in range((a - b) % m)]
        halves[0].append([cut[i]] + right + [cut[(i + 1) % k]])
        halves[1].append([cut[(i + 1) % k]] + left + [cut[i]])
        seeds.append(right[0])
    halves[0].append(list(cut))
    halves[1].append(list(reversed(cut)))

    # vertices reachable from side 1 without crossing the circuit
    adj: dict[int, list[int]] = {}
    for eid, (u, v) in enumerate(p.edges):
        if eid not in crossed:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
    side1 = set(seeds)
    stack = list(seeds)
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in side1:
                side1.add(y)
                stack.append(y)
    circuit_faces = set(c.faces)
    for fid, face in enumerate(p.faces):
        if fid in circuit_faces:
            continue
        inside = [v in side1 for v in face]
        if all(inside):
            halves[0].append(list(face))
        elif not any(inside):
            halves[1].append(list(face))
        else:
            raise InternalConsistencyError(f"face {fid} straddles circuit {c.ident}")
    return halves


def decompose(p: CombinatorialPolyhedron, c: PrismaticCircuit) -> tuple[CombinatorialPolyhedron, CombinatorialPolyhedron]:
    """Split ``p`` along a flat-free prismatic circuit and cap both halves.

    The first half lies on side 1 of ``c`` (see :class:`SideProfile`).  Each
    half is renumbered 0..v-1; its cap is the last face.
    """
    if c.k < 5:
        raise CircuitTooShort(f"decomposition needs k >= 5, circuit {c.ident} has k = {c.k}")
    _check_circuit(p, c)
    profile = side_profile(p, c)
    if profile.has_flat:
        raise HasFlat(f"circuit {c.ident} has flats on side 1 at {profile.flats(1)} and side 2 at {profile.flats(2)}")
    out = []
    for faces in split_faces(p, c):
        verts = sorted({v for f in faces for v in f})
        index = {v: i for i, v in enumerate(verts)}
        out.append(build([[index[v] for v in f] for f in faces]))
    for half in out:
        verdict = admissible(half)
        if not verdict:
            if c.k == 5:
                raise InternalConsistencyError(
                    f"flat-free 5-circuit {c.ident} gave an inadmissible half: {verdict.describe(half)}"
                )
            raise DecompositionInvalid(f"half along {c.ident} is not admissible: {verdict.describe(half)}")
    return out[0], out[1]


# ---------------------------------------------------------------------------
# moves and reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    kind: str  # "terminal" | "decompose" | "surgery" | "violation"
    lobell: int | None = None
    circuit: PrismaticCircuit | None = None
    edge: int | None = None

    def describe(self, p: CombinatorialPolyhedron) -> str:
        if self.kind == "terminal":
            return f"terminal: L({self.lobell})"
        if self.kind == "decompose":
            return f"decompose along {self.circuit.k}-circuit {self.circuit.ident}"
        if self.kind == "surgery":
            return f"surgery on very good edge {self.edge} {p.edges[self.edge]}"
        return "no move: theorem violation"


def _decomposition_move(p: CombinatorialPolyhedron) -> Move | None:
    for c in prismatic_circuits(p, 5):
        if not side_profile(p, c).has_flat:
            return Move("decompose", circuit=c)
    return None


def _surgery_move(p: CombinatorialPolyhedron) -> Move | None:
    vg = classify_edges(p).very_good
    return Move("surgery", edge=vg[0]) if vg else None


def _fallback_move(p: CombinatorialPolyhedron) -> Move | None:
    for k in range(6, min(FALLBACK_MAX_K, p.num_faces) + 1):
        for c in prismatic_circuits(p, k):
            if side_profile(p, c).has_flat:
                continue
            try:
                decompose(p, c)
            except DecompositionInvalid:
                continue
            return Move("decompose", circuit=c)
    return None


def find_move(p: CombinatorialPolyhedron, policy: str = "decompose-first") -> Move:
    if policy not in POLICIES:
        raise InputError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    _require_admissible(p)
    n = recognize_lobell(p)
    if n is not None:
        return Move("terminal", lobell=n)
    order = (_decomposition_move, _surgery_move)
    if policy == "surgery-first":
        order = order[::-1]
    for finder in order + (_fallback_move,):
        move = finder(p)
        if move is not None:
            return move
    return Move("violation")


def apply_move(p: CombinatorialPolyhedron, move: Move) -> tuple[CombinatorialPolyhedron, ...]:
    if move.kind == "decompose":
        return decompose(p, move.circuit)
    if move.kind == "surgery":
        return (edge_surgery(p, move.edge),)
    raise InputError(f"cannot apply a {move.kind} move")


def measure(components: Sequence[CombinatorialPolyhedron]) -> int:
    """Termination measure: sum of (faces - 12) over components."""
    return sum(q.num_faces - 12 for q in components)


@dataclass(frozen=True)
class Step:
    component: int
    move: str
    input_hash: str
    children: tuple[int, ...]
    output_hashes: tuple[str, ...]
    edge: int | None = None
    edge_endpoints: tuple[int, int] | None = None
    circuit: PrismaticCircuit | None = None
    measure_before: int = 0
    measure_after: int = 0

    def to_json(self) -> dict:
        out: dict = {"component": self.component, "move": self.move}
        if self.move == "surgery":
            out["edge"] = self.edge
            out["endpoints"] = list(self.edge_endpoints)
        else:
            out["circuit"] = self.circuit.ident
            out["crossed_edges"] = list(self.circuit.crossed_edges)
        out["children"] = list(self.children)
        out["input_hash"] = self.input_hash
        out["output_hashes"] = list(self.output_hashes)
        out["measure"] = [self.measure_before, self.measure_after]
        return out


@dataclass(frozen=True)
class ReductionTrace:
    source: CombinatorialPolyhedron
    policy: str
    steps: tuple[Step, ...]
    terminal: tuple[int, ...]
    bound: Volume
    components: tuple[CombinatorialPolyhedron, ...] = field(repr=False, default=())

    @property
    def chain(self) -> str:
        """'strict' when some surgery step makes the volume chain strictly decreasing."""
        return "strict" if any(s.move == "surgery" for s in self.steps) else "non-strict"

    def to_json(self) -> dict:
        return trace_document(self)


def reduce(p: CombinatorialPolyhedron, policy: str = "decompose-first") -> ReductionTrace:
    """Reduce ``p`` to Lobell polyhedra, recording every move."""
    if policy not in POLICIES:
        raise InputError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    _require_admissible(p)
    verify = verify_enabled()
    comps = [p]
    active = {0}
    queue = deque([0])
    steps = []
    terminal = []
    while queue:
        i = queue.popleft()
        q = comps[i]
        move = find_move(q, policy)
        if move.kind == "terminal":
            terminal.append(move.lobell)
            continue
        if move.kind == "violation":
            raise TheoremViolation(
                f"component {i} ({q.num_faces} faces) is admissible, not Lobell, "
                "and has neither a very good edge nor a valid decomposition"
            )
        before = measure([comps[j] for j in active])
        children = apply_move(q, move)
        ids = []
        for child in children:
            if verify:
                _require_admissible(child)
            comps.append(child)
            ids.append(len(comps) - 1)
        active.discard(i)
        active.update(ids)
        after = measure([comps[j] for j in active])
        if after >= before:
            raise InternalConsistencyError(f"measure did not decrease at component {i}: {before} -> {after}")
        steps.append(
            Step(
                component=i,
                move=move.kind,
                input_hash=q.canonical.digest(),
                children=tuple(ids),
                output_hashes=tuple(c.canonical.digest() for c in children),
                edge=move.edge,
                edge_endpoints=q.edges[move.edge] if move.edge is not None else None,
                circuit=move.circuit,
                measure_before=before,
                measure_after=after,
            )
        )
        queue.extend(ids)
    terminal_sorted = tuple(sorted(terminal))
    return ReductionTrace(p, policy, tuple(steps), terminal_sorted, _sum_volumes(terminal_sorted), tuple(comps))


def _sum_volumes(terminal: Sequence[int]) -> Volume:
    total = Volume(0.0, 0.0)
    for n in terminal:
        total = total + lobell_volume(n)
    return total


def volume_lower_bound(trace) -> Volume:
    """Sum of Lobell volumes over the terminal multiset of a complete trace.

    Accepts a :class:`ReductionTrace` or a parsed trace document.
    """
    if isinstance(trace, ReductionTrace):
        terminal = trace.terminal
    else:
        if not isinstance(trace, dict) or trace.get("format") != TRACE_FORMAT:
            raise InputError(f"not a {TRACE_FORMAT} document")
        if not trace.get("complete", False):
            raise IncompleteTrace("trace is not marked complete")
        terminal = trace.get("terminal")
        if not isinstance(terminal, list) or not all(isinstance(n, int) for n in terminal):
            raise InputError("'terminal' must be a list of integers")
    if not terminal or any(n < 5 for n in terminal):
        raise IncompleteTrace("trace has no valid terminal Lobell multiset")
    return _sum_volumes(terminal)


# ---------------------------------------------------------------------------
# trace documents
# ---------------------------------------------------------------------------


def round12(x: float) -> float:
    return float(f"{x:.12g}")


def trace_document(trace: ReductionTrace) -> dict:
    return {
        "format": TRACE_FORMAT,
        "policy": trace.policy,
        "input": to_document(trace.source),
        "input_hash": trace.source.canonical.digest(),
        "steps": [s.to_json() for s in trace.steps],
        "terminal": list(trace.terminal),
        "complete": True,
        "chain": trace.chain,
        "bound": round12(trace.bound.value),
        "bound_error": float(f"{trace.bound.error_bound:.3g}"),
    }


def replay(doc: dict) -> tuple[int, ...]:
    """Re-run the moves of a trace document and return the terminal multiset.

    Raises :class:`InputError` when a recorded move does not apply or the
    outcome disagrees with the recorded one.
    """
    if not isinstance(doc, dict) or doc.get("format") != TRACE_FORMAT:
        raise InputError(f"not a {TRACE_FORMAT} document")
    comps = [from_document(doc["input"])]
    consumed = set()
    for n, step in enumerate(doc.get("steps", [])):
        i = step["component"]
        if i >= len(comps) or i in consumed:
            raise InputError(f"step {n} refers to unavailable component {i}")
        q = comps[i]
        if step["move"] == "surgery":
            children = (edge_surgery(q, step["edge"]),)
        elif step["move"] == "decompose":
            c = circuit_from_edges(q, step["crossed_edges"])
            children = decompose(q, c)
        else:
            raise InputError(f"step {n} has unknown move {step['move']!r}")
        if list(step["children"]) != list(range(len(comps), len(comps) + len(children))):
            raise InputError(f"step {n} children do not match replay order")
        consumed.add(i)
        comps.extend(children)
    terminal = []
    for i, q in enumerate(comps):
        if i in consumed:
            continue
        n = recognize_lobell(q)
        if n is None:
            raise InputError(f"component {i} is not a Lobell polyhedron after replay")
        terminal.append(n)
    result = tuple(sorted(terminal))
    if list(result) != list(doc.get("terminal", [])):
        raise InputError(f"replayed terminal {list(result)} differs from recorded {doc.get('terminal')}")
    return result
