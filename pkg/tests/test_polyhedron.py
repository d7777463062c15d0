import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import nx_isomorphic
from rapoly.corpus import cube, dodecahedron, prism, tetrahedron
from rapoly.errors import (
    DisconnectedSkeleton,
    EdgeNotSharedByTwoFaces,
    EulerViolation,
    InputError,
    MalformedFace,
    NonManifoldVertex,
    NotTrivalent,
    OrientationMismatch,
)
from rapoly.gluing import double
from rapoly.lobell import build_lobell
from rapoly.polyhedron import (
    build,
    counts,
    dumps,
    face_orbits,
    from_document,
    isomorphic,
    loads,
    mirror,
    pentagon_excess,
    relabel,
    to_document,
)

TET = [[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]]


def torus_faces(n=3):
    idx = lambda i, j: (i % n) * n + (j % n)
    return [[idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)] for i in range(n) for j in range(n)]


def test_classical_solids():
    assert counts(dodecahedron())[:3] == (20, 30, 12)
    assert counts(dodecahedron())[3] == {5: 12}
    assert counts(cube())[:3] == (8, 12, 6)
    assert counts(tetrahedron())[:3] == (4, 6, 4)


def test_lobell_counts():
    assert counts(build_lobell(6)) == (24, 36, 14, {5: 12, 6: 2})
    assert counts(build_lobell(8)) == (32, 48, 18, {5: 16, 8: 2})


def test_edge_ids_are_lexicographic():
    p = cube()
    assert list(p.edges) == sorted(p.edges)
    for eid, (u, v) in enumerate(p.edges):
        assert p.edge_id(v, u) == eid
        f, g = p.edge_faces[eid]
        assert p.dart_face[u, v] == f and p.dart_face[v, u] == g


@pytest.mark.parametrize(
    "faces, error",
    [
        ([[0, 1], [1, 0], [0, 1], [1, 0]], MalformedFace),
        ([[0, 1, 1, 2]] + TET[1:], MalformedFace),
        ([[0, 1, 2], [0, 1, 3], [1, 3, 2], [2, 3, 0]], OrientationMismatch),
        (TET[:3] + [[2, 3, 0], [0, 1, 2]], EdgeNotSharedByTwoFaces),
        (TET + [[a + 3 for a in f] for f in TET], NonManifoldVertex),
        (TET + [[a + 4 for a in f] for f in TET], DisconnectedSkeleton),
        (torus_faces(), EulerViolation),
        ([[0, 1, 2]], InputError),
    ],
)
def test_validation_errors(faces, error):
    with pytest.raises(error):
        build(faces)


def test_errors_name_the_cell():
    with pytest.raises(OrientationMismatch) as info:
        build([[0, 1, 2], [0, 1, 3], [1, 3, 2], [2, 3, 0]])
    assert info.value.cell is not None
    assert "0" in str(info.value) and "1" in str(info.value)


def test_pentagon_excess():
    assert pentagon_excess(dodecahedron()) == (12, 0)
    assert pentagon_excess(build_lobell(6)) == (12, 2)
    assert pentagon_excess(build_lobell(8)) == (16, 6)
    octahedron = build([[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 2, 1], [5, 3, 2], [5, 4, 3], [5, 1, 4]])
    with pytest.raises(NotTrivalent):
        pentagon_excess(octahedron)


def test_trivalent_identities(all_members):
    for p in all_members:
        v, e, f, hist = counts(p)
        assert v - e + f == 2
        if p.is_trivalent:
            assert 2 * e == 3 * v
            k, c = pentagon_excess(p)
            assert f - c == 12


def test_canonical_examples():
    l5 = build_lobell(5)
    perm = list(range(20))
    random.Random(3).shuffle(perm)
    assert relabel(l5, dict(enumerate(perm))).canonical == l5.canonical
    assert build_lobell(6).canonical != build_lobell(7).canonical
    assert double(l5, 0).canonical == double(l5, 7).canonical
    assert mirror(build_lobell(7)).canonical == build_lobell(7).canonical
    assert not isomorphic(cube(), prism(5))


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 9), st.randoms(use_true_random=False))
def test_canonical_invariant_under_relabelling(n, rnd):
    p = build_lobell(n)
    perm = list(p.vertices)
    rnd.shuffle(perm)
    faces = [[perm[v] for v in f] for f in p.faces]
    faces = [f[r:] + f[:r] for f in faces for r in [rnd.randrange(len(f))]]
    rnd.shuffle(faces)
    q = build(faces)
    assert q.canonical == p.canonical
    assert q.canonical.digest() == p.canonical.digest()


def test_canonical_agrees_with_graph_isomorphism(admissible_members):
    members = [p for p in admissible_members if p.num_faces <= 20] + [cube(), prism(5), tetrahedron()]
    for i, p in enumerate(members):
        for q in members[i:]:
            if counts(p) != counts(q):
                continue
            assert (p.canonical == q.canonical) == nx_isomorphic(p, q), (p.name, q.name)


def test_distinguishes_offsets_when_graphs_differ():
    from rapoly.gluing import compose

    p1, p2 = build_lobell(6), build_lobell(7)
    results = [compose(p1, 1, p2, 2, off, flip)[0] for off in range(5) for flip in (False, True)]
    for i, p in enumerate(results):
        for q in results[i + 1 :]:
            assert (p.canonical == q.canonical) == nx_isomorphic(p, q)


def test_face_orbits():
    assert [len(o) for o in face_orbits(build_lobell(5))] == [12]
    assert sorted(len(o) for o in face_orbits(build_lobell(7))) == [2, 14]
    assert [len(o) for o in face_orbits(cube())] == [6]


def test_document_round_trip():
    p = build_lobell(7).with_name("L(7)")
    q = loads(dumps(p))
    assert q.name == "L(7)" and q.edges == p.edges
    assert q.edge_faces == p.edge_faces and q.canonical == p.canonical
    doc = to_document(p)
    assert doc["format"] == "rap-polyhedron/1"
    assert all(f[0] == min(f) for f in doc["faces"])


@pytest.mark.parametrize(
    "doc",
    [
        {"faces": TET},
        {"format": "rap-polyhedron/1"},
        {"format": "rap-polyhedron/1", "faces": [[0, 1, "x"]]},
        {"format": "rap-polyhedron/1", "faces": TET, "name": 3},
        [1, 2],
    ],
)
def test_bad_documents(doc):
    with pytest.raises(InputError):
        from_document(doc)


def test_loads_rejects_bad_json():
    with pytest.raises(InputError):
        loads("{not json")
