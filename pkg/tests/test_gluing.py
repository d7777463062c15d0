import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rapoly.circuits import admissible, side_profile
from rapoly.corpus import cube
from rapoly.errors import FaceSizeMismatch, InputError, NoSuchFace, NotAdmissible
from rapoly.gluing import compose, composition, double
from rapoly.lobell import build_lobell
from rapoly.polyhedron import counts, isomorphic, pentagon_excess


def test_double_dodecahedron():
    p = double(build_lobell(5), 0)
    assert counts(p) == (30, 45, 17, {5: 12, 6: 5})


@pytest.mark.parametrize("n", [5, 6])
def test_double_is_self_composition(n):
    p = build_lobell(n)
    for f in range(p.num_faces):
        d = double(p, f)
        c, _ = compose(p, f, p, f, 0, True)
        assert isomorphic(d, c)


def test_double_errors():
    with pytest.raises(NoSuchFace):
        double(build_lobell(5), 12)
    with pytest.raises(NotAdmissible):
        double(cube(), 0)


def test_distinguished_circuit():
    p, c = compose(build_lobell(5), 0, build_lobell(5), 0, 0, True)
    assert counts(p) == (30, 45, 17, {5: 12, 6: 5})
    for e in c.crossed_edges:
        f, g = p.edge_faces[e]
        assert p.face_size(f) == p.face_size(g) == 6
    assert side_profile(p, c).arcs == ((2, 2),) * 5


@settings(max_examples=30, deadline=None)
@given(
    st.integers(5, 8), st.integers(5, 8), st.integers(0, 4), st.booleans(), st.integers(0, 100), st.integers(0, 100)
)
def test_pentagon_compositions(n1, n2, offset, flip, i1, i2):
    p1, p2 = build_lobell(n1), build_lobell(n2)
    pent1 = [f for f in range(p1.num_faces) if p1.face_size(f) == 5]
    pent2 = [f for f in range(p2.num_faces) if p2.face_size(f) == 5]
    comp = composition(p1, pent1[i1 % len(pent1)], p2, pent2[i2 % len(pent2)], offset, flip)
    p = comp.polyhedron
    v1, e1, f1, _ = counts(p1)
    v2, e2, f2, _ = counts(p2)
    assert counts(p)[:3] == (v1 + v2 - 10, e1 + e2 - 15, f1 + f2 - 7)
    assert admissible(p)
    assert pentagon_excess(p)[0] >= 12
    assert comp.circuit.k == 5
    # face provenance covers every input face except the glued pair
    origins = [o for face in comp.face_origin for o in face]
    assert len(origins) == f1 + f2 - 2
    assert len(comp.glued_pairs) == 5


def test_composition_errors():
    p5, p6 = build_lobell(5), build_lobell(6)
    with pytest.raises(FaceSizeMismatch):
        compose(p5, 0, p6, 0)
    with pytest.raises(InputError):
        compose(p5, 0, p5, 0, offset=5)
    with pytest.raises(NotAdmissible):
        compose(cube(), 0, cube(), 0)
