import pytest

from rapoly.corpus import cube, dodecahedron
from rapoly.covers import (
    FaceColoring,
    amalgam_presentation,
    collapse_identifications,
    edge_coloring,
    face_four_coloring,
    parse_presentation_text,
    presentations,
    word_letters,
)
from rapoly.errors import FaceSizeMismatch, ImproperFaceColoring, NotAdmissible
from rapoly.gluing import compose
from rapoly.lobell import build_lobell
from rapoly.polyhedron import counts


def _proper(p, fc):
    for f, g in p.edge_faces:
        if fc.boundary_face in (f, g):
            continue
        assert fc.colors[f] != fc.colors[g]


def test_face_colourings():
    d = dodecahedron()
    fc = face_four_coloring(d)
    _proper(d, fc)
    assert set(fc.colors.values()) == {0, 1, 2, 3}
    c = cube()
    fc = face_four_coloring(c)
    _proper(c, fc)
    assert len(set(fc.colors.values())) <= 4
    l6 = build_lobell(6)
    _proper(l6, face_four_coloring(l6))


def test_colouring_is_deterministic():
    p = build_lobell(8)
    assert face_four_coloring(p) == face_four_coloring(p)
    assert face_four_coloring(p).colors[0] == 0


def test_edge_colouring_dodecahedron():
    d = dodecahedron()
    ec = edge_coloring(d, face_four_coloring(d))
    assert ec.verified
    assert len(ec.colors) == 30
    assert set(ec.colors.values()) <= {1, 2, 3}
    for v in d.vertices:
        at_v = [ec.colors[e] for e, pair in enumerate(d.edges) if v in pair]
        assert sorted(at_v) == [1, 2, 3]


def test_improper_colouring_rejected():
    p = build_lobell(5)
    bad = FaceColoring({f: 0 for f in range(p.num_faces)})
    with pytest.raises(ImproperFaceColoring):
        edge_coloring(p, bad)
    with pytest.raises(ImproperFaceColoring):
        presentations(p, bad)


def test_presentation_counts_l5():
    p = build_lobell(5)
    pres = presentations(p, face_four_coloring(p))
    assert len(pres.gamma.generators) == 12
    involutions = [w for w in pres.gamma.relators if len(word_letters(w)) == 2]
    squares = [w for w in pres.gamma.relators if len(word_letters(w)) == 4]
    assert len(involutions) == 12 and len(squares) == 30
    assert len(pres.g.generators) == 30
    assert pres.g.metadata["involutions"] == 30
    assert pres.g.metadata["vertex_relations"] == 20
    assert pres.certificate_ok and pres.surjective
    assert pres.index == {"orientation": 2, "coloring": 4, "total": 8}


def test_counts_with_boundary_face(admissible_members):
    for p in list(admissible_members)[:8]:
        v, e, f, _ = counts(p)
        for bf in (None, 0):
            fc = face_four_coloring(p, bf)
            pres = presentations(p, fc)
            off = 0 if bf is None else 1
            k = 0 if bf is None else p.face_size(bf)
            assert len(pres.gamma.generators) == f - off
            assert len(pres.g.generators) == e - k
            assert pres.g.metadata["vertex_relations"] == v - k
            assert pres.certificate_ok


def test_non_admissible_presentation():
    c = cube()
    with pytest.raises(NotAdmissible):
        presentations(c, face_four_coloring(c))


def test_export_text():
    p = build_lobell(5)
    pres = presentations(p, face_four_coloring(p))
    gens, rels = parse_presentation_text(pres.gamma.to_text())
    assert gens == list(pres.gamma.generators)
    assert rels == list(pres.gamma.relators)
    assert any(w.count("*") == 3 for w in rels)


def test_amalgam():
    p5 = build_lobell(5)
    pres = amalgam_presentation(p5, 0, p5, 0, 0, True)
    assert len(pres.generators) == 22
    assert pres.metadata["identifications"] == 5
    comp, _ = compose(p5, 0, p5, 0, 0, True)
    assert collapse_identifications(pres) == comp.num_faces
    gamma = presentations(comp, face_four_coloring(comp)).gamma
    assert collapse_identifications(pres) == len(gamma.generators)
    assert set(pres.metadata["composition_face"].values()) == set(range(comp.num_faces))


def test_amalgam_identifications_equal_face_size():
    p6 = build_lobell(6)
    pres = amalgam_presentation(p6, 0, p6, 0, 1, False)
    assert pres.metadata["identifications"] == 6
    with pytest.raises(FaceSizeMismatch):
        amalgam_presentation(p6, 0, build_lobell(5), 0)
