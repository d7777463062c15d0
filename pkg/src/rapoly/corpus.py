"""Deterministic test corpus: Lobell polyhedra, their doubles and
compositions, plus a handful of small non-admissible solids."""

from __future__ import annotations

from functools import lru_cache

from rapoly.gluing import composition
from rapoly.lobell import build_lobell
from rapoly.polyhedron import CombinatorialPolyhedron, build

# vertices 0..19; three layers of faces around a top pentagon
DODECAHEDRON_FACES = [
    [0, 1, 2, 3, 4],
    [0, 5, 6, 7, 1],
    [1, 7, 8, 9, 2],
    [2, 9, 10, 11, 3],
    [3, 11, 12, 13, 4],
    [4, 13, 14, 5, 0],
    [5, 14, 15, 16, 6],
    [7, 6, 16, 17, 8],
    [9, 8, 17, 18, 10],
    [11, 10, 18, 19, 12],
    [13, 12, 19, 15, 14],
    [15, 19, 18, 17, 16],
]


def prism(n: int) -> CombinatorialPolyhedron:
    """n-gonal prism: bottom 0..n-1, top n..2n-1."""
    bottom = list(range(n - 1, -1, -1))
    top = list(range(n, 2 * n))
    sides = [[i, (i + 1) % n, n + (i + 1) % n, n + i] for i in range(n)]
    return build([bottom, top] + sides, name=f"prism({n})")


def tetrahedron() -> CombinatorialPolyhedron:
    return build([[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]], name="tetrahedron")


def cube() -> CombinatorialPolyhedron:
    return prism(4).with_name("cube")


def dodecahedron() -> CombinatorialPolyhedron:
    return build(DODECAHEDRON_FACES, name="dodecahedron")


def negatives() -> list[CombinatorialPolyhedron]:
    return [cube(), prism(3).with_name("triangular prism"), prism(5).with_name("pentagonal prism"), tetrahedron()]


def _faces_of_size(p: CombinatorialPolyhedron, k: int) -> list[int]:
    return [f for f in range(p.num_faces) if p.face_size(f) == k]


@lru_cache(maxsize=None)
def admissible_corpus() -> tuple[CombinatorialPolyhedron, ...]:
    """Admissible members, in a fixed order.

    Lobell polyhedra L(5..10); doubles of L(5..8) across a pentagon and
    across the large face; compositions of pairs from L(5..8) along
    pentagons and along equal large faces.
    """
    out = [build_lobell(n) for n in range(5, 11)]
    for n in range(5, 9):
        p = build_lobell(n)
        out.append(composition(p, _faces_of_size(p, 5)[0], p, _faces_of_size(p, 5)[0], 0, True).polyhedron.with_name(f"D(L({n}),pent)"))
        if n > 5:
            out.append(composition(p, 0, p, 0, 0, True).polyhedron.with_name(f"D(L({n}),{n}-gon)"))
    for n1 in range(5, 9):
        for n2 in range(n1, 9):
            p1, p2 = build_lobell(n1), build_lobell(n2)
            f1, f2 = _faces_of_size(p1, 5)[0], _faces_of_size(p2, 5)[0]
            out.append(composition(p1, f1, p2, f2, 1, False).polyhedron.with_name(f"L({n1})+L({n2})"))
    return tuple(out)


def corpus() -> list[CombinatorialPolyhedron]:
    return list(admissible_corpus()) + negatives()
