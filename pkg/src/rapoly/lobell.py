"""Lobell polyhedra L(n): construction and recognition."""

from __future__ import annotations

from functools import lru_cache

from rapoly.errors import NTooSmall
from rapoly.polyhedron import CombinatorialPolyhedron, build, counts


@lru_cache(maxsize=64)
def build_lobell(n: int) -> CombinatorialPolyhedron:
    """Two pentagonal flowers glued along their boundary circles.

    Vertex blocks (indices mod n): top n-gon ``t_i = i``, top-petal outer
    vertices ``u_i = n + i``, petal tips ``w_i = 2n + i`` and bottom n-gon
    ``b_i = 3n + i``.  Top petal ``i`` is ``t_{i+1} t_i u_i w_i u_{i+1}``;
    bottom petal ``i`` is ``b_{i+1} w_{i+1} u_{i+1} w_i b_i``.  The bottom
    flower sits half a petal round from the top one, which is what makes
    every boundary vertex trivalent.
    """
    if not isinstance(n, int) or n < 5:
        raise NTooSmall(f"Lobell polyhedra need n >= 5, got {n}")

    def t(i):
        return i % n

    def u(i):
        return n + i % n

    def w(i):
        return 2 * n + i % n

    def b(i):
        return 3 * n + i % n

    faces = [[t(i) for i in range(n)]]
    faces += [[t(i + 1), t(i), u(i), w(i), u(i + 1)] for i in range(n)]
    faces += [[b(i + 1), w(i + 1), u(i + 1), w(i), b(i)] for i in range(n)]
    faces.append([b(i) for i in reversed(range(n))])
    return build(faces, name=f"L({n})")


def recognize_lobell(p: CombinatorialPolyhedron) -> int | None:
    """``n`` if ``p`` is isomorphic to L(n), else ``None``."""
    _, _, f, hist = counts(p)
    if hist == {5: 12} and f == 12:
        n = 5
    elif len(hist) == 2 and 5 in hist:
        n = max(hist)
        if hist != {5: 2 * n, n: 2} or f != 2 * n + 2:
            return None
    else:
        return None
    return n if p.canonical == build_lobell(n).canonical else None
