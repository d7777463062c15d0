"""Cone angles of the spherical polar of a right-angled polyhedron.

Each face of the polyhedron gives a cone point of the polar.  Undeformed, a
face with k edges has cone angle k*pi/2.  Unbending a very good edge ``e``
with parameter t in (0, 1) opens its dihedral angle to
theta_t = (1-t)*pi/2 + t*pi; a face meeting exactly one endpoint of ``e``
then has cone angle (k-1)*pi/2 + (pi - theta_t).

Only the cone-angle condition is checked here (a partial Rivin check); the
closed-geodesic length condition is not attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rapoly.circuits import admissible
from rapoly.errors import InternalConsistencyError, NonFinite, NotAdmissible, NotVeryGood, TOutOfRange
from rapoly.polyhedron import CombinatorialPolyhedron
from rapoly.reduction import classify_edges

TWO_PI = 2 * math.pi


def theta_t(t: float) -> float:
    return (1 - t) * math.pi / 2 + t * math.pi


@dataclass(frozen=True)
class ConeAngleReport:
    angles: tuple[float, ...]
    cases: tuple[str, ...]  # "plain" | "touches-endpoint" per face
    deformation: tuple[int, float] | None

    @property
    def all_exceed_2pi(self) -> bool:
        return all(a > TWO_PI for a in self.angles)

    @property
    def min_angle(self) -> float:
        return min(self.angles)

    def to_json(self) -> dict:
        return {
            "check": "partial Rivin check (cone angles only)",
            "deformation": None
            if self.deformation is None
            else {"edge": self.deformation[0], "t": self.deformation[1]},
            "faces": [
                {"face": i, "cone_angle": float(f"{a:.12g}"), "case": c}
                for i, (a, c) in enumerate(zip(self.angles, self.cases))
            ],
            "all_exceed_2pi": self.all_exceed_2pi,
        }


def cone_angles(
    p: CombinatorialPolyhedron, deformed_edge: int | None = None, t: float | None = None
) -> ConeAngleReport:
    verdict = admissible(p)
    if not verdict:
        raise NotAdmissible(f"polyhedron is not admissible: {verdict.describe(p)}", verdict)
    if (deformed_edge is None) != (t is None):
        raise TOutOfRange("a deformation needs both an edge and a parameter t")
    touching: set[int] = set()
    if deformed_edge is not None:
        if not math.isfinite(t):
            raise NonFinite(f"t must be finite, got {t}")
        if not 0 < t < 1:
            raise TOutOfRange(f"t must lie in (0, 1), got {t}")
        p.check_edge(deformed_edge)
        info = classify_edges(p)[deformed_edge]
        if info.status != "very_good":
            raise NotVeryGood(f"edge {deformed_edge} is {info.status}, not very good")
        # the connected faces are exactly those meeting one endpoint only
        touching = set(info.connected_faces)
    angles = []
    cases = []
    for f in range(p.num_faces):
        k = p.face_size(f)
        if f in touching:
            angles.append((k - 1) * math.pi / 2 + (math.pi - theta_t(t)))
            cases.append("touches-endpoint")
        else:
            angles.append(k * math.pi / 2)
            cases.append("plain")
    report = ConeAngleReport(
        tuple(angles), tuple(cases), None if deformed_edge is None else (deformed_edge, float(t))
    )
    if not report.all_exceed_2pi:
        raise InternalConsistencyError(f"cone angle {report.min_angle} does not exceed 2*pi")
    return report
