"""Combinatorics and volume bounds for right-angled hyperbolic polyhedra."""

from rapoly.circuits import PrismaticCircuit, Verdict, admissible, prismatic_circuits, side_profile
from rapoly.covers import amalgam_presentation, edge_coloring, face_four_coloring, presentations
from rapoly.gluing import compose, composition, double
from rapoly.lobell import build_lobell, recognize_lobell
from rapoly.polar import cone_angles
from rapoly.polyhedron import CombinatorialPolyhedron, build, canonical_form, counts, isomorphic, load, pentagon_excess
from rapoly.reduction import classify_edges, decompose, edge_surgery, find_move, reduce, volume_lower_bound
from rapoly.volumes import Volume, lobachevsky, lobell_volume

__all__ = [
    "CombinatorialPolyhedron",
    "PrismaticCircuit",
    "Verdict",
    "Volume",
    "admissible",
    "amalgam_presentation",
    "build",
    "build_lobell",
    "canonical_form",
    "classify_edges",
    "compose",
    "composition",
    "cone_angles",
    "counts",
    "decompose",
    "double",
    "edge_coloring",
    "edge_surgery",
    "face_four_coloring",
    "find_move",
    "isomorphic",
    "load",
    "lobachevsky",
    "lobell_volume",
    "pentagon_excess",
    "presentations",
    "prismatic_circuits",
    "recognize_lobell",
    "reduce",
    "side_profile",
    "volume_lower_bound",
]
