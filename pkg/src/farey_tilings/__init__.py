"""Integer tilings, positive rational friezes and hypertilings, built from and
decomposed into paths in generalized Farey graphs."""

from .farey import FareyPath, PathError
from .friezes import Frieze, TriangulatedPolygon, WeightedPolygon, frieze_from_path, path_from_frieze
from .hypertilings import Hypertiling, construct_hypertiling, decompose_hypertiling, hyperdet
from .tilings import Tiling, construct_tiling, decompose_tiling, tameness_parameters, verify_n_tiling

__all__ = [
    "FareyPath", "PathError", "Frieze", "TriangulatedPolygon", "WeightedPolygon", "frieze_from_path",
    "path_from_frieze", "Hypertiling", "construct_hypertiling", "decompose_hypertiling", "hyperdet",
    "Tiling", "construct_tiling", "decompose_tiling", "tameness_parameters", "verify_n_tiling",
]
