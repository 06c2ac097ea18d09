"""Polar orderings, discrete Morse theory and local-system homology for real hyperplane arrangements."""
from __future__ import annotations

from .geometry import Arrangement, ArrangementError, Hyperplane, essentialize
from .faces import FacePoset, face_poset
from .kernels import BACKEND
from .polar import GenericFrame, PolarOrder, polar_order_all
from .salvetti import MorseField, polar_gradient
from .morse import MorseComplex, boundary_matrix
from .homology import HomologyResult, homology
from .braid import Tableau, braid_complex, braid_order, build_pi_k

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "ArrangementError", "Hyperplane", "essentialize", "FacePoset", "face_poset",
    "BACKEND", "GenericFrame", "PolarOrder", "polar_order_all", "MorseField", "polar_gradient",
    "MorseComplex", "boundary_matrix", "HomologyResult", "homology", "Tableau", "braid_complex",
    "braid_order", "build_pi_k",
]
