"""Splitting types of bundles on rational curves obtained by projecting the rational normal curve."""

from .cohomology import SplittingType, normal_splitting, tangent_splitting
from .forms import BinaryForm, DualForm
from .geometry import smoothness
from .vertex import NumericalType, Vertex, numerical_type

__all__ = [
    "BinaryForm",
    "DualForm",
    "NumericalType",
    "SplittingType",
    "Vertex",
    "normal_splitting",
    "numerical_type",
    "smoothness",
    "tangent_splitting",
]
__version__ = "0.1.0"
