"""Exact partition functions, hardness reductions and brute-force oracles for
exponential random graph models with integer weights."""

__version__ = "0.1.0"

from .dyadic import DigitVector, Dyadic  # noqa: E402
from .graph import Graph  # noqa: E402
from .kernels import BACKEND_NAME  # noqa: E402
from .model import ErgmModel, Feature, indicator, iso_count  # noqa: E402
from .partition import partition_exhaustive, partition_two_vertex  # noqa: E402

__all__ = [
    "BACKEND_NAME",
    "DigitVector",
    "Dyadic",
    "ErgmModel",
    "Feature",
    "Graph",
    "indicator",
    "iso_count",
    "partition_exhaustive",
    "partition_two_vertex",
]
