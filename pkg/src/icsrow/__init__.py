"""Rowmotion on interval-closed subsets of products of chains."""

from .convex import CapExceeded, IcsSet, enumerate_ics, is_interval_closed
from .dynamics import (
    HomomesyReport,
    Orbit,
    homomesy_check,
    ics_family,
    ideal_family,
    orbit_decomposition,
    rowmotion_global_simplified,
    rowmotion_global_threeset,
    rowmotion_local,
)
from .poset import ChainProduct, Poset, product_of_chains
from .two_by_n import ChainTuple, census, predicted_census, row_step

__all__ = [
    "CapExceeded",
    "ChainProduct",
    "ChainTuple",
    "HomomesyReport",
    "IcsSet",
    "Orbit",
    "Poset",
    "census",
    "enumerate_ics",
    "homomesy_check",
    "ics_family",
    "ideal_family",
    "is_interval_closed",
    "orbit_decomposition",
    "predicted_census",
    "product_of_chains",
    "row_step",
    "rowmotion_global_simplified",
    "rowmotion_global_threeset",
    "rowmotion_local",
]
