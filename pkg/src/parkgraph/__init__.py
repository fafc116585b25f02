"""Parking functions on rooted labelled trees and on mappings.

Submodules:

* ``core``: graph types, the parking procedure, JSON helpers
* ``structure``: predecessor characterizations, tree surgery, extremal trees
* ``enumgen``: exhaustive generators and brute-force counts
* ``series``, ``exactcount``: exact closed forms and generating-function oracles
* ``bijection``: trees with a marked node <-> mappings, preserving parking
* ``asymptotics``: limit laws, exact probabilities, Monte-Carlo
* ``cli``: the ``parkgraph`` command
"""

from .core import (
    MappingFn,
    ParkOutcome,
    RootedTree,
    is_parking_function,
    park,
    park_mapping,
    park_tree,
)
from .errors import ContractError, DomainError, ParkGraphError, SizeError, StructureError

__version__ = "0.1.0"

__all__ = [
    "MappingFn",
    "ParkOutcome",
    "RootedTree",
    "is_parking_function",
    "park",
    "park_mapping",
    "park_tree",
    "ContractError",
    "DomainError",
    "ParkGraphError",
    "SizeError",
    "StructureError",
]
