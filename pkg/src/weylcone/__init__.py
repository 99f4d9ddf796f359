"""Exact and simulated functionals of Weyl random cones of types A and B."""

from weylcone.combinatorics import (
    ConeType,
    StirlingTable,
    ChamberCount,
    build_stirling_table,
    stirling_table,
    chamber_count,
    parity_sums,
)

__version__ = "0.1.0"

__all__ = [
    "ConeType",
    "StirlingTable",
    "ChamberCount",
    "build_stirling_table",
    "stirling_table",
    "chamber_count",
    "parity_sums",
    "__version__",
]
