"""Exact quantum homology of Hamiltonian fibrations over the sphere.

Classes are written as expressions such as ``"T- + 2*pt@e^{-F}"``; scalars
are returned as :class:`fractions.Fraction` and accepted as ``Fraction``,
``int`` or ``"p/q"`` strings.
"""

from ._qhfib import (
    CutoffTooSmall,
    Fibration,
    HypothesisFailed,
    Manifold,
    ParseError,
    QHFibError,
    TableIncomplete,
    UnknownSuite,
    load,
    loads,
    product_bundle,
    suite_names,
)

__all__ = [
    "CutoffTooSmall",
    "Fibration",
    "HypothesisFailed",
    "Manifold",
    "ParseError",
    "QHFibError",
    "TableIncomplete",
    "UnknownSuite",
    "load",
    "loads",
    "product_bundle",
    "suite_names",
]
