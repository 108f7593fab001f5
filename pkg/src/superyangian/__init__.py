"""Exact computations with truncated Drinfeld super Yangians of type A.

Root systems and matrix realizations for every parity order of the
weight basis, an exact PBW straightening engine for the deformed algebra
and its classical limits, the Hopf structure with its axioms checked by
exact computation, the evaluation map from the quantum loop superalgebra,
and the classification of diagrams up to Hopf isomorphism.  Everything is
computed over arbitrary-precision rationals; there is no floating point
anywhere.
"""

__version__ = "0.1.0"
