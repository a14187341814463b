"""GL(3) Schwarzian derivative toolkit.

Jet arithmetic, the four GL(3) derivatives and their transport calculus,
Appell F1 evaluation, Picard-curve moduli transforms, the eta automorphy
ledger, and the invariant evolution system, with verification suites behind
the `gl3schwarz` CLI.
"""

from .jets import BACKEND, Jet, JetError, compose2, invert_map2, jet_arith, jet_powq

__all__ = [
    "BACKEND",
    "Jet",
    "JetError",
    "compose2",
    "invert_map2",
    "jet_arith",
    "jet_powq",
]

__version__ = "0.1.0"
