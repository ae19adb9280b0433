"""Torsion classes, wide subcategories and brick labels for quiver representations over F_p."""
from .errors import BudgetExceeded, DimensionMismatch, InvalidInput, InvariantViolation, SymbolicOnly, TorswideError
from .quiverrep import (
    Morphism,
    Quiver,
    Representation,
    cyclic_quiver,
    d4_quiver,
    decompose,
    ext_dim,
    hom_dim,
    kronecker_quiver,
    linear_quiver,
    tau_translate,
)
from .torsops import SubcatSet, TorsionPair, enumerate_torsion_classes, filt_closure
from .universe import Universe, enumerate_universe, load_universe
from .widetors import alpha_tilde, beta_tilde, enumerate_wide, hasse, is_wide

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "DimensionMismatch", "InvalidInput", "InvariantViolation", "SymbolicOnly", "TorswideError",
    "Morphism", "Quiver", "Representation", "cyclic_quiver", "d4_quiver", "decompose", "ext_dim", "hom_dim",
    "kronecker_quiver", "linear_quiver", "tau_translate",
    "SubcatSet", "TorsionPair", "enumerate_torsion_classes", "filt_closure",
    "Universe", "enumerate_universe", "load_universe",
    "alpha_tilde", "beta_tilde", "enumerate_wide", "hasse", "is_wide",
]
