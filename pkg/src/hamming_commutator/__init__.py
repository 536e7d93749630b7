"""Exact-arithmetic constructions for K_r and H(D, r), the commutator
``A_D^{-1} A_D*^{-1} A_D A_D*`` and its action on T-modules."""

from .commutator import (
    CommutatorMismatchError,
    CommutatorSpectrum,
    build_commutator,
    predicted_dimension,
    spectrum,
)
from .complete_graph import KrContext, build_kr, verify_kr
from .hamming import HammingContext, SizeCapError, build_hamming, parameter_tables
from .split_decomposition import v_eta, vij, vij_tilde, vij_tilde_tensor
from .tmodule import (
    TModule,
    certify_thm36,
    cyclic_module,
    is_irreducible,
    primary_module,
    seed_survey,
)

__version__ = "0.1.0"

__all__ = [
    "CommutatorMismatchError", "CommutatorSpectrum", "HammingContext", "KrContext",
    "SizeCapError", "TModule", "build_commutator", "build_hamming", "build_kr",
    "certify_thm36", "cyclic_module", "is_irreducible", "parameter_tables",
    "predicted_dimension", "primary_module", "seed_survey", "spectrum", "v_eta",
    "verify_kr", "vij", "vij_tilde", "vij_tilde_tensor",
]
