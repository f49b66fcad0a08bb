"""Character theory, twisted characters and multiplicity tables for graded based rings."""
from __future__ import annotations

__version__ = "0.1.0"

from .characters import (IrreducibleCharacter, codegrees, irreducible_characters,
                         verify_characters)
from .clifford import (TwistedExtension, all_extensions, extend_irrep, phi_fixed_irreps,
                       regauge)
from .errors import FusionKitError
from .fusion_data import (CenterBundle, GradedBasedRing, RingElement, load_bundle, validate,
                          verify_bundle)
from .multiplicity import (crossed_s_matrix, formula_multiplicities, restriction_multiplicities,
                           verify_main_theorem, verify_modular_formula)
from .scalars import E, BigComplex, CycloNumber, format_scalar, nth_root_gauge, parse_scalar

__all__ = [
    "__version__", "E", "CycloNumber", "BigComplex", "parse_scalar", "format_scalar",
    "nth_root_gauge", "GradedBasedRing", "RingElement", "CenterBundle", "load_bundle", "validate",
    "verify_bundle", "IrreducibleCharacter", "irreducible_characters", "codegrees",
    "verify_characters", "TwistedExtension", "extend_irrep", "all_extensions", "phi_fixed_irreps",
    "regauge", "restriction_multiplicities", "formula_multiplicities", "verify_main_theorem",
    "crossed_s_matrix", "verify_modular_formula", "FusionKitError",
]
