"""Exact computations with finite theta (Heisenberg) groups and their weight-n modules.

Scalars live in Q/Z (roots of unity), so every construction is exact.
"""

from .abelian import FinAbGroup, Subquotient, smith_normal_form
from .adelic import (
    AdelePoint,
    NSForm,
    adelic_pairing,
    level_theta_group,
    ns_to_h2,
    supp,
    weil_relation_check,
)
from .errors import ThetaError
from .reps import (
    DenseRep,
    Heisenberg,
    MonomialRep,
    build_irrep,
    classify_irreps,
    count_irreps,
    decompose_weight_module,
    induce,
    is_irreducible,
    isomorphic,
)
from .roots import CycNumber, QmodZ
from .skew import SkewForm, radical, standard_form, symplectic_decompose
from .theta import (
    Cocycle,
    ThetaGroup,
    descend,
    extensions_equivalent,
    heisenberg_of_type,
    lift_level_subgroup,
    normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "AdelePoint", "Cocycle", "CycNumber", "DenseRep", "FinAbGroup", "Heisenberg", "MonomialRep",
    "NSForm", "QmodZ", "SkewForm", "Subquotient", "ThetaError", "ThetaGroup", "adelic_pairing",
    "build_irrep", "classify_irreps", "count_irreps", "decompose_weight_module", "descend",
    "extensions_equivalent", "heisenberg_of_type", "induce", "is_irreducible", "isomorphic",
    "level_theta_group", "lift_level_subgroup", "normal_form", "ns_to_h2", "radical",
    "smith_normal_form", "standard_form", "supp", "symplectic_decompose", "weil_relation_check",
]
