"""Gabriel localization over finite commutative rings."""

from .config import BudgetExceeded, enumeration_budget
from .localization import (
    Gabriel,
    LocalizedModule,
    LocalizedRing,
    gabriel,
    general_colimit,
    ideal_localization,
    is_closed,
    is_strongly_closed,
    localize,
    localize_hom,
    pre_localize,
    ring_structure,
    sigma_map,
    submodule_pullback_check,
    universal_map,
)
from .modules import (
    FiniteModule,
    ModuleHom,
    classical_localization,
    cyclic_quotient,
    direct_sum,
    hom_set,
    is_flat,
    module_from_ideal,
    presentation,
    quotient_module,
    regular_module,
    tensor,
)
from .rings import (
    FiniteRing,
    Ideal,
    MultSet,
    RingMap,
    build_ring,
    colon,
    enumerate_ideals,
    enumerate_primes,
    ideal_arith,
    is_prime,
    mult_closure,
    v_set,
)
from .systems import (
    TopologizingSystem,
    induced_system,
    is_finite_type,
    is_idempotent,
    is_negligible,
    product_system,
    standard_system,
    torsion_submodule,
    validate_topologizing,
)
from .theorems import (
    TheoremReport,
    classical_vs_gabriel,
    exactness_report,
    flat_epi_to_localization,
    flat_quotient_report,
    is_epimorphism,
    is_flat_epi,
    lemma_battery,
    localization_to_flat_epi,
    prime_correspondence,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "enumeration_budget",
    "Gabriel",
    "LocalizedModule",
    "LocalizedRing",
    "gabriel",
    "general_colimit",
    "ideal_localization",
    "is_closed",
    "is_strongly_closed",
    "localize",
    "localize_hom",
    "pre_localize",
    "ring_structure",
    "sigma_map",
    "submodule_pullback_check",
    "universal_map",
    "FiniteModule",
    "ModuleHom",
    "classical_localization",
    "cyclic_quotient",
    "direct_sum",
    "hom_set",
    "is_flat",
    "module_from_ideal",
    "presentation",
    "quotient_module",
    "regular_module",
    "tensor",
    "FiniteRing",
    "Ideal",
    "MultSet",
    "RingMap",
    "build_ring",
    "colon",
    "enumerate_ideals",
    "enumerate_primes",
    "ideal_arith",
    "is_prime",
    "mult_closure",
    "v_set",
    "TopologizingSystem",
    "induced_system",
    "is_finite_type",
    "is_idempotent",
    "is_negligible",
    "product_system",
    "standard_system",
    "torsion_submodule",
    "validate_topologizing",
    "TheoremReport",
    "classical_vs_gabriel",
    "exactness_report",
    "flat_epi_to_localization",
    "flat_quotient_report",
    "is_epimorphism",
    "is_flat_epi",
    "lemma_battery",
    "localization_to_flat_epi",
    "prime_correspondence",
]
