"""Exact-arithmetic orbifold Chow rings of toric stack bundles.

The pipeline: finitely generated abelian lattices and Gale duality
(lattice), simplicial fans (fan), extended stacky fans with box elements
(stacky), the orbifold Chow ring as an explicit rational basis with a
full structure-constant table (chowring), inertia components and
obstruction exponents (inertia), and smooth subdivisions with support
functions (resolution). Everything runs over exact rationals.
"""

from .chowring import (BaseRing, OrbifoldRing, SectorReport,
                       isomorphic_presentation_check,
                       module_decomposition_report, ordinary_chow_ring,
                       orbifold_ring, stanley_reisner_generators)
from .errors import Diagnostic, DocumentError, StackyError
from .fan import SimplicialFan
from .inertia import (Sector, inertia_components, obstruction_exponents,
                      three_sectors)
from .lattice import (FgAbGroup, GroupHom, SnfWitness, cokernel, dual,
                      dual_hom, gale_dual, gerbe_group, kernel,
                      smith_normal_form, solve_integer_linear)
from .resolution import (FiberDimensionReport, Subdivision,
                         SupportFunctionVerdict, check_support_function,
                         fiber_dimension_check, validate_subdivision)
from .stacky import BoxElement, ExtendedStackyFan

__version__ = "0.1.0"

__all__ = [
    "BaseRing",
    "BoxElement",
    "Diagnostic",
    "DocumentError",
    "ExtendedStackyFan",
    "FgAbGroup",
    "FiberDimensionReport",
    "GroupHom",
    "OrbifoldRing",
    "Sector",
    "SectorReport",
    "SimplicialFan",
    "SnfWitness",
    "StackyError",
    "Subdivision",
    "SupportFunctionVerdict",
    "check_support_function",
    "cokernel",
    "dual",
    "dual_hom",
    "fiber_dimension_check",
    "gale_dual",
    "gerbe_group",
    "inertia_components",
    "isomorphic_presentation_check",
    "kernel",
    "module_decomposition_report",
    "obstruction_exponents",
    "ordinary_chow_ring",
    "orbifold_ring",
    "smith_normal_form",
    "solve_integer_linear",
    "stanley_reisner_generators",
    "three_sectors",
    "validate_subdivision",
    "__version__",
]
