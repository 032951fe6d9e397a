"""Numeric-symbolic verification of Schrödinger geometry.

Flat Bargmann structures, their symmetry algebra and group, the curved
one-parameter family of bulk metrics with Schrödinger boundary, and the
covariant form of the Schrödinger equation, all checked by exact
second-order jet arithmetic on seeded sample points.
"""

from .ambient import (
    AlgebraElement,
    GroupBlocks,
    GroupElement,
    SchBlocks,
    commutant_basis,
    random_group_element,
    sch_dimension,
)
from .bargmann import (
    BargmannStructure,
    DensityFunction,
    SchrodingerParams,
    bargmann_axioms_check,
    flat_bargmann,
    plane_wave,
    schrodinger_residual,
)
from .homogeneous import (
    SchrodingerManifoldConfig,
    boundary_structure,
    bulk_metric,
    einstein_residual,
    embed,
    isometry_check,
    isotropy_check,
    nullfluid_residual,
    schrodinger_axiom_audit,
)
from .numkernel import Jet2, JetMatrix, SeededSampler
from .report import CheckResult, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "BargmannStructure",
    "CheckResult",
    "DensityFunction",
    "GroupBlocks",
    "GroupElement",
    "Jet2",
    "JetMatrix",
    "SchBlocks",
    "SchrodingerManifoldConfig",
    "SchrodingerParams",
    "SeededSampler",
    "VerificationReport",
    "bargmann_axioms_check",
    "boundary_structure",
    "bulk_metric",
    "commutant_basis",
    "einstein_residual",
    "embed",
    "flat_bargmann",
    "isometry_check",
    "isotropy_check",
    "nullfluid_residual",
    "plane_wave",
    "random_group_element",
    "sch_dimension",
    "schrodinger_axiom_audit",
    "schrodinger_residual",
    "__version__",
]
