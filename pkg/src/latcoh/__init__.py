"""Exact homological algebra for families of subgroups of finitely
generated abelian groups.

Everything is integer arithmetic: normal forms over Z, presented groups,
subgroup lattices, (co)chain complexes of intersections, congruence
solving, pattern cohomology of closed coverings, and derived functors.
"""

from .intmatrix import (
    HnfSolver,
    IntMatrix,
    hnf,
    inverse_unimodular,
    kernel_basis,
    smith_diagonal,
    snf,
    solve_linear,
)
from .groups import (
    AmbientGroup,
    DecomposedGroup,
    GroupElement,
    Homomorphism,
    PresentedGroup,
    Subgroup,
    full_subgroup,
    intersection_of,
    kernel_image,
    quotient,
    sub_intersect,
    sub_sum,
    subgroup_from_generators,
    sum_of,
    zero_subgroup,
)
from .lattice import (
    CapExceeded,
    DistributivityReport,
    LatticeClosure,
    closure,
    family_closure_distributive,
    is_distributive,
    triple_distributes,
)
from .complexes import (
    ChainComplex,
    ComplexTerm,
    HomologyResult,
    chain_complex,
    cochain_complex,
    complex_from_groups,
    h1_witness,
    homology,
    homology_at,
    is_boundary,
    is_cycle,
)
from .crt import (
    CrtOutcome,
    ResidueSystem,
    certificate_cocycle_element,
    compatible,
    crt_solve,
    equalizer_check,
    verify_certificate,
)
from .patterns import (
    FLAVORS,
    GluingReport,
    PatternAssignment,
    PatternCohomologyResult,
    euler_consistency,
    gluing_check,
    pattern_cohomology,
    pattern_complex,
)
from .derived import (
    HomGroup,
    TensorGroup,
    ext,
    hom_group,
    induced_postcomposition,
    induced_precomposition,
    tensor_group,
    tor,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientGroup",
    "CapExceeded",
    "ChainComplex",
    "ComplexTerm",
    "CrtOutcome",
    "DecomposedGroup",
    "DistributivityReport",
    "FLAVORS",
    "GluingReport",
    "GroupElement",
    "HnfSolver",
    "HomGroup",
    "HomologyResult",
    "Homomorphism",
    "IntMatrix",
    "LatticeClosure",
    "PatternAssignment",
    "PatternCohomologyResult",
    "PresentedGroup",
    "ResidueSystem",
    "Subgroup",
    "TensorGroup",
    "certificate_cocycle_element",
    "chain_complex",
    "closure",
    "cochain_complex",
    "compatible",
    "complex_from_groups",
    "crt_solve",
    "equalizer_check",
    "euler_consistency",
    "ext",
    "family_closure_distributive",
    "full_subgroup",
    "gluing_check",
    "h1_witness",
    "hnf",
    "hom_group",
    "homology",
    "homology_at",
    "induced_postcomposition",
    "induced_precomposition",
    "intersection_of",
    "inverse_unimodular",
    "is_boundary",
    "is_cycle",
    "is_distributive",
    "kernel_basis",
    "kernel_image",
    "pattern_cohomology",
    "pattern_complex",
    "quotient",
    "smith_diagonal",
    "snf",
    "solve_linear",
    "sub_intersect",
    "sub_sum",
    "subgroup_from_generators",
    "sum_of",
    "tensor_group",
    "tor",
    "triple_distributes",
    "verify_certificate",
    "zero_subgroup",
]
