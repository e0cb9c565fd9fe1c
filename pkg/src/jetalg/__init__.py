"""Exact structure-constant algebra with formal deformations.

Finite-dimensional algebraic structures are stored as structure constants
over the rationals.  Deformations are truncated jets in a formal parameter,
and every check (axioms, operator identities, Yang-Baxter residuals) runs
in exact arithmetic over either scalar type.
"""

from .deform import (
    DeformationJet,
    DerivationPair,
    ModuleDeformationJet,
    check_deformation,
    deformation_from_presentation,
    derive_deformation,
    gen_integration_zinbiel,
    gen_product_shift,
    gen_truncated_poly_example,
    module_derivation_pair,
    qcl,
    regular_bimodule_jet,
    tridendriform_bimodule_jet,
    truncated_polynomial_algebra,
)
from .errors import ConsistencyError
from .linalg import (
    BilinearOp,
    LinearMap,
    Space,
    Tensor3,
    TensorElement,
    direct_sum,
    eta_embed,
    sharp,
    unsharp,
)
from .operators import (
    OOperatorSpec,
    check_o_operator,
    check_scalar_deformation,
    induce_splitting,
    transfer_qcl_operator,
)
from .scalars import Jet, jet_div_h, rational, scalar_is_zero, scalar_low_order
from .serialize import (
    FileFormatError,
    load_deformation,
    load_derivations,
    load_module,
    load_operator,
    load_structure,
    load_tensor,
    report_to_dict,
    save_deformation,
    save_derivations,
    save_module,
    save_operator,
    save_structure,
    save_tensor,
)
from .structures import (
    KIND_ROLES,
    AxiomFailure,
    AxiomReport,
    ModuleData,
    StructurePresentation,
    as_bimodule_layout,
    as_post_poisson,
    as_tridendriform,
    assemble_total,
    bimodule_equations_report,
    check_module,
    check_structure,
    dualize_module,
    post_lie_module,
    post_poisson_module,
    regular_bimodule,
    regular_module,
    semidirect,
    tridendriform_bimodule,
)
from .yangbaxter import (
    SolutionBundle,
    YBE_KINDS,
    alpha_block_maps,
    alpha_operators,
    aw1_induce,
    construct_solutions,
    deformation_transfer,
    dual_semidirect_jet,
    dualize_deformation,
    invariance_residual,
    skew_graph_tensor,
    ybe_residual,
)
from .diagrams import DIAGRAM_TAGS, verify_diagram

__all__ = [
    "AxiomFailure",
    "AxiomReport",
    "BilinearOp",
    "ConsistencyError",
    "DIAGRAM_TAGS",
    "DeformationJet",
    "DerivationPair",
    "FileFormatError",
    "Jet",
    "KIND_ROLES",
    "LinearMap",
    "ModuleData",
    "ModuleDeformationJet",
    "OOperatorSpec",
    "SolutionBundle",
    "Space",
    "StructurePresentation",
    "Tensor3",
    "TensorElement",
    "YBE_KINDS",
    "alpha_block_maps",
    "alpha_operators",
    "as_bimodule_layout",
    "as_post_poisson",
    "as_tridendriform",
    "assemble_total",
    "aw1_induce",
    "bimodule_equations_report",
    "check_deformation",
    "check_module",
    "check_o_operator",
    "check_scalar_deformation",
    "check_structure",
    "construct_solutions",
    "deformation_from_presentation",
    "deformation_transfer",
    "derive_deformation",
    "direct_sum",
    "dual_semidirect_jet",
    "dualize_deformation",
    "dualize_module",
    "eta_embed",
    "gen_integration_zinbiel",
    "gen_product_shift",
    "gen_truncated_poly_example",
    "induce_splitting",
    "invariance_residual",
    "jet_div_h",
    "load_deformation",
    "load_derivations",
    "load_module",
    "load_operator",
    "load_structure",
    "load_tensor",
    "module_derivation_pair",
    "post_lie_module",
    "post_poisson_module",
    "qcl",
    "rational",
    "regular_bimodule",
    "regular_bimodule_jet",
    "regular_module",
    "report_to_dict",
    "save_deformation",
    "save_derivations",
    "save_module",
    "save_operator",
    "save_structure",
    "save_tensor",
    "scalar_is_zero",
    "scalar_low_order",
    "semidirect",
    "sharp",
    "skew_graph_tensor",
    "transfer_qcl_operator",
    "tridendriform_bimodule",
    "tridendriform_bimodule_jet",
    "truncated_polynomial_algebra",
    "unsharp",
    "verify_diagram",
    "ybe_residual",
]
