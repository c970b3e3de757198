"""Eigenschemes of ternary tensors: exact generators, recognition of point
configurations, reconstruction and numerical eigenpoints."""

from .algebra import GaussianRational, I, ExactMatrix, determinant, nullspace_basis, rank, rref
from .constructions import (
    TangentConicFamily,
    conic_tangent,
    eigen_line,
    fermat,
    fermat_eigenpoints,
    lambda_of,
    tangent_family_eigenstructure,
)
from .eigen import (
    Convention,
    GeneratorTriple,
    Tensor,
    detect_radial,
    expected_count,
    generators,
    hilbert_function_of_triple,
    jacobian_determinant,
    verify_koszul_identity,
    verify_symmetric_identities,
)
from .errors import EigenschemeError
from .points import (
    PointSet,
    ProjectivePoint,
    character,
    eigenscheme_preconditions,
    graded_betti,
    hilbert_function,
    max_collinear,
)
from .poly import HomogeneousPoly, isotropic_conic, parse_poly
from .reconstruct import (
    RecognitionReport,
    Stage,
    gradient_solve,
    koszul_solve,
    recognize_partially_symmetric,
    recognize_symmetric,
)
from .solve import contracted_lines, eigenpoints_numeric, laguerre_fiber

__version__ = "0.1.0"

__all__ = [
    "Convention",
    "EigenschemeError",
    "ExactMatrix",
    "GaussianRational",
    "GeneratorTriple",
    "HomogeneousPoly",
    "I",
    "PointSet",
    "ProjectivePoint",
    "RecognitionReport",
    "Stage",
    "TangentConicFamily",
    "Tensor",
    "character",
    "conic_tangent",
    "contracted_lines",
    "detect_radial",
    "determinant",
    "eigen_line",
    "eigenpoints_numeric",
    "eigenscheme_preconditions",
    "expected_count",
    "fermat",
    "fermat_eigenpoints",
    "generators",
    "graded_betti",
    "gradient_solve",
    "hilbert_function",
    "hilbert_function_of_triple",
    "isotropic_conic",
    "jacobian_determinant",
    "koszul_solve",
    "laguerre_fiber",
    "lambda_of",
    "max_collinear",
    "nullspace_basis",
    "parse_poly",
    "rank",
    "recognize_partially_symmetric",
    "recognize_symmetric",
    "rref",
    "tangent_family_eigenstructure",
    "verify_koszul_identity",
    "verify_symmetric_identities",
]
