"""Exact Lie algebra cohomology with degree-zero reduction by ad-semisimple gradings."""

from .complex import (Cochain, CochainBasis, apply_coboundary, coboundary_matrix_direct,
                      coboundary_matrix_recursive, cochain_basis, contract, evaluate_cochain)
from .driver import (CohomologyReport, betti_numbers, graded_betti, invariants,
                     verify_borel_theorem)
from .errors import (CohomologyError, FieldError, GradingError, InternalError, NotSemisimpleError,
                     NotSplitError, ParseError, ValidationError)
from .fields import GF, QQ, Field, FieldElement, field_arithmetic, rational_root_candidates
from .grading import (Grading, cartan_grading, cochain_degree, degree_zero_part_of_cocycle,
                      degree_zero_subcomplex, iterated_contraction_check, make_grading,
                      primitive_of_homogeneous_cocycle, verify_adss)
from .lie import CartanTag, GModule, LieAlgebra, builtin_algebra, make_algebra, make_module
from .linalg import SparseMatrix, kernel_basis, rank, solve

__all__ = [name for name in dir() if not name.startswith("_")]
