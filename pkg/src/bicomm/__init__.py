"""Exact commutants, bicommutants and inner derivations of matrices.

Matrices and polynomials live over Q or a prime field F_p with exact
arithmetic throughout.
"""
from .errors import *  # noqa: F401,F403
from .field import FieldElement, FieldKind, FieldSpec, GF, QQ, fe_canonicalize, fe_inverse
from .poly import (Poly, companion, poly_eval_matrix, poly_ext_gcd, poly_gcd, poly_lcm,
                   poly_squarefree)
from .factor import Factorization, poly_factor
from .matrix import (Mat, Subspace, block_diag, column_space, jordan_block, kron,
                     mat_inverse, mat_nullspace, mat_rank, mat_rref, mat_solve,
                     subspace_contains, sylvester_operator)
from .modstruct import (ModuleStructure, PolyMat, PrimaryComponent, characteristic_polynomial,
                        invariant_factors, minimal_polynomial, primary_decomposition,
                        primary_exponent, smith_normal_form, structure_violations,
                        vector_annihilator)
from .commalg import (AlgebraBasis, algebra_center, bicommutant_basis, commutant_basis,
                      express_as_polynomial, extend_endomorphism, kernel_power,
                      polynomial_algebra, restrict, transpose_bicommutant_check)
from .deriv import (DerivationOp, RationalFn, derivation_matrix, f_dot_mixed, f_dot_series,
                    p_dot, preimage_witness, r_dot, range_kernel_report, sylvester_solve)
from .padic import TruncatedPAdic, act_on_module, embed_rational, padic_arith, project

__version__ = "0.1.0"
