"""Exact linear algebra for two direct-sum decompositions E = V1 ⊕ V2 = W1 ⊕ W2.

Everything is computed over ℚ (``fractions.Fraction``) or a prime field
GF(p), p odd, with subspaces held in canonical RREF form.
"""

from .field import GF, QQ, FieldError, FieldSpec
from .matrix import Matrix, image, kernel, matpow_kernel, rref
from .subspace import Subspace, quotient_coords, span
from .report import PreconditionError, TheoremReport
from .twosum import (CanonicalSplit, NotComplementary, Sigma, TwoSumDecomposition, canonical_split,
                     chains, dual, make, projector, theta, verify_section2)
from .lattice import (FiveSumInvariant, SubspaceLattice, closure, five_sum_invariant, to_dot,
                      verify_theta2_lattice, verify_treillis_homogene)
from .reflexive import BilinearForm, FormKind, isotropy, perp, verify_ffforth
from .representation import (MatrixLieAlgebra, generalized_eigenspace, lie_closure, verify_deux_isotropes,
                             verify_olbrich, verify_ts, weakly_irreducible_oracle)
from .curvature import (CurvatureTensor, berger_algebra, bianchi_check, curvature_solution_space,
                        verify_metric_theorem, verify_theta2_corollary)

__version__ = "0.1.0"
