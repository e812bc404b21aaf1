"""Finite quantum symmetries toolkit.

Verifies the defining relations of quantum families of invertible maps on a
finite quantum space, computes Hopf images and generated quantum subgroups
of finite quantum groups, tests inner faithfulness via Cesaro means of
convolution powers, and implements the completion of quantum increasing
sequences to magic unitaries -- all cross-checked against classical
group-theory brute force.
"""

from .errors import (
    ConvergenceError, InternalCheckError, MethodDisagreementError,
    PreconditionError, ShapeError,
)
from .linalg import Subspace, Tolerance
from .algebras import (
    OrthoBasisData, StarAlgebra, StarHom, StateFunctional, check_star_hom,
    check_state, direct_sum, from_blocks, function_algebra, orthonormalize,
    tensor, trace_state, uniform_state,
)
from .groups import FiniteGroup, Permutation, closure, parse_cycles
from .families import (
    FamilyCheckReport, QuantumFamily, check_family, compose,
    family_from_magic_unitary, iterate, permutation_family, trivial_family,
)
from .quantumgroups import (
    FiniteQuantumGroup, Functional, cesaro_mean, convolve, cqg_function_algebra,
    cqg_group_algebra, dual, extract_group, iterated_coproduct,
)
from .hopfimage import (
    HopfImageResult, dual_generated_dim, generated_from_family,
    generated_subgroup, hopf_image, inner_faithful, lambda_n,
)
from .increasing import (
    IncreasingSequenceRep, MagicUnitaryRep, classical_rep, complete,
    free_pair_rep, s4_generation_check, two_projection_pair, validate,
)

__version__ = "0.1.0"
