"""symid: primary decomposition of permutation-invariant polynomial ideals
over the rationals, with a symmetry-aware decomposition that computes one
primary component per group orbit and transports the rest."""

from .multipoly import (
    BlockElim, GREVLEX, LEX, Grevlex, Lex, MonomialOrder, ParseError,
    Polynomial, arith, compare, format_poly, parse_poly,
)
from .unifactor import Factorization, UniPoly, factor, is_irreducible, squarefree
from .groebner import (
    GroebnerBasis, buchberger, ideal_equal, member, normal_form, s_polynomial,
)
from .ideal_ops import (
    Ideal, dim_and_mis, eliminate, hull_wrt_mis, ideal_sum, intersect,
    intersect_many, quotient, radical_member, saturate, saturate_only,
)
from .zerodim import Staircase, minimal_polynomial, staircase, zerodim_minimal_primes
from .minprimes import certify_prime, is_prime_known, minimal_primes
from .perm import (
    OrbitPartition, PermGroup, Permutation, act_on_ideal, closure,
    format_cycles, is_invariant, orbit_decompose, parse_cycles,
    symmetric_group,
)
from .sy_decomp import (
    DecompositionResult, PrimaryComponent, PseudoPrimaryPart, SeparatorSystem,
    g_invariant_separators, isolated_primary_component,
    pseudo_primary_decomposition, saturated_separating_ideal, separators, sy,
    symmetric_sy, verify,
)

__version__ = "0.1.0"
