"""Exact first Betti numbers of finite-index subgroups of split metabelian groups.

The groups are (k[Z^n]/I) ⋊ Z^n for an ideal I of the Laurent ring k[Z^n].
"""

__version__ = "0.1.0"

from .coinvariants import (
    DimReport,
    IdealImage,
    betti_split,
    coinvariant_dim,
    ideal_equal_Jm_Jmr,
    ideal_image,
    member_of_Jm,
    project,
)
from .fields import QQ, Field, FieldElement, discrete_log, make_extension_field, multiplicative_generator, prime_field
from .groebner import MonomialOrder, buchberger, crosscheck_dim, laurent_ideal_basis, staircase_dimension
from .lattice import Lattice, congruence_lattice, cosets, hnf, kernel_lattice_prop53
from .laurent import CharacterClass, LaurentPolynomial, newton_polygon, parse_polynomial
from .sigma import SigmaReport, is_two_tame, sigma_complement_principal
from .stability import (
    M0Bound,
    StabilizationReport,
    demo_prop51,
    demo_prop53,
    demo_wreath,
    dim_sequence,
    m0_candidates,
    substitution_oracle_dim,
)
