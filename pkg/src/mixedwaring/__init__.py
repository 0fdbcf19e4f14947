"""Two squares and three (or four) biquadrates: constructive representations,
circle-method numerics, sieve counts and exceptional-set scans."""

from .arith import (
    eisenstein_decompose,
    factorize,
    is_prime,
    is_sum_of_two_squares,
    kronecker,
    rho,
    two_square_decompose,
)
from .builder import (
    admissibility,
    biquadrate_identity,
    corollary_shift,
    decompose_16,
    enumerate_A,
    find_all_representations,
    find_representation,
    select_case,
)
from .circle import (
    gamma_main_constant,
    gauss_sum,
    local_density,
    local_factor,
    main_term,
    singular_integral,
    singular_series,
    w_k,
)
from .counting import build_table, rep_count_oracle
from .scanner import PsiSpec, exponent_fit, scan
from .sieve import eh_remainder, sieve_constant, sieve_counts

__version__ = "0.1.0"
