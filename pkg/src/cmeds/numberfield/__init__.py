from .factor import (
    factor_gaussian,
    factor_integer,
    gaussian_primes_over,
    gaussian_primes_up_to,
    gaussian_valuation,
    is_prime,
    partial_factor,
    partial_factor_gaussian,
    primes_up_to,
)
from .gaussian import (
    I,
    ONE,
    UNITS,
    ZERO,
    GaussianInteger,
    GaussianRational,
    as_gaussian_rational,
    canonical_associate,
    gaussian_gcd,
    norm,
    unit_part,
)
from .ideals import (
    UNIT_IDEAL,
    FactoredIdeal,
    GaussianIdeal,
    Order,
    PreconditionError,
    check_order,
    coset_min_norm,
    elements_up_to_norm,
    factor_ideal,
    ideal,
    ideal_divisors,
    in_order,
    inverse_mod,
    lemma_k_gap,
    make_factored,
    mobius,
    mobius_sum_and_euler_product,
    units,
)
from .parse import (
    parse_factored_ideal,
    parse_gaussian,
    parse_gaussian_rational,
    parse_rational,
)

__all__ = [name for name in dir() if not name.startswith("_")]
