"""Integer and Gaussian-integer factorization.

Trial division (batched through gcds with prime products), deterministic
Miller-Rabin, perfect-power detection and Brent's variant of Pollard rho.
Large inputs may be factored only partially; the unfactored part is
returned as a cofactor rather than guessed at.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt, prod

import gmpy2
from gmpy2 import mpz

from .gaussian import ONE, GaussianInteger, canonical_associate, gaussian_gcd, unit_part

TRIAL_BOUND = 10**6
RHO_ITERATIONS = 200_000

# Deterministic for n < 3.3e24; a strong probable-prime test beyond.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_BLOCK = 512


@lru_cache(maxsize=8)
def primes_up_to(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, bound + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=8)
def _prime_blocks(bound: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    ps = primes_up_to(bound)
    return tuple(
        (prod(ps[i : i + _BLOCK]), ps[i : i + _BLOCK]) for i in range(0, len(ps), _BLOCK)
    )


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    n_mp = mpz(n)
    for a in _MR_BASES:
        x = gmpy2.powmod(a, d, n_mp)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _integer_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power(n: int) -> tuple[int, int]:
    """Return (m, k) with m**k == n and k maximal."""
    best = (n, 1)
    if n < 4:
        return best
    for k in primes_up_to(n.bit_length()):
        m = _integer_root(n, k)
        if m**k == n:
            m2, k2 = perfect_power(m)
            return m2, k * k2
    return best


def pollard_brent(n: int, max_iterations: int | None = RHO_ITERATIONS) -> int | None:
    """A nontrivial factor of the odd composite n, or None if the budget runs out.

    Deterministic: the polynomial constants and seeds are fixed.
    """
    if n % 2 == 0:
        return 2
    n = mpz(n)
    spent = 0
    for c in range(1, 64):
        y, r, q, g = mpz(2), 1, mpz(1), 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gmpy2.gcd(q, n)
                k += 128
            spent += r
            r *= 2
            if max_iterations is not None and spent > max_iterations and g == 1:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
        if g != n:
            return int(g)
    return None


def _trial(n: int, bound: int, found: dict[int, int]) -> int:
    limit = min(bound, isqrt(n))
    for block_prod, block in _prime_blocks(bound):
        if block[0] > limit or n == 1:
            break
        if gcd(n, block_prod) == 1:
            continue
        for p in block:
            while n % p == 0:
                n //= p
                found[p] = found.get(p, 0) + 1
    return n


def _split(n: int, mult: int, found: dict[int, int], leftover: dict[int, int], budget) -> None:
    if n == 1:
        return
    m, k = perfect_power(n)
    if k > 1:
        _split(m, mult * k, found, leftover, budget)
        return
    if is_prime(n):
        found[n] = found.get(n, 0) + mult
        return
    d = pollard_brent(n, budget)
    if d is None:
        leftover[n] = leftover.get(n, 0) + mult
        return
    g = gcd(d, n // d)
    if g > 1:
        # n = g^a * rest; split on the common part so the pieces stay coprime
        parts = []
        rest = n
        while rest % g == 0:
            rest //= g
            parts.append(g)
        _split(g, mult * len(parts), found, leftover, budget)
        _split(rest, mult, found, leftover, budget)
        return
    _split(d, mult, found, leftover, budget)
    _split(n // d, mult, found, leftover, budget)


def partial_factor(
    n: int, trial_bound: int = TRIAL_BOUND, rho_iterations: int | None = RHO_ITERATIONS
) -> tuple[list[tuple[int, int]], int]:
    """Factor |n| as far as the budget allows.

    Returns (factors, cofactor) with prod(p**e) * cofactor == |n|; the
    cofactor is 1 on complete success and otherwise a composite with no
    prime factor below ``trial_bound``.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    found: dict[int, int] = {}
    rest = _trial(n, trial_bound, found)
    leftover: dict[int, int] = {}
    _split(rest, 1, found, leftover, rho_iterations)
    cofactor = prod(c**e for c, e in leftover.items())
    return sorted(found.items()), cofactor


def factor_integer(n: int) -> list[tuple[int, int]]:
    """Complete factorization of n >= 1 into ascending (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factor_integer expects n >= 1")
    factors, cofactor = partial_factor(n, rho_iterations=None)
    assert cofactor == 1
    return factors


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"-1 is not a square modulo {p}")
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            r = pow(a, (p - 1) // 4, p)
            assert r * r % p == p - 1
            return r
    raise AssertionError("no quadratic non-residue found")


@lru_cache(maxsize=4096)
def gaussian_primes_over(p: int) -> tuple[GaussianInteger, ...]:
    """Canonical Gaussian primes above the rational prime p, sorted."""
    if p == 2:
        return (GaussianInteger(1, 1),)
    if p % 4 == 3:
        return (GaussianInteger(p, 0),)
    r = sqrt_minus_one(p)
    # gcd(p, r + i) is a prime of norm p
    pi = gaussian_gcd(GaussianInteger(p, 0), GaussianInteger(r, 1))
    assert pi.norm() == p
    return tuple(sorted({pi, canonical_associate(pi.conj())}, key=prime_sort_key))


def prime_sort_key(g: GaussianInteger) -> tuple[int, int, int]:
    return (g.norm(), g.re, g.im)


def gaussian_valuation(g: GaussianInteger, pi: GaussianInteger) -> int:
    if not g:
        raise ValueError("valuation of zero")
    v = 0
    while pi.divides(g):
        g = g.exact_div(pi)
        v += 1
    return v


def partial_factor_gaussian(
    g: GaussianInteger,
    trial_bound: int = TRIAL_BOUND,
    rho_iterations: int | None = RHO_ITERATIONS,
) -> tuple[GaussianInteger, list[tuple[GaussianInteger, int]], GaussianInteger]:
    """Factor g in Z[i] as (unit, [(prime, e)], cofactor).

    unit * prod(prime**e) * cofactor == g; the cofactor is canonical and
    equals 1 when the factorization is complete.
    """
    g = GaussianInteger.coerce(g)
    if not g:
        raise ValueError("cannot factor 0")
    content = gcd(g.re, g.im)
    rational_factors, rational_rest = partial_factor(content, trial_bound, rho_iterations)
    primitive = GaussianInteger(g.re // content, g.im // content)
    norm_factors, norm_rest = partial_factor(primitive.norm(), trial_bound, rho_iterations)
    primes = {p for p, _ in rational_factors} | {p for p, _ in norm_factors}
    out: list[tuple[GaussianInteger, int]] = []
    rest = g
    for p in sorted(primes):
        for pi in gaussian_primes_over(p):
            e = 0
            while pi.divides(rest):
                rest = rest.exact_div(pi)
                e += 1
            if e:
                out.append((pi, e))
    out.sort(key=lambda t: prime_sort_key(t[0]))
    if rational_rest == 1 and norm_rest == 1:
        unit = rest
        cofactor = ONE
        assert unit.norm() == 1
    else:
        cofactor = canonical_associate(rest)
        unit = unit_part(rest)
    return unit, out, cofactor


def factor_gaussian(g: GaussianInteger) -> tuple[GaussianInteger, list[tuple[GaussianInteger, int]]]:
    """Complete factorization g = unit * prod(prime**e) with canonical primes."""
    unit, factors, cofactor = partial_factor_gaussian(g, rho_iterations=None)
    assert cofactor == ONE
    return unit, factors


def gaussian_primes_up_to(bound: int) -> list[GaussianInteger]:
    """All canonical Gaussian primes of norm <= bound, sorted by (norm, re, im)."""
    out = []
    for p in primes_up_to(bound):
        for pi in gaussian_primes_over(p):
            if pi.norm() <= bound:
                out.append(pi)
    out.sort(key=prime_sort_key)
    return out
