"""Run configuration for scans and verification suites."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .numberfield.factor import TRIAL_BOUND


@dataclass(frozen=True)
class ScanConfig:
    """Knobs shared by term generation, primitive-divisor scans and lemma checks.

    ``rho_iterations`` bounds Pollard rho per composite; whatever it cannot
    split is carried as an unfactored cofactor. ``prime_cap`` bounds the
    norms of primes examined by the lemma suite and the torsion-injectivity
    part of the bad-place set.
    """

    trial_bound: int = TRIAL_BOUND
    rho_iterations: int | None = 20_000
    prime_cap: int = 10_000
    include_zero: bool = True

    def __post_init__(self):
        if self.trial_bound < 2:
            raise ValueError("trial_bound must be at least 2")
        if self.prime_cap < 2:
            raise ValueError("prime_cap must be at least 2")
        if self.rho_iterations is not None and self.rho_iterations < 0:
            raise ValueError("rho_iterations must be nonnegative")

    def with_(self, **changes) -> "ScanConfig":
        return replace(self, **changes)


DEFAULT_CONFIG = ScanConfig()
