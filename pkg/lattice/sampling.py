"""Seeded random types and type pairs for the self-test suites."""
import random
from typing import Any, Dict, Optional, Tuple

from config.config import SAMPLING
from lattice.ext_oracle import CompletelyDecomposable
from lattice.prime_sets import PrimeIndexing, SymbolicPrimeSet, first_primes
from lattice.type_lattice import ExtendedNat, TypeRep, join, strictly_less


def _value(raw: Optional[int]) -> ExtendedNat:
    return ExtendedNat(raw)


class TypeSampler:
    """All draws come from one random.Random, so a seed fixes every sample."""

    def __init__(self, indexing: PrimeIndexing, seed: int, settings: Optional[Dict[str, Any]] = None):
        self.indexing = indexing
        self.rng = random.Random(seed)
        self.settings = {**SAMPLING, **(settings or {})}
        self.exception_primes = first_primes(self.settings["exception_prime_count"])

    def value(self) -> ExtendedNat:
        return _value(self.rng.choice(self.settings["value_pool"]))

    def type(self) -> TypeRep:
        """Up to max_distinct_values cell values plus a few explicit prime overrides."""
        pool = self.settings["value_pool"]
        distinct = self.rng.randint(1, min(self.settings["max_distinct_values"], len(pool)))
        chosen = self.rng.sample(pool, distinct)
        cell_values = [_value(self.rng.choice(chosen)) for _ in range(self.indexing.modulus)]
        exceptions = {
            self.rng.choice(self.exception_primes): self.value()
            for _ in range(self.rng.randint(0, self.settings["max_exceptions"]))
        }
        return TypeRep.from_cell_values(self.indexing, cell_values, exceptions)

    def raise_finitely(self, tau: TypeRep, rho: TypeRep) -> TypeRep:
        """tau pushed above rho at a few primes where rho is finite; leq(tau, rho) still holds."""
        result = tau
        for _ in range(self.rng.randint(1, self.settings["max_exceptions"])):
            p = self.rng.choice(self.exception_primes)
            r = rho.value_at(p)
            if r.is_finite:
                result = result.override(SymbolicPrimeSet.finite(self.indexing, [p]), _value(r.value + self.rng.randint(1, 3)))
        return result

    def leq_pair(self) -> Tuple[TypeRep, TypeRep]:
        """A pair with leq(tau, rho) that is usually not pointwise ordered."""
        tau = self.type()
        rho = join(tau, self.type())
        return self.raise_finitely(tau, rho), rho

    def strict_pair(self, attempts: int = 1000) -> Tuple[TypeRep, TypeRep]:
        for _ in range(attempts):
            tau, rho = self.leq_pair()
            if strictly_less(tau, rho):
                return tau, rho
        # the Z-type is below every type except those equivalent to it
        return TypeRep.zero(self.indexing), TypeRep.rationals(self.indexing)

    def both_finite_pair(self) -> Tuple[TypeRep, TypeRep]:
        """Normalized strict pair with 0 < t_p <= r_p < inf everywhere."""
        k = self.indexing.modulus
        t_values = [self.rng.randint(1, 3) for _ in range(k)]
        r_values = [t + self.rng.randint(0, 2) for t in t_values]
        strict_cell = self.rng.randrange(k)
        if r_values[strict_cell] == t_values[strict_cell]:
            r_values[strict_cell] += 1
        tau = TypeRep.from_cell_values(self.indexing, [_value(t) for t in t_values])
        rho = TypeRep.from_cell_values(self.indexing, [_value(r) for r in r_values])
        return tau, rho

    def completely_decomposable(self, max_rank: int = 5) -> CompletelyDecomposable:
        return CompletelyDecomposable(tuple(self.type() for _ in range(self.rng.randint(0, max_rank))))

    def above(self, tau: TypeRep) -> TypeRep:
        """A random type sigma with leq(tau, sigma)."""
        return join(tau, self.type())

    def prime_set(self) -> SymbolicPrimeSet:
        k = self.indexing.modulus
        cells = [i for i in range(k) if self.rng.random() < 0.5]
        explicit = self.settings["max_exceptions"]
        plus = self.rng.sample(self.exception_primes, self.rng.randint(0, explicit))
        minus = self.rng.sample(self.exception_primes, self.rng.randint(0, explicit))
        return SymbolicPrimeSet(self.indexing, frozenset(cells), frozenset(plus), frozenset(minus))

    def finite_perturbation(self, tau: TypeRep) -> TypeRep:
        """Equivalent type: a few finite entries replaced by other finite values."""
        result = tau
        for _ in range(self.rng.randint(1, self.settings["max_exceptions"])):
            p = self.rng.choice(self.exception_primes)
            if result.value_at(p).is_finite:
                result = result.override(SymbolicPrimeSet.finite(self.indexing, [p]), _value(self.rng.randint(0, 5)))
        return result
