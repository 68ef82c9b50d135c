"""Prime enumeration and a closed, decidable algebra of symbolic prime sets."""
import threading
from bisect import bisect_left
from math import isqrt
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, List, Optional

import numpy as np

from config.config import SIEVE_INITIAL_LIMIT, SIEVE_MAX_LIMIT
from lattice.errors import IndexingMismatchError, LatticeError, NotPrimeError


# ----------------------------------------------------------------------
# 1. Sieve
# ----------------------------------------------------------------------
def simple_sieve(limit: int) -> List[int]:
    """All primes <= limit, as Python ints."""
    if limit < 2:
        return []
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p: limit + 1: p] = False
    return np.flatnonzero(is_prime).tolist()


class _PrimeCache:
    """Append-only prime table; grows by re-sieving at double the limit."""

    def __init__(self, initial_limit: int = SIEVE_INITIAL_LIMIT):
        self._lock = threading.Lock()
        self._limit = initial_limit
        self._primes: List[int] = simple_sieve(initial_limit)

    def _grow_to(self, limit: int) -> None:
        if limit > SIEVE_MAX_LIMIT:
            raise LatticeError(f"sieve ceiling exceeded: {limit} > {SIEVE_MAX_LIMIT}")
        with self._lock:
            if limit <= self._limit:
                return
            new_limit = self._limit
            while new_limit < limit:
                new_limit *= 2
            new_limit = min(new_limit, SIEVE_MAX_LIMIT)
            primes = simple_sieve(new_limit)
            # prefix of the new table equals the old one, so readers never see a shrink
            self._primes = primes
            self._limit = new_limit

    def ensure_count(self, count: int) -> None:
        while len(self._primes) < count:
            if self._limit >= SIEVE_MAX_LIMIT:
                raise LatticeError(f"sieve ceiling reached: fewer than {count} primes below {SIEVE_MAX_LIMIT}")
            self._grow_to(min(self._limit * 2, SIEVE_MAX_LIMIT))

    def ensure_limit(self, n: int) -> None:
        if n > self._limit:
            self._grow_to(n)

    def nth(self, j: int) -> int:
        self.ensure_count(j + 1)
        return self._primes[j]

    def index_of(self, n: int) -> Optional[int]:
        """Index j with p_j == n, or None when n is not prime."""
        if n < 2:
            return None
        self.ensure_limit(n)
        primes = self._primes
        j = bisect_left(primes, n)
        if j < len(primes) and primes[j] == n:
            return j
        return None


_CACHE = _PrimeCache()


def nth_prime(j: int) -> int:
    """The (j+1)-th prime: nth_prime(0) == 2."""
    if j < 0:
        raise LatticeError(f"prime index must be >= 0, got {j}")
    return _CACHE.nth(j)


def is_prime(n: int) -> bool:
    return _CACHE.index_of(n) is not None


def prime_index(p: int) -> int:
    """Index j with nth_prime(j) == p."""
    j = _CACHE.index_of(p)
    if j is None:
        raise NotPrimeError(f"{p} is not prime")
    return j


def first_primes(count: int) -> List[int]:
    return [nth_prime(j) for j in range(count)]


# ----------------------------------------------------------------------
# 2. Indexing
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class PrimeIndexing:
    """Partition of the primes into `modulus` infinite cells: cell(i) = {p_j : j = i mod k}."""

    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise LatticeError(f"modulus must be a positive integer, got {self.modulus!r}")

    def cell_of(self, p: int) -> int:
        return prime_index(p) % self.modulus

    def all_cells(self) -> FrozenSet[int]:
        return frozenset(range(self.modulus))


# ----------------------------------------------------------------------
# 3. Symbolic prime sets
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SymbolicPrimeSet:
    """
    Denotes (union of cells  ∪  plus) minus `minus`.

    Always stored normalized: plus lies outside the cells, minus inside them.
    For a given denotation the normalized form is unique, so == is set equality.
    """

    indexing: PrimeIndexing
    cells: FrozenSet[int] = field(default_factory=frozenset)
    plus: FrozenSet[int] = field(default_factory=frozenset)
    minus: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        cells = frozenset(self.cells)
        bad = [i for i in cells if not 0 <= i < self.indexing.modulus]
        if bad:
            raise LatticeError(f"cell indices {sorted(bad)} out of range for modulus {self.indexing.modulus}")
        for p in set(self.plus) | set(self.minus):
            if not is_prime(p):
                raise NotPrimeError(f"{p} is not prime")
        k = self.indexing.modulus
        minus = frozenset(self.minus)
        plus = frozenset(p for p in self.plus if p not in minus and prime_index(p) % k not in cells)
        minus = frozenset(p for p in minus if prime_index(p) % k in cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    # ---- constructors ------------------------------------------------
    @classmethod
    def empty(cls, indexing: PrimeIndexing) -> "SymbolicPrimeSet":
        return cls(indexing)

    @classmethod
    def universe(cls, indexing: PrimeIndexing) -> "SymbolicPrimeSet":
        return cls(indexing, indexing.all_cells())

    @classmethod
    def cell(cls, indexing: PrimeIndexing, i: int) -> "SymbolicPrimeSet":
        return cls(indexing, frozenset([i]))

    @classmethod
    def of_cells(cls, indexing: PrimeIndexing, cells: Iterable[int]) -> "SymbolicPrimeSet":
        return cls(indexing, frozenset(cells))

    @classmethod
    def finite(cls, indexing: PrimeIndexing, primes: Iterable[int]) -> "SymbolicPrimeSet":
        return cls(indexing, frozenset(), frozenset(primes))

    # ---- membership --------------------------------------------------
    def _member_at(self, p: int, j: int) -> bool:
        if p in self.plus:
            return True
        return (j % self.indexing.modulus) in self.cells and p not in self.minus

    def contains(self, p: int) -> bool:
        return self._member_at(p, prime_index(p))

    def __contains__(self, p: int) -> bool:
        return self.contains(p)

    # ---- algebra -----------------------------------------------------
    def _check_same(self, other: "SymbolicPrimeSet") -> None:
        if self.indexing != other.indexing:
            raise IndexingMismatchError(
                f"mixed indexings: modulus {self.indexing.modulus} vs {other.indexing.modulus}"
            )

    def _combine(self, other: "SymbolicPrimeSet", cells: FrozenSet[int], op) -> "SymbolicPrimeSet":
        # Outside the explicit primes of both operands membership is decided by cells alone
        exceptional = self.plus | self.minus | other.plus | other.minus
        if not exceptional:
            return SymbolicPrimeSet(self.indexing, cells)
        k = self.indexing.modulus
        plus, minus = set(), set()
        for p in exceptional:
            j = prime_index(p)
            inside = op(self._member_at(p, j), other._member_at(p, j))
            in_cells = (j % k) in cells
            if inside and not in_cells:
                plus.add(p)
            elif not inside and in_cells:
                minus.add(p)
        return SymbolicPrimeSet(self.indexing, cells, frozenset(plus), frozenset(minus))

    def union(self, other: "SymbolicPrimeSet") -> "SymbolicPrimeSet":
        self._check_same(other)
        return self._combine(other, self.cells | other.cells, lambda a, b: a or b)

    def intersect(self, other: "SymbolicPrimeSet") -> "SymbolicPrimeSet":
        self._check_same(other)
        return self._combine(other, self.cells & other.cells, lambda a, b: a and b)

    def difference(self, other: "SymbolicPrimeSet") -> "SymbolicPrimeSet":
        self._check_same(other)
        return self._combine(other, self.cells - other.cells, lambda a, b: a and not b)

    def complement(self) -> "SymbolicPrimeSet":
        return SymbolicPrimeSet.universe(self.indexing).difference(self)

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def __invert__(self) -> "SymbolicPrimeSet":
        return self.complement()

    # ---- queries -----------------------------------------------------
    def is_empty(self) -> bool:
        return not self.cells and not self.plus

    def is_finite(self) -> bool:
        return not self.cells

    def is_infinite(self) -> bool:
        return bool(self.cells)

    def is_cofinite(self) -> bool:
        return self.cells == self.indexing.all_cells()

    def is_subset(self, other: "SymbolicPrimeSet") -> bool:
        return self.difference(other).is_empty()

    def explicit_primes(self) -> FrozenSet[int]:
        return self.plus | self.minus

    def iter_primes(self) -> Iterator[int]:
        """Members in increasing order; terminates exactly when the set is finite."""
        if self.is_empty():
            return
        bound = max(self.plus) if self.is_finite() else None
        j = 0
        while True:
            p = nth_prime(j)
            if bound is not None and p > bound:
                return
            if self._member_at(p, j):
                yield p
            j += 1

    def least_element(self) -> Optional[int]:
        return next(self.iter_primes(), None)

    def __str__(self) -> str:
        if self.is_empty():
            return "empty"
        if self.is_cofinite():
            text = "all"
        elif self.cells:
            text = f"mod {self.indexing.modulus} = {{{', '.join(str(i) for i in sorted(self.cells))}}}"
        else:
            text = ""
        if self.plus:
            plus = "{" + ", ".join(str(p) for p in sorted(self.plus)) + "}"
            text = f"{text} + {plus}" if text else plus
        if self.minus:
            text += " - {" + ", ".join(str(p) for p in sorted(self.minus)) + "}"
        return text
