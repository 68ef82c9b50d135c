"""
Types of rank-1 torsion-free groups as piecewise-constant maps primes -> N ∪ {inf}.

A TypeRep stores one sequence; two sequences denote the same type when they
differ in finitely many finite entries, which `equivalent` decides.
"""
from dataclasses import dataclass
from functools import reduce, total_ordering
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from lattice.errors import IndexingMismatchError, InvariantBreach, LatticeError, PreconditionError
from lattice.prime_sets import PrimeIndexing, SymbolicPrimeSet


# ----------------------------------------------------------------------
# 1. Extended naturals
# ----------------------------------------------------------------------
@total_ordering
@dataclass(frozen=True)
class ExtendedNat:
    """Fin(n) or Inf (value None). Fin(n) < Fin(m) iff n < m; Fin(n) < Inf."""

    value: Optional[int] = None

    def __post_init__(self):
        if self.value is not None and (not isinstance(self.value, int) or self.value < 0):
            raise LatticeError(f"extended natural must be >= 0 or infinite, got {self.value!r}")

    @property
    def is_inf(self) -> bool:
        return self.value is None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def sort_key(self) -> Tuple[int, int]:
        return (1, 0) if self.value is None else (0, self.value)

    def __lt__(self, other: "ExtendedNat") -> bool:
        if not isinstance(other, ExtendedNat):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


def Fin(n: int) -> ExtendedNat:
    return ExtendedNat(n)


INF = ExtendedNat(None)
ZERO = Fin(0)


def ext_max(a: ExtendedNat, b: ExtendedNat) -> ExtendedNat:
    return a if a >= b else b


def ext_min(a: ExtendedNat, b: ExtendedNat) -> ExtendedNat:
    return a if a <= b else b


# ----------------------------------------------------------------------
# 2. Types
# ----------------------------------------------------------------------
Piece = Tuple[SymbolicPrimeSet, ExtendedNat]


@dataclass(frozen=True)
class TypeRep:
    """
    A characteristic (t_p) given by finitely many (prime set, value) pieces.

    Normal form: one piece per distinct value, no empty pieces, pieces sorted by
    value. Because normalized prime sets are unique, == compares sequences.
    """

    indexing: PrimeIndexing
    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        by_value: Dict[ExtendedNat, SymbolicPrimeSet] = {}
        covered = SymbolicPrimeSet.empty(self.indexing)
        for prime_set, value in self.pieces:
            if prime_set.indexing != self.indexing:
                raise IndexingMismatchError("piece built over a different indexing")
            if not covered.intersect(prime_set).is_empty():
                raise LatticeError(f"pieces overlap on {covered.intersect(prime_set)}")
            covered = covered.union(prime_set)
            if value in by_value:
                by_value[value] = by_value[value].union(prime_set)
            else:
                by_value[value] = prime_set
        if covered != SymbolicPrimeSet.universe(self.indexing):
            raise LatticeError(f"pieces do not cover every prime (missing {covered.complement()})")
        pieces = tuple(
            (s, v) for v, s in sorted(by_value.items(), key=lambda item: item[0].sort_key()) if not s.is_empty()
        )
        object.__setattr__(self, "pieces", pieces)

    # ---- constructors ------------------------------------------------
    @classmethod
    def constant(cls, indexing: PrimeIndexing, value: ExtendedNat) -> "TypeRep":
        return cls(indexing, ((SymbolicPrimeSet.universe(indexing), value),))

    @classmethod
    def zero(cls, indexing: PrimeIndexing) -> "TypeRep":
        """Type of the integers."""
        return cls.constant(indexing, ZERO)

    @classmethod
    def rationals(cls, indexing: PrimeIndexing) -> "TypeRep":
        """Type of Q."""
        return cls.constant(indexing, INF)

    @classmethod
    def localization(cls, indexing: PrimeIndexing, q: int) -> "TypeRep":
        """Type of Z_(q): 0 at q, infinite elsewhere."""
        return cls.rationals(indexing).override(SymbolicPrimeSet.finite(indexing, [q]), ZERO)

    @classmethod
    def from_cell_values(
        cls,
        indexing: PrimeIndexing,
        cell_values: Sequence[ExtendedNat],
        exceptions: Optional[Dict[int, ExtendedNat]] = None,
    ) -> "TypeRep":
        """One value per cell, then explicit per-prime overrides."""
        if len(cell_values) != indexing.modulus:
            raise LatticeError(f"expected {indexing.modulus} cell values, got {len(cell_values)}")
        grouped: Dict[ExtendedNat, List[int]] = {}
        for i, value in enumerate(cell_values):
            grouped.setdefault(value, []).append(i)
        rep = cls(indexing, tuple((SymbolicPrimeSet.of_cells(indexing, cells), v) for v, cells in grouped.items()))
        for p, value in sorted((exceptions or {}).items()):
            rep = rep.override(SymbolicPrimeSet.finite(indexing, [p]), value)
        return rep

    def override(self, prime_set: SymbolicPrimeSet, value: ExtendedNat) -> "TypeRep":
        """Same sequence with every entry on `prime_set` replaced by `value`."""
        pieces = [(s.difference(prime_set), v) for s, v in self.pieces]
        pieces.append((prime_set, value))
        return TypeRep(self.indexing, tuple(pieces))

    # ---- access ------------------------------------------------------
    def value_at(self, p: int) -> ExtendedNat:
        for prime_set, value in self.pieces:
            if prime_set.contains(p):
                return value
        raise InvariantBreach(f"no piece contains {p}")

    def values(self) -> Tuple[ExtendedNat, ...]:
        return tuple(v for _, v in self.pieces)

    def support(self, predicate: Callable[[ExtendedNat], bool]) -> SymbolicPrimeSet:
        """Primes whose entry satisfies `predicate`."""
        result = SymbolicPrimeSet.empty(self.indexing)
        for prime_set, value in self.pieces:
            if predicate(value):
                result = result.union(prime_set)
        return result

    def cell_value(self, i: int) -> ExtendedNat:
        """Value on all but finitely many primes of cell i."""
        for prime_set, value in self.pieces:
            if i in prime_set.cells:
                return value
        raise InvariantBreach(f"no piece contains cell {i}")


# ----------------------------------------------------------------------
# 3. Common refinement
# ----------------------------------------------------------------------
RefinedPiece = Tuple[SymbolicPrimeSet, ExtendedNat, ExtendedNat]


def _check_pair(tau: TypeRep, rho: TypeRep) -> None:
    if tau.indexing != rho.indexing:
        raise IndexingMismatchError(
            f"mixed indexings: modulus {tau.indexing.modulus} vs {rho.indexing.modulus}"
        )


def refine(tau: TypeRep, rho: TypeRep) -> List[RefinedPiece]:
    """Nonempty pairwise intersections (set, value in tau, value in rho)."""
    _check_pair(tau, rho)
    refined = []
    for s, a in tau.pieces:
        for r, b in rho.pieces:
            both = s.intersect(r)
            if not both.is_empty():
                refined.append((both, a, b))
    return refined


def _union(indexing: PrimeIndexing, sets: Iterable[SymbolicPrimeSet]) -> SymbolicPrimeSet:
    return reduce(SymbolicPrimeSet.union, sets, SymbolicPrimeSet.empty(indexing))


# ----------------------------------------------------------------------
# 4. Decision procedures
# ----------------------------------------------------------------------
def equivalent(tau: TypeRep, rho: TypeRep) -> bool:
    """Sequences differ in finitely many entries, all of them finite."""
    differing = []
    for s, a, b in refine(tau, rho):
        if a == b:
            continue
        if a.is_inf or b.is_inf:
            return False
        differing.append(s)
    return _union(tau.indexing, differing).is_finite()


def bad_set(tau: TypeRep, rho: TypeRep) -> SymbolicPrimeSet:
    """Primes with value_at(tau, p) > value_at(rho, p)."""
    return _union(tau.indexing, (s for s, a, b in refine(tau, rho) if a > b))


def leq(tau: TypeRep, rho: TypeRep) -> bool:
    """tau has a representative pointwise <= rho: finitely many bad primes, none infinite in tau."""
    bad = bad_set(tau, rho)
    return bad.is_finite() and all(tau.value_at(p).is_finite for p in bad.iter_primes())


def strictly_less(tau: TypeRep, rho: TypeRep) -> bool:
    return leq(tau, rho) and not leq(rho, tau)


def compare(tau: TypeRep, rho: TypeRep) -> str:
    """One of 'equivalent', 'less', 'greater', 'incomparable'."""
    below, above = leq(tau, rho), leq(rho, tau)
    if below and above:
        return "equivalent"
    if below:
        return "less"
    if above:
        return "greater"
    return "incomparable"


# ----------------------------------------------------------------------
# 5. Lattice operations
# ----------------------------------------------------------------------
def _pointwise(tau: TypeRep, rho: TypeRep, op: Callable[[ExtendedNat, ExtendedNat], ExtendedNat]) -> TypeRep:
    return TypeRep(tau.indexing, tuple((s, op(a, b)) for s, a, b in refine(tau, rho)))


def join(tau: TypeRep, rho: TypeRep) -> TypeRep:
    return _pointwise(tau, rho, ext_max)


def meet(tau: TypeRep, rho: TypeRep) -> TypeRep:
    return _pointwise(tau, rho, ext_min)


def join_all(types: Iterable[TypeRep]) -> TypeRep:
    types = list(types)
    if not types:
        raise LatticeError("join_all needs at least one type")
    return reduce(join, types)


def meet_all(types: Iterable[TypeRep]) -> TypeRep:
    types = list(types)
    if not types:
        raise LatticeError("meet_all needs at least one type")
    return reduce(meet, types)


def normalize_pair(tau: TypeRep, rho: TypeRep) -> Tuple[TypeRep, TypeRep]:
    """
    Lower tau at its finitely many bad primes so that tau' <= rho pointwise.

    Raises:
        PreconditionError: if not leq(tau, rho).
    """
    if not leq(tau, rho):
        raise PreconditionError("normalize_pair requires leq(tau, rho)")
    lowered = tau
    for p in bad_set(tau, rho).iter_primes():
        lowered = lowered.override(SymbolicPrimeSet.finite(tau.indexing, [p]), rho.value_at(p))
    return lowered, rho
