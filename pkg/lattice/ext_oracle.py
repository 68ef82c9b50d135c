"""
Ext-vanishing between rank-1 groups, decided two independent ways.

`ext_vanishes_rank1` evaluates the criterion on types directly: X lies in T^⊥
iff x_p = inf for all but finitely many p with 0 < t_p < inf, and for every p
with t_p = inf. `vanishes_via_shape` reaches the same answer from the
component shape of the quotient X / X_τ.
"""
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Iterable, Optional, Tuple

from lattice.errors import LatticeError
from lattice.prime_sets import SymbolicPrimeSet
from lattice.type_lattice import TypeRep, join_all, leq, meet_all, refine


# ----------------------------------------------------------------------
# 1. Criterion on types
# ----------------------------------------------------------------------
def ext_vanishes_rank1(T: TypeRep, X: TypeRep) -> bool:
    """Ext(T, X) = 0 for rank-1 T, X."""
    finite_exceptions = SymbolicPrimeSet.empty(T.indexing)
    for s, t, x in refine(T, X):
        if x.is_inf:
            continue
        if t.is_inf:
            return False
        if t.value != 0:
            finite_exceptions = finite_exceptions.union(s)
    return finite_exceptions.is_finite()


class ExtClass(str, Enum):
    """Cardinality of Ext(T, X) for rank-1 groups: zero or the continuum."""

    ZERO = "Zero"
    CONTINUUM = "Continuum"


def ext_class(T: TypeRep, X: TypeRep) -> ExtClass:
    return ExtClass.ZERO if ext_vanishes_rank1(T, X) else ExtClass.CONTINUUM


# ----------------------------------------------------------------------
# 2. Quotient shape
# ----------------------------------------------------------------------
class ComponentKind(str, Enum):
    TRIVIAL = "Trivial"
    CYCLIC = "CyclicOfOrder"
    PADIC = "PadicCopy"


@dataclass(frozen=True)
class ShapeComponent:
    """
    One kind of factor of X / X_τ, carried by every prime in `primes`.

    CYCLIC: X / p^e X, cyclic of order p^e (e = t_p).
    PADIC: a copy of the p-adic integers inside Ext(Z_{p^inf}, X).
    """

    kind: ComponentKind
    primes: SymbolicPrimeSet
    exponent: Optional[int] = None

    def order_at(self, p: int) -> Optional[int]:
        if self.kind is ComponentKind.CYCLIC:
            return p ** self.exponent
        if self.kind is ComponentKind.TRIVIAL:
            return 1
        return None


@dataclass(frozen=True)
class CotorsionQuotientShape:
    components: Tuple[ShapeComponent, ...]

    def of_kind(self, kind: ComponentKind) -> Tuple[ShapeComponent, ...]:
        return tuple(c for c in self.components if c.kind is kind)

    def cyclic_components(self) -> Tuple[ShapeComponent, ...]:
        return self.of_kind(ComponentKind.CYCLIC)

    def padic_components(self) -> Tuple[ShapeComponent, ...]:
        return self.of_kind(ComponentKind.PADIC)


def _component_key(component: ShapeComponent):
    order = {ComponentKind.TRIVIAL: 0, ComponentKind.CYCLIC: 1, ComponentKind.PADIC: 2}
    return order[component.kind], component.exponent or 0


def quotient_shape(X: TypeRep, tau: TypeRep) -> CotorsionQuotientShape:
    """Rank-1 shape of X / X_τ, built from the supports of X and τ."""
    x_finite = X.support(lambda v: v.is_finite)
    components = []
    padic = x_finite & tau.support(lambda v: v.is_inf)
    if not padic.is_empty():
        components.append(ShapeComponent(ComponentKind.PADIC, padic))
    for value in tau.values():
        if value.is_inf or value.value == 0:
            continue
        cyclic = x_finite & tau.support(lambda v, e=value: v == e)
        if not cyclic.is_empty():
            components.append(ShapeComponent(ComponentKind.CYCLIC, cyclic, value.value))
    covered = reduce(SymbolicPrimeSet.union, (c.primes for c in components), SymbolicPrimeSet.empty(X.indexing))
    trivial = covered.complement()
    if not trivial.is_empty():
        components.append(ShapeComponent(ComponentKind.TRIVIAL, trivial))
    return CotorsionQuotientShape(tuple(sorted(components, key=_component_key)))


def vanishes_via_shape(shape: CotorsionQuotientShape) -> bool:
    """No p-adic copy and only finitely many nonzero cyclic factors (else uncountable)."""
    if any(not c.primes.is_empty() for c in shape.padic_components()):
        return False
    cyclic = [c.primes for c in shape.cyclic_components()]
    if not cyclic:
        return True
    return reduce(SymbolicPrimeSet.union, cyclic).is_finite()


# ----------------------------------------------------------------------
# 3. Completely decomposable groups
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class CompletelyDecomposable:
    """Finite direct sum of rank-1 groups; the empty sum is the zero group."""

    summands: Tuple[TypeRep, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.summands)


def ext_vanishes_cd(T: CompletelyDecomposable, X: CompletelyDecomposable) -> bool:
    return all(ext_vanishes_rank1(t, x) for t in T.summands for x in X.summands)


# ----------------------------------------------------------------------
# 4. Rational cotorsion theories
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class RationalCotorsionTheory:
    """
    The cotorsion theory cogenerated by a rank-1 group of type `cogenerator`.

    Ordered by inclusion of cotorsion classes, which reverses the order of types.
    """

    cogenerator: TypeRep

    def contains(self, X: TypeRep) -> bool:
        """X lies in the cotorsion class."""
        return ext_vanishes_rank1(self.cogenerator, X)

    def contains_cd(self, G: CompletelyDecomposable) -> bool:
        return all(self.contains(x) for x in G.summands)

    def __le__(self, other: "RationalCotorsionTheory") -> bool:
        return leq(other.cogenerator, self.cogenerator)

    def __ge__(self, other: "RationalCotorsionTheory") -> bool:
        return other.__le__(self)

    def same_as(self, other: "RationalCotorsionTheory") -> bool:
        return self <= other and other <= self


def infimum(theories: Iterable[RationalCotorsionTheory]) -> RationalCotorsionTheory:
    """Meet inside the rational sublattice: cogenerated by the join of the types."""
    theories = list(theories)
    if not theories:
        raise LatticeError("infimum needs at least one theory")
    return RationalCotorsionTheory(join_all(t.cogenerator for t in theories))


def supremum(theories: Iterable[RationalCotorsionTheory]) -> RationalCotorsionTheory:
    """Join inside the rational sublattice: cogenerated by the meet of the types."""
    theories = list(theories)
    if not theories:
        raise LatticeError("supremum needs at least one theory")
    return RationalCotorsionTheory(meet_all(t.cogenerator for t in theories))
