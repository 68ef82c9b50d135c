import pytest
from hypothesis import assume, given

from lattice.errors import IndexingMismatchError, LatticeError, PreconditionError
from lattice.prime_sets import PrimeIndexing, SymbolicPrimeSet
from lattice.type_lattice import (
    INF,
    ZERO,
    ExtendedNat,
    Fin,
    TypeRep,
    bad_set,
    compare,
    equivalent,
    ext_max,
    ext_min,
    join,
    join_all,
    leq,
    meet,
    meet_all,
    normalize_pair,
    strictly_less,
)
from tests.strategies import PROBE_PRIMES, probes, types


def at(ix, primes, value, base):
    return base.override(SymbolicPrimeSet.finite(ix, primes), value)


class TestExtendedNat:
    def test_order(self):
        assert Fin(2) < Fin(3) < INF
        assert not INF < Fin(100)
        assert ext_max(Fin(1), INF) == INF
        assert ext_min(Fin(1), INF) == Fin(1)

    def test_negative_rejected(self):
        with pytest.raises(LatticeError):
            ExtendedNat(-1)

    def test_str(self):
        assert str(INF) == "inf"
        assert str(Fin(4)) == "4"


class TestConstruction:
    def test_overlapping_pieces_rejected(self, ix4):
        u = SymbolicPrimeSet.universe(ix4)
        with pytest.raises(LatticeError):
            TypeRep(ix4, ((u, ZERO), (SymbolicPrimeSet.cell(ix4, 0), INF)))

    def test_pieces_must_cover(self, ix4):
        with pytest.raises(LatticeError):
            TypeRep(ix4, ((SymbolicPrimeSet.cell(ix4, 0), ZERO),))

    def test_equal_values_merge(self, ix4):
        rep = TypeRep(ix4, tuple((SymbolicPrimeSet.cell(ix4, i), Fin(1)) for i in range(4)))
        assert rep == TypeRep.constant(ix4, Fin(1))
        assert len(rep.pieces) == 1


class TestValueAt:
    def test_constant(self, ix4):
        assert TypeRep.zero(ix4).value_at(7) == ZERO

    def test_localization(self, ix4):
        z5 = TypeRep.localization(ix4, 5)
        assert z5.value_at(5) == ZERO
        assert z5.value_at(7) == INF

    def test_least_prime_of_cell(self, ix4):
        tau = TypeRep.constant(ix4, Fin(1)).override(SymbolicPrimeSet.cell(ix4, 1), INF)
        q = SymbolicPrimeSet.cell(ix4, 1).least_element()
        assert q == 3
        assert tau.value_at(q) == INF
        assert tau.value_at(2) == Fin(1)


class TestEquivalence:
    def test_one_finite_difference(self, ix4):
        base = TypeRep.zero(ix4)
        assert equivalent(at(ix4, [2], Fin(3), base), at(ix4, [2], Fin(7), base))

    def test_infinite_entry_differs(self, ix4):
        assert not equivalent(TypeRep.rationals(ix4), TypeRep.localization(ix4, 2))

    def test_infinite_difference_set(self, ix4):
        rho = TypeRep.zero(ix4).override(SymbolicPrimeSet.cell(ix4, 0), Fin(1))
        assert not equivalent(TypeRep.zero(ix4), rho)

    def test_mixed_indexing_rejected(self):
        with pytest.raises(IndexingMismatchError):
            equivalent(TypeRep.zero(PrimeIndexing(2)), TypeRep.zero(PrimeIndexing(3)))


class TestOrder:
    def test_zero_is_bottom(self, ix4):
        assert leq(TypeRep.zero(ix4), TypeRep.localization(ix4, 3))

    def test_finite_excess_absorbed(self, ix4):
        z = TypeRep.zero(ix4)
        assert leq(at(ix4, [2], Fin(5), z), at(ix4, [2], Fin(3), z))

    def test_infinite_entry_cannot_be_lowered(self, ix4):
        assert not leq(TypeRep.rationals(ix4), TypeRep.localization(ix4, 2))

    def test_strictly_less(self, ix4):
        assert strictly_less(TypeRep.zero(ix4), TypeRep.rationals(ix4))
        assert strictly_less(TypeRep.constant(ix4, Fin(1)), TypeRep.constant(ix4, Fin(2)))
        z = TypeRep.zero(ix4)
        assert not strictly_less(z, at(ix4, [5], Fin(2), z))

    def test_compare(self, ix4):
        assert compare(TypeRep.zero(ix4), TypeRep.rationals(ix4)) == "less"
        assert compare(TypeRep.rationals(ix4), TypeRep.zero(ix4)) == "greater"
        assert compare(TypeRep.localization(ix4, 2), TypeRep.localization(ix4, 2)) == "equivalent"
        a = TypeRep.zero(ix4).override(SymbolicPrimeSet.cell(ix4, 0), INF)
        b = TypeRep.zero(ix4).override(SymbolicPrimeSet.cell(ix4, 1), INF)
        assert compare(a, b) == "incomparable"


class TestLatticeOps:
    def test_join_with_bottom(self, ix4):
        rho = TypeRep.localization(ix4, 3)
        assert join(TypeRep.zero(ix4), rho) == rho

    def test_join_of_cells(self, ix4):
        a = TypeRep.zero(ix4).override(SymbolicPrimeSet.cell(ix4, 0), INF)
        b = TypeRep.zero(ix4).override(SymbolicPrimeSet.cell(ix4, 1), INF)
        expected = TypeRep.zero(ix4).override(SymbolicPrimeSet.of_cells(ix4, [0, 1]), INF)
        assert join(a, b) == expected

    def test_meet_of_localizations(self, ix4):
        expected = at(ix4, [2, 3], ZERO, TypeRep.rationals(ix4))
        assert meet(TypeRep.localization(ix4, 2), TypeRep.localization(ix4, 3)) == expected

    def test_families(self, ix4):
        family = [TypeRep.localization(ix4, q) for q in (2, 3, 5)]
        assert join_all(family) == TypeRep.rationals(ix4)
        assert meet_all(family) == at(ix4, [2, 3, 5], ZERO, TypeRep.rationals(ix4))
        with pytest.raises(LatticeError):
            join_all([])


class TestBadSet:
    def test_single_prime(self, ix4):
        z = TypeRep.zero(ix4)
        bad = bad_set(at(ix4, [2], Fin(5), z), at(ix4, [2], Fin(3), z))
        assert bad == SymbolicPrimeSet.finite(ix4, [2])

    def test_extremes(self, ix4):
        z, q = TypeRep.zero(ix4), TypeRep.rationals(ix4)
        assert bad_set(q, z) == SymbolicPrimeSet.universe(ix4)
        assert bad_set(z, q).is_empty()

    def test_infinite_bad_entry_breaks_leq(self, ix4):
        z = TypeRep.zero(ix4)
        tau = at(ix4, [3], INF, z)
        assert bad_set(tau, z) == SymbolicPrimeSet.finite(ix4, [3])
        assert not leq(tau, z)
        assert leq(at(ix4, [3], Fin(9), z), z)


class TestNormalizePair:
    def test_single_bad_entry(self, ix4):
        z = TypeRep.zero(ix4)
        tau, rho = at(ix4, [2], Fin(5), z), at(ix4, [2], Fin(3), z)
        lowered, same = normalize_pair(tau, rho)
        assert lowered == rho and same is rho
        assert equivalent(lowered, tau)

    def test_already_below(self, ix4):
        tau, rho = TypeRep.zero(ix4), TypeRep.rationals(ix4)
        assert normalize_pair(tau, rho)[0] == tau

    def test_two_bad_entries(self, ix4):
        q = TypeRep.rationals(ix4)
        tau, rho = at(ix4, [2, 5], Fin(4), q), at(ix4, [2, 5], Fin(1), q)
        assert normalize_pair(tau, rho)[0] == rho

    def test_rejects_non_leq(self, ix4):
        with pytest.raises(PreconditionError):
            normalize_pair(TypeRep.rationals(ix4), TypeRep.zero(ix4))


class TestLatticeLaws:
    @given(types(), types())
    def test_commutative(self, a, b):
        assert equivalent(join(a, b), join(b, a))
        assert equivalent(meet(a, b), meet(b, a))

    @given(types(), types(), types())
    def test_associative(self, a, b, c):
        assert equivalent(join(join(a, b), c), join(a, join(b, c)))
        assert equivalent(meet(meet(a, b), c), meet(a, meet(b, c)))

    @given(types(), types())
    def test_absorption_and_idempotence(self, a, b):
        assert equivalent(join(a, a), a) and equivalent(meet(a, a), a)
        assert equivalent(join(a, meet(a, b)), a)
        assert equivalent(meet(a, join(a, b)), a)

    @given(types(), types())
    def test_bounds(self, a, b):
        assert leq(a, join(a, b)) and leq(b, join(a, b))
        assert leq(meet(a, b), a) and leq(meet(a, b), b)

    @given(types(), types(), types())
    def test_least_upper_bound(self, a, b, c):
        assume(leq(a, c) and leq(b, c))
        assert leq(join(a, b), c)

    @given(types(), types())
    def test_antisymmetry_on_classes(self, a, b):
        assert (leq(a, b) and leq(b, a)) == equivalent(a, b)

    @given(types(), types(), types())
    def test_transitivity(self, a, b, c):
        assume(leq(a, b) and leq(b, c))
        assert leq(a, c)

    @given(types(), types(), probes())
    def test_join_is_pointwise_max(self, a, b, p):
        assert join(a, b).value_at(p) == ext_max(a.value_at(p), b.value_at(p))
        assert meet(a, b).value_at(p) == ext_min(a.value_at(p), b.value_at(p))

    @given(types())
    def test_equal_reps_agree_everywhere(self, a):
        rebuilt = TypeRep(a.indexing, a.pieces)
        assert rebuilt == a
        assert all(rebuilt.value_at(p) == a.value_at(p) for p in PROBE_PRIMES[:50])
