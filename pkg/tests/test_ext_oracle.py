import pytest
from hypothesis import given

from lattice.errors import IndexingMismatchError, LatticeError
from lattice.ext_oracle import (
    ComponentKind,
    CompletelyDecomposable,
    CotorsionQuotientShape,
    ExtClass,
    RationalCotorsionTheory,
    ShapeComponent,
    ext_class,
    ext_vanishes_cd,
    ext_vanishes_rank1,
    infimum,
    quotient_shape,
    supremum,
    vanishes_via_shape,
)
from lattice.prime_sets import SymbolicPrimeSet
from lattice.type_lattice import INF, ZERO, Fin, TypeRep, equivalent, join, leq, meet
from tests.strategies import leq_pairs, types


class TestCriterion:
    def test_free_cogenerator(self, ix4):
        assert ext_vanishes_rank1(TypeRep.zero(ix4), TypeRep.zero(ix4))
        assert ext_vanishes_rank1(TypeRep.zero(ix4), TypeRep.localization(ix4, 7))

    def test_rationals_against_integers(self, ix4):
        assert not ext_vanishes_rank1(TypeRep.rationals(ix4), TypeRep.zero(ix4))

    def test_localization_separates(self, ix4):
        q = 3
        x = TypeRep.localization(ix4, q)
        rho = TypeRep.rationals(ix4)
        tau = rho.override(SymbolicPrimeSet.finite(ix4, [q]), Fin(2))
        assert not ext_vanishes_rank1(rho, x)
        assert ext_vanishes_rank1(tau, x)

    def test_finitely_many_exceptions_allowed(self, ix4):
        T = TypeRep.constant(ix4, Fin(1))
        X = TypeRep.rationals(ix4).override(SymbolicPrimeSet.finite(ix4, [2, 3, 5]), ZERO)
        assert ext_vanishes_rank1(T, X)

    def test_ext_class(self, ix4):
        assert ext_class(TypeRep.zero(ix4), TypeRep.rationals(ix4)) is ExtClass.ZERO
        assert ext_class(TypeRep.rationals(ix4), TypeRep.zero(ix4)) is ExtClass.CONTINUUM
        assert ext_class(TypeRep.constant(ix4, Fin(1)), TypeRep.zero(ix4)) is ExtClass.CONTINUUM
        assert ExtClass.CONTINUUM.value == "Continuum"


class TestQuotientShape:
    def test_rationals_all_trivial(self, ix4):
        shape = quotient_shape(TypeRep.rationals(ix4), TypeRep.constant(ix4, Fin(2)))
        assert shape.components == (
            ShapeComponent(ComponentKind.TRIVIAL, SymbolicPrimeSet.universe(ix4)),
        )

    def test_single_cyclic_factor(self, ix4):
        tau = TypeRep.zero(ix4).override(SymbolicPrimeSet.finite(ix4, [2]), Fin(3))
        shape = quotient_shape(TypeRep.zero(ix4), tau)
        (cyclic,) = shape.cyclic_components()
        assert cyclic.primes == SymbolicPrimeSet.finite(ix4, [2])
        assert cyclic.exponent == 3
        assert cyclic.order_at(2) == 8
        assert shape.padic_components() == ()
        assert vanishes_via_shape(shape)

    def test_padic_everywhere(self, ix4):
        shape = quotient_shape(TypeRep.zero(ix4), TypeRep.rationals(ix4))
        (padic,) = shape.padic_components()
        assert padic.primes == SymbolicPrimeSet.universe(ix4)
        assert padic.order_at(5) is None
        assert not vanishes_via_shape(shape)

    def test_mixed_values_and_infinite_override(self, ix4):
        tau = TypeRep.from_cell_values(ix4, [Fin(1), Fin(2), INF, ZERO])
        five = SymbolicPrimeSet.finite(ix4, [5])
        X = TypeRep.zero(ix4).override(five, INF)
        shape = quotient_shape(X, tau)
        assert shape.components == (
            ShapeComponent(ComponentKind.TRIVIAL, SymbolicPrimeSet.cell(ix4, 3) | five),
            ShapeComponent(ComponentKind.CYCLIC, SymbolicPrimeSet.cell(ix4, 0), 1),
            ShapeComponent(ComponentKind.CYCLIC, SymbolicPrimeSet.cell(ix4, 1), 2),
            ShapeComponent(ComponentKind.PADIC, SymbolicPrimeSet.cell(ix4, 2) - five),
        )
        assert not vanishes_via_shape(shape)

    def test_mixed_indexings_rejected(self, ix4, ix16):
        with pytest.raises(IndexingMismatchError):
            quotient_shape(TypeRep.zero(ix4), TypeRep.zero(ix16))

    def test_vanishing_from_shape(self, ix4):
        trivial = ShapeComponent(ComponentKind.TRIVIAL, SymbolicPrimeSet.universe(ix4))
        assert vanishes_via_shape(CotorsionQuotientShape((trivial,)))
        padic = ShapeComponent(ComponentKind.PADIC, SymbolicPrimeSet.finite(ix4, [7]))
        assert not vanishes_via_shape(CotorsionQuotientShape((padic,)))
        cyclic = ShapeComponent(ComponentKind.CYCLIC, SymbolicPrimeSet.cell(ix4, 1), 2)
        assert not vanishes_via_shape(CotorsionQuotientShape((cyclic,)))


class TestCompletelyDecomposable:
    def test_failing_pair(self, ix4):
        T = CompletelyDecomposable((TypeRep.rationals(ix4),))
        X = CompletelyDecomposable((TypeRep.zero(ix4), TypeRep.rationals(ix4)))
        assert not ext_vanishes_cd(T, X)

    def test_free_first_argument(self, ix4):
        T = CompletelyDecomposable((TypeRep.zero(ix4), TypeRep.zero(ix4)))
        X = CompletelyDecomposable((TypeRep.zero(ix4), TypeRep.constant(ix4, Fin(1))))
        assert ext_vanishes_cd(T, X)

    def test_empty_sums(self, ix4):
        assert ext_vanishes_cd(CompletelyDecomposable(), CompletelyDecomposable((TypeRep.zero(ix4),)))
        assert ext_vanishes_cd(CompletelyDecomposable((TypeRep.rationals(ix4),)), CompletelyDecomposable())
        assert CompletelyDecomposable().rank == 0

    @given(types(), types())
    def test_singletons_reduce_to_rank_one(self, t, x):
        assert ext_vanishes_cd(CompletelyDecomposable((t,)), CompletelyDecomposable((x,))) == ext_vanishes_rank1(t, x)


class TestRationalCotorsionTheories:
    def test_order_reverses(self, ix4):
        integers = RationalCotorsionTheory(TypeRep.zero(ix4))
        rationals = RationalCotorsionTheory(TypeRep.rationals(ix4))
        assert rationals <= integers
        assert not integers <= rationals
        assert integers >= rationals

    def test_membership(self, ix4):
        theory = RationalCotorsionTheory(TypeRep.rationals(ix4))
        assert theory.contains(TypeRep.rationals(ix4))
        assert not theory.contains(TypeRep.localization(ix4, 2))
        assert not theory.contains_cd(CompletelyDecomposable((TypeRep.rationals(ix4), TypeRep.zero(ix4))))

    def test_equivalent_cogenerators(self, ix4):
        a = RationalCotorsionTheory(TypeRep.zero(ix4))
        b = RationalCotorsionTheory(TypeRep.zero(ix4).override(SymbolicPrimeSet.finite(ix4, [2]), Fin(4)))
        assert a.same_as(b)

    def test_infimum_and_supremum(self, ix4):
        theories = [RationalCotorsionTheory(TypeRep.localization(ix4, q)) for q in (2, 3)]
        assert infimum(theories).cogenerator == TypeRep.rationals(ix4)
        low = supremum(theories).cogenerator
        assert low.value_at(2) == ZERO and low.value_at(3) == ZERO and low.value_at(5) == INF
        with pytest.raises(LatticeError):
            infimum([])

    @given(types(), types(), types())
    def test_infimum_is_intersection(self, a, b, x):
        inf = infimum([RationalCotorsionTheory(a), RationalCotorsionTheory(b)])
        assert inf.contains(x) == (RationalCotorsionTheory(a).contains(x) and RationalCotorsionTheory(b).contains(x))


class TestOracleProperties:
    @given(types(), types())
    def test_routes_agree(self, t, x):
        assert ext_vanishes_rank1(t, x) == vanishes_via_shape(quotient_shape(x, t))

    @given(leq_pairs(), types())
    def test_monotone_in_first_argument(self, pair, x):
        tau, rho = pair
        assert leq(tau, rho)
        if ext_vanishes_rank1(rho, x):
            assert ext_vanishes_rank1(tau, x)

    @given(types(), types(), types())
    def test_monotone_in_second_argument(self, tau, x, other):
        x2 = join(x, other)
        assert leq(x, x2)
        if ext_vanishes_rank1(tau, x):
            assert ext_vanishes_rank1(tau, x2)

    @given(types(), types())
    def test_well_defined_on_classes(self, tau, x):
        changed = tau
        for p in (2, 3):
            if changed.value_at(p).is_finite:
                changed = changed.override(SymbolicPrimeSet.finite(tau.indexing, [p]), Fin(5))
        assert equivalent(tau, changed)
        assert ext_vanishes_rank1(tau, x) == ext_vanishes_rank1(changed, x)
        assert ext_vanishes_rank1(x, tau) == ext_vanishes_rank1(x, changed)

    @given(types(), types(), types())
    def test_join_and_meet_laws(self, tau, rho, x):
        t_ok, r_ok = ext_vanishes_rank1(tau, x), ext_vanishes_rank1(rho, x)
        assert ext_vanishes_rank1(join(tau, rho), x) == (t_ok and r_ok)
        if t_ok or r_ok:
            assert ext_vanishes_rank1(meet(tau, rho), x)
