import pytest
from hypothesis import given

from app.components.type_dsl import DSLParseError, format_type, parse_type, tokenize
from lattice.prime_sets import SymbolicPrimeSet
from lattice.type_lattice import INF, ZERO, Fin, TypeRep
from tests.strategies import INDEXING, types


class TestParse:
    def test_constant(self, ix4):
        assert parse_type("{ default: 0 }", ix4) == TypeRep.zero(ix4)
        assert parse_type("{default:inf}", ix4) == TypeRep.rationals(ix4)

    def test_prime_exception(self, ix4):
        assert parse_type("{ default: inf, primes {5}: 0 }", ix4) == TypeRep.localization(ix4, 5)

    def test_mod_cells(self, ix4):
        tau = parse_type("{ default: 1, mod 4 = 1, 3: inf }", ix4)
        expected = TypeRep.constant(ix4, Fin(1)).override(SymbolicPrimeSet.of_cells(ix4, [1, 3]), INF)
        assert tau == expected

    def test_mod_list_followed_by_entry(self, ix4):
        tau = parse_type("{ default: 0, mod 4 = 2: 1, primes {2 3}: inf }", ix4)
        assert tau.cell_value(2) == Fin(1)
        assert tau.value_at(2) == INF and tau.value_at(3) == INF
        assert tau.value_at(5) == Fin(1)
        assert tau.value_at(7) == ZERO

    def test_keywords_case_insensitive(self, ix4):
        assert parse_type("{ DEFAULT: INF }", ix4) == TypeRep.rationals(ix4)

    def test_later_entries_override(self, ix4):
        tau = parse_type("{ default: 0, primes {2}: 3, primes {2}: inf }", ix4)
        assert tau.value_at(2) == INF

    def test_entries_before_default_are_overwritten(self, ix4):
        assert parse_type("{ primes {2}: inf, default: 0 }", ix4) == TypeRep.zero(ix4)


class TestParseErrors:
    def error(self, text, ix):
        with pytest.raises(DSLParseError) as info:
            parse_type(text, ix)
        return info.value

    def test_unknown_word(self, ix4):
        err = self.error("{ default: x }", ix4)
        assert err.position == 11
        assert str(err).startswith("at position 11:")

    def test_unexpected_character(self, ix4):
        assert self.error("{ default: 1; }", ix4).position == 12

    def test_unterminated(self, ix4):
        err = self.error("{ default: 1", ix4)
        assert err.position == 12
        assert "end of input" in str(err)

    def test_modulus_mismatch(self, ix4):
        err = self.error("{ default: 0, mod 16 = 1: inf }", ix4)
        assert "16" in str(err) and "4" in str(err)

    def test_cell_out_of_range(self, ix4):
        assert "out of range" in str(self.error("{ default: 0, mod 4 = 4: 1 }", ix4))

    def test_missing_default(self, ix4):
        assert self.error("{ primes {2}: 1 }", ix4).position == 0

    def test_repeated_default(self, ix4):
        assert self.error("{ default: 0, default: 1 }", ix4).position == 14

    def test_non_prime(self, ix4):
        err = self.error("{ default: 0, primes {4}: 1 }", ix4)
        assert err.position == 22
        assert "not prime" in str(err)

    def test_prime_beyond_sieve_range(self, ix4):
        err = self.error("{ default: 0, primes {100000000000}: 1 }", ix4)
        assert err.position == 22
        assert "range" in str(err)

    def test_is_value_error(self, ix4):
        with pytest.raises(ValueError):
            parse_type("", ix4)


class TestFormat:
    def test_localization(self, ix4):
        assert format_type(TypeRep.localization(ix4, 5)) == "{ default: inf, primes {5}: 0 }"

    def test_cells(self, ix16):
        tau = TypeRep.rationals(ix16).override(SymbolicPrimeSet.of_cells(ix16, [1, 3]), Fin(1))
        assert format_type(tau) == "{ default: inf, mod 16 = 1, 3: 1 }"

    def test_tie_picks_smaller_default(self, ix4):
        tau = TypeRep.zero(ix4).override(SymbolicPrimeSet.of_cells(ix4, [2, 3]), INF)
        assert format_type(tau) == "{ default: 0, mod 4 = 2, 3: inf }"

    def test_tokens(self):
        kinds = [t.kind for t in tokenize("{ mod 4 = 1: inf }")]
        assert kinds == ["punct", "word", "int", "punct", "int", "punct", "word", "punct", "end"]

    @given(types())
    def test_parse_inverts_format(self, tau):
        assert parse_type(format_type(tau), INDEXING) == tau
