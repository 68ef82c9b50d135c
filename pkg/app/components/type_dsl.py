"""
Text form of a type.

    type     := "{" entry ("," entry)* "}"
    entry    := selector ":" value
    selector := "default" | "mod" INT "=" INT ("," INT)* | "primes" "{" INT+ "}"
    value    := NAT | "inf"

Entries apply left to right, later ones overriding earlier ones. Exactly one
`default` entry is required. Whitespace is ignored.
"""
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from config.config import SIEVE_MAX_LIMIT
from lattice.errors import LatticeError
from lattice.prime_sets import PrimeIndexing, SymbolicPrimeSet, is_prime
from lattice.type_lattice import INF, ExtendedNat, Fin, TypeRep

TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z]+)|(?P<punct>[{}:,=]))")
KEYWORDS = ("default", "mod", "primes", "inf")


class DSLParseError(ValueError):
    """Raised when type text cannot be parsed; `position` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"at position {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str       # int | word | punct | end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = TOKEN_RE.match(text, pos)
        if not match:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise DSLParseError(f"unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup
        start = match.start(kind)
        word = match.group(kind)
        if kind == "word" and word.lower() not in KEYWORDS:
            raise DSLParseError(f"unknown word {word!r}", start)
        tokens.append(Token(kind, word.lower() if kind == "word" else word, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
Selector = Tuple[str, Optional[SymbolicPrimeSet]]


class _Parser:
    def __init__(self, text: str, indexing: PrimeIndexing):
        self.tokens = tokenize(text)
        self.i = 0
        self.indexing = indexing

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            wanted = text if text is not None else kind
            found = token.text or "end of input"
            raise DSLParseError(f"expected {wanted!r}, found {found!r}", token.position)
        self.i += 1
        return token

    def integer(self) -> Tuple[int, int]:
        token = self.expect("int")
        return int(token.text), token.position

    def parse(self) -> List[Tuple[Selector, ExtendedNat, int]]:
        self.expect("punct", "{")
        entries = [self.entry()]
        while self.current.text == ",":
            self.i += 1
            entries.append(self.entry())
        self.expect("punct", "}")
        self.expect("end")
        return entries

    def entry(self) -> Tuple[Selector, ExtendedNat, int]:
        start = self.current.position
        selector = self.selector()
        self.expect("punct", ":")
        return selector, self.value(), start

    def selector(self) -> Selector:
        token = self.current
        if token.text == "default":
            self.i += 1
            return "default", None
        if token.text == "mod":
            self.i += 1
            return "mod", self.mod_cells()
        if token.text == "primes":
            self.i += 1
            return "primes", self.prime_list()
        raise DSLParseError(f"expected 'default', 'mod' or 'primes', found {token.text or 'end of input'!r}",
                            token.position)

    def mod_cells(self) -> SymbolicPrimeSet:
        modulus, position = self.integer()
        if modulus != self.indexing.modulus:
            raise DSLParseError(
                f"'mod {modulus}' does not match the session modulus {self.indexing.modulus}", position
            )
        self.expect("punct", "=")
        cells = [self.cell(modulus)]
        # a comma followed by an integer continues the cell list; a keyword starts the next entry
        while self.current.text == "," and self.peek().kind == "int":
            self.i += 1
            cells.append(self.cell(modulus))
        return SymbolicPrimeSet.of_cells(self.indexing, cells)

    def cell(self, modulus: int) -> int:
        i, position = self.integer()
        if i >= modulus:
            raise DSLParseError(f"cell {i} out of range for mod {modulus}", position)
        return i

    def prime_list(self) -> SymbolicPrimeSet:
        self.expect("punct", "{")
        primes = []
        while True:
            p, position = self.integer()
            try:
                prime = is_prime(p)
            except LatticeError:
                raise DSLParseError(f"{p} is outside the supported prime range (up to {SIEVE_MAX_LIMIT})", position) from None
            if not prime:
                raise DSLParseError(f"{p} is not prime", position)
            primes.append(p)
            if self.current.text == ",":
                self.i += 1
            if self.current.text == "}":
                break
        self.expect("punct", "}")
        return SymbolicPrimeSet.finite(self.indexing, primes)

    def value(self) -> ExtendedNat:
        token = self.current
        if token.text == "inf":
            self.i += 1
            return INF
        if token.kind == "int":
            self.i += 1
            return Fin(int(token.text))
        raise DSLParseError(f"expected a natural number or 'inf', found {token.text or 'end of input'!r}",
                            token.position)


def parse_type(text: str, indexing: PrimeIndexing) -> TypeRep:
    """
    Parse type text over `indexing`.

    Raises:
        DSLParseError: on a syntax error, a missing or repeated default, a
            modulus other than the session's, a cell out of range or a non-prime.
    """
    entries = _Parser(text, indexing).parse()
    defaults = [position for (kind, _), _, position in entries if kind == "default"]
    if not defaults:
        raise DSLParseError("a 'default' entry is required", 0)
    if len(defaults) > 1:
        raise DSLParseError("only one 'default' entry is allowed", defaults[1])

    rep: Optional[TypeRep] = None
    for (kind, prime_set), value, _ in entries:
        if kind == "default":
            rep = TypeRep.constant(indexing, value)
        elif rep is None:
            # entries before the default are overwritten by it
            continue
        else:
            rep = rep.override(prime_set, value)
    return rep


# ----------------------------------------------------------------------
# Formatter
# ----------------------------------------------------------------------
def format_type(tau: TypeRep) -> str:
    """Canonical text: parse_type(format_type(tau)) == tau."""
    ix = tau.indexing
    k = ix.modulus
    cell_values = [tau.cell_value(i) for i in range(k)]
    counts = Counter(cell_values)
    default = min(counts, key=lambda v: (-counts[v], v.sort_key()))

    entries = [f"default: {default}"]
    by_value: Dict[ExtendedNat, List[int]] = {}
    for i, value in enumerate(cell_values):
        if value != default:
            by_value.setdefault(value, []).append(i)
    for value in sorted(by_value, key=lambda v: v.sort_key()):
        entries.append(f"mod {k} = {', '.join(str(i) for i in by_value[value])}: {value}")

    explicit = set()
    for prime_set, _ in tau.pieces:
        explicit |= prime_set.explicit_primes()
    exceptions: Dict[ExtendedNat, List[int]] = {}
    for p in sorted(explicit):
        value = tau.value_at(p)
        if value != cell_values[ix.cell_of(p)]:
            exceptions.setdefault(value, []).append(p)
    for value in sorted(exceptions, key=lambda v: v.sort_key()):
        entries.append(f"primes {{{' '.join(str(p) for p in exceptions[value])}}}: {value}")
    return "{ " + ", ".join(entries) + " }"
