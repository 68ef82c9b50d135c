"""
Finite posets embedded into the type lattice.

A subset X of {0..n-1} maps to the type that is inf on the cells of X and 0
elsewhere; a poset maps through its principal down-sets. The cotorsion image
reverses the order, and each covering pair is separated by a witness.
"""
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from lattice.errors import InvalidPosetError, PreconditionError
from lattice.prime_sets import PrimeIndexing, SymbolicPrimeSet
from lattice.separation import SeparationResult, separate
from lattice.type_lattice import INF, TypeRep, leq


# ----------------------------------------------------------------------
# 1. Finite posets
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class FinitePoset:
    """Elements 0..n-1 with rel[a][b] meaning a <= b."""

    n: int
    rel: Tuple[Tuple[bool, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidPosetError(f"poset needs at least one element, got n={self.n}")
        if len(self.rel) != self.n or any(len(row) != self.n for row in self.rel):
            raise InvalidPosetError(f"relation must be {self.n}x{self.n}")
        up = self._up_masks()
        for a in range(self.n):
            if not up[a] >> a & 1:
                raise InvalidPosetError(f"not reflexive at {a}")
            for b in range(self.n):
                if b == a or not up[a] >> b & 1:
                    continue
                if up[b] >> a & 1:
                    raise InvalidPosetError(f"not antisymmetric: {a} <= {b} and {b} <= {a}")
                if up[b] & ~up[a]:
                    c = (up[b] & ~up[a]).bit_length() - 1
                    raise InvalidPosetError(f"not transitive: {a} <= {b} <= {c}")

    def _up_masks(self) -> List[int]:
        """Bitset of the elements above each a."""
        return [sum(1 << b for b in range(self.n) if self.rel[a][b]) for a in range(self.n)]

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "FinitePoset":
        """Reflexive-transitive closure of the listed pairs (Warshall)."""
        if not isinstance(n, int) or n < 1:
            raise InvalidPosetError(f"n must be a positive integer, got {n!r}")
        rel = [[a == b for b in range(n)] for a in range(n)]
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidPosetError(f"pair {list(pair)} must have two entries")
            a, b = pair
            if not (isinstance(a, int) and isinstance(b, int) and 0 <= a < n and 0 <= b < n):
                raise InvalidPosetError(f"pair {list(pair)} refers to unknown elements")
            rel[a][b] = True
        for k in range(n):
            for a in range(n):
                if rel[a][k]:
                    for b in range(n):
                        if rel[k][b]:
                            rel[a][b] = True
        return cls(n, tuple(tuple(row) for row in rel))

    def le(self, a: int, b: int) -> bool:
        return self.rel[a][b]

    def down_set(self, a: int) -> Tuple[int, ...]:
        return tuple(b for b in range(self.n) if self.rel[b][a])

    def covering_pairs(self) -> List[Tuple[int, int]]:
        """Pairs a < b with nothing strictly between them."""
        up = self._up_masks()
        below = [sum(1 << b for b in self.down_set(a)) for a in range(self.n)]
        pairs = []
        for a, b in product(range(self.n), repeat=2):
            if a == b or not self.rel[a][b]:
                continue
            between = below[b] & ~below[a] & ~(1 << b)
            # c strictly between a and b iff a < c < b
            if not between & up[a]:
                pairs.append((a, b))
        return pairs


def load_poset(path: str) -> FinitePoset:
    """Read {"n": int, "le": [[a, b], ...]} and close it."""
    if not os.path.exists(path):
        raise InvalidPosetError(f"poset file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidPosetError(f"poset file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict) or "n" not in data:
        raise InvalidPosetError("poset file must be an object with keys 'n' and 'le'")
    pairs = data.get("le", [])
    if not isinstance(pairs, list) or not all(isinstance(p, list) for p in pairs):
        raise InvalidPosetError("'le' must be a list of [a, b] pairs")
    return FinitePoset.from_pairs(data["n"], pairs)


def powerset_poset(n: int) -> FinitePoset:
    """(P({0..n-1}), subset); element s is the bitmask of the subset."""
    size = 1 << n
    return FinitePoset(size, tuple(tuple(a & ~b == 0 for b in range(size)) for a in range(size)))


def subset_label(mask: int) -> str:
    return "{" + ",".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


# ----------------------------------------------------------------------
# 2. Embeddings
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Embedding:
    indexing: PrimeIndexing
    labels: Tuple[str, ...]
    images: Tuple[TypeRep, ...]

    def image(self, a: int) -> TypeRep:
        return self.images[a]


def _subset_type(indexing: PrimeIndexing, cells: Iterable[int]) -> TypeRep:
    return TypeRep.zero(indexing).override(SymbolicPrimeSet.of_cells(indexing, cells), INF)


def _require_cells(n: int, indexing: PrimeIndexing) -> None:
    if indexing.modulus < n:
        raise PreconditionError(f"need modulus >= {n} to embed {n} atoms, got {indexing.modulus}")


def powerset_embed(n: int, indexing: PrimeIndexing) -> Embedding:
    """tau_X = inf on the cells of X, 0 elsewhere; subsets in bitmask order."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    _require_cells(n, indexing)
    masks = range(1 << n)
    return Embedding(
        indexing,
        tuple(subset_label(m) for m in masks),
        tuple(_subset_type(indexing, [i for i in range(n) if m >> i & 1]) for m in masks),
    )


def poset_embed(P: FinitePoset, indexing: PrimeIndexing) -> Embedding:
    """a -> powerset image of its principal down-set."""
    _require_cells(P.n, indexing)
    return Embedding(
        indexing,
        tuple(str(a) for a in range(P.n)),
        tuple(_subset_type(indexing, P.down_set(a)) for a in range(P.n)),
    )


def verify_embedding(e: Embedding, P: FinitePoset, workers: int = 1) -> bool:
    """a <= b in P iff leq(e(a), e(b)), over every ordered pair."""
    if len(e.images) != P.n:
        return False

    def row_ok(a: int) -> bool:
        return all(P.le(a, b) == leq(e.images[a], e.images[b]) for b in range(P.n))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return all(executor.map(row_ok, range(P.n)))
    return all(row_ok(a) for a in range(P.n))


# ----------------------------------------------------------------------
# 3. Cotorsion image
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class CoveringRecord:
    lower: int
    upper: int
    result: SeparationResult


@dataclass(frozen=True)
class IncomparableRecord:
    a: int
    b: int
    a_leq_b: bool
    b_leq_a: bool


@dataclass(frozen=True)
class CotorsionImageReport:
    embedding_verified: bool
    covering: Tuple[CoveringRecord, ...]
    incomparable: Tuple[IncomparableRecord, ...]

    @property
    def all_witnesses_verified(self) -> bool:
        return all(r.result.verified for r in self.covering)

    def summary(self) -> Dict[str, Any]:
        return {
            "covering_pairs": len(self.covering),
            "incomparable_pairs": len(self.incomparable),
            "witnesses_verified": sum(1 for r in self.covering if r.result.verified),
            "embedding_verified": self.embedding_verified,
        }


def cotorsion_image_report(
    e: Embedding,
    P: FinitePoset,
    m_max: int = 8,
    k_max: int = 8,
    prime_count: int = 40,
    workers: int = 1,
    verified: Optional[bool] = None,
) -> CotorsionImageReport:
    """
    Separation witness for every covering pair a < b (the cotorsion images are
    ordered the other way), and mutual non-leq for every incomparable pair.
    """
    if verified is None:
        verified = verify_embedding(e, P, workers)
    if not verified:
        raise PreconditionError("cotorsion image report needs a verified embedding")
    covering = tuple(
        CoveringRecord(a, b, separate(e.images[a], e.images[b], m_max, k_max, prime_count, workers))
        for a, b in P.covering_pairs()
    )
    incomparable = tuple(
        IncomparableRecord(a, b, leq(e.images[a], e.images[b]), leq(e.images[b], e.images[a]))
        for a in range(P.n)
        for b in range(a + 1, P.n)
        if not P.le(a, b) and not P.le(b, a)
    )
    return CotorsionImageReport(verified, covering, incomparable)
