"""
Separating witnesses for strictly comparable types.

For tau < rho a witness W lies in the cotorsion class of tau but not in that
of rho. Rank-1 witnesses are checked by the oracle; the infinite-rank witness
of the both-finite case is certified by exact integer arithmetic.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import ceil, isqrt, prod
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from lattice.errors import InvalidWitnessError, InvariantBreach, PreconditionError
from lattice.ext_oracle import ext_vanishes_rank1
from lattice.prime_sets import SymbolicPrimeSet
from lattice.type_lattice import Fin, TypeRep, normalize_pair, refine, strictly_less


# ----------------------------------------------------------------------
# 1. Cases
# ----------------------------------------------------------------------
class StrictCase(str, Enum):
    INF_JUMP = "InfJump"          # some t_q < inf with r_q = inf
    ZERO_BASE = "ZeroBase"        # infinitely many t_p = 0 < r_p < inf
    BOTH_FINITE = "BothFinite"    # infinitely many 0 < t_p < r_p < inf


CASE_PRIORITY = (StrictCase.INF_JUMP, StrictCase.ZERO_BASE, StrictCase.BOTH_FINITE)


def _case_sets(tau: TypeRep, rho: TypeRep) -> Dict[StrictCase, List[Tuple[SymbolicPrimeSet, int, int]]]:
    """Refinement pieces of a normalized pair grouped by the case they feed."""
    grouped: Dict[StrictCase, List] = {case: [] for case in CASE_PRIORITY}
    for s, t, r in refine(tau, rho):
        if t.is_finite and r.is_inf:
            grouped[StrictCase.INF_JUMP].append((s, t.value, None))
        elif t.is_finite and r.is_finite and t.value < r.value:
            if t.value == 0:
                grouped[StrictCase.ZERO_BASE].append((s, 0, r.value))
            else:
                grouped[StrictCase.BOTH_FINITE].append((s, t.value, r.value))
    return grouped


def _union(tau: TypeRep, entries) -> SymbolicPrimeSet:
    return reduce(SymbolicPrimeSet.union, (s for s, _, _ in entries), SymbolicPrimeSet.empty(tau.indexing))


def _require_strict(tau: TypeRep, rho: TypeRep) -> Tuple[TypeRep, TypeRep]:
    if not strictly_less(tau, rho):
        raise PreconditionError("separation requires tau strictly less than rho")
    return normalize_pair(tau, rho)


def classify(tau: TypeRep, rho: TypeRep) -> FrozenSet[StrictCase]:
    """
    Which of the strict cases hold for tau < rho (after normalize_pair).

    Raises:
        PreconditionError: if tau is not strictly less than rho.
        InvariantBreach: if no case holds, which strictness rules out.
    """
    tau, rho = _require_strict(tau, rho)
    grouped = _case_sets(tau, rho)
    cases = set()
    if grouped[StrictCase.INF_JUMP]:
        cases.add(StrictCase.INF_JUMP)
    for case in (StrictCase.ZERO_BASE, StrictCase.BOTH_FINITE):
        if _union(tau, grouped[case]).is_infinite():
            cases.add(case)
    if not cases:
        raise InvariantBreach("strict pair matches none of the separation cases")
    return frozenset(cases)


def ordered_cases(cases: FrozenSet[StrictCase]) -> List[StrictCase]:
    return [c for c in CASE_PRIORITY if c in cases]


# ----------------------------------------------------------------------
# 2. Witnesses
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class GSpec:
    """
    The subgroup G of the product of Z_(p), p in P, of elements (g_p) with
    m*g_p integral and |m*g_p| <= k*p^t for some m, k. Never materialized.
    """

    P: SymbolicPrimeSet
    t_exp: int
    r_exp: int

    def __post_init__(self):
        if not self.P.is_infinite():
            raise InvalidWitnessError(f"witness prime set must be infinite, got {self.P}")
        if not 0 < self.t_exp < self.r_exp:
            raise InvalidWitnessError(f"need 0 < t < r, got t={self.t_exp}, r={self.r_exp}")


@dataclass(frozen=True)
class RankOneWitness:
    case: StrictCase
    x: TypeRep


@dataclass(frozen=True)
class InfiniteRankWitness:
    case: StrictCase
    g: GSpec


Witness = Union[RankOneWitness, InfiniteRankWitness]


def witness(tau: TypeRep, rho: TypeRep) -> Witness:
    """
    Build the witness for tau < rho, preferring InfJump, then ZeroBase, then BothFinite.

    InfJump: Z_(q) for the least prime q with t_q finite and r_q infinite.
    ZeroBase: x = 1 on P, inf elsewhere, P the primes with t_p = 0 < r_p < inf.
    BothFinite: GSpec on the constant piece of least first element.
    """
    tau, rho = _require_strict(tau, rho)
    grouped = _case_sets(tau, rho)
    ix = tau.indexing

    if grouped[StrictCase.INF_JUMP]:
        q = _union(tau, grouped[StrictCase.INF_JUMP]).least_element()
        return RankOneWitness(StrictCase.INF_JUMP, TypeRep.localization(ix, q))

    zero_base = _union(tau, grouped[StrictCase.ZERO_BASE])
    if zero_base.is_infinite():
        x = TypeRep.rationals(ix).override(zero_base, Fin(1))
        return RankOneWitness(StrictCase.ZERO_BASE, x)

    candidates = [(s, t, r) for s, t, r in grouped[StrictCase.BOTH_FINITE] if s.is_infinite()]
    if not candidates:
        raise InvariantBreach("strict pair matches none of the separation cases")
    s, t, r = min(candidates, key=lambda entry: entry[0].least_element())
    return InfiniteRankWitness(StrictCase.BOTH_FINITE, GSpec(s, t, r))


def verify_rank1_witness(tau: TypeRep, rho: TypeRep, x: TypeRep) -> bool:
    """x is in the cotorsion class of tau but not of rho."""
    return ext_vanishes_rank1(tau, x) and not ext_vanishes_rank1(rho, x)


# ----------------------------------------------------------------------
# 3. Exact arithmetic behind the infinite-rank witness
# ----------------------------------------------------------------------
def choose_np(p: int, t: int) -> int:
    """floor(p^(t + 1/2)) = isqrt(p^(2t+1)); lies in [p^(t+1/2) - 1, p^(t+1/2)]."""
    if t < 1:
        raise InvalidWitnessError(f"exponent must be >= 1, got {t}")
    return isqrt(p ** (2 * t + 1))


def _check_localized(p: int, g_p: Fraction) -> None:
    if g_p.denominator % p == 0:
        raise InvalidWitnessError(f"{g_p} is not in Z_({p}): denominator divisible by {p}")


def gspec_membership_check(g: Mapping[int, Fraction], m: int, k: int, gspec: GSpec) -> bool:
    """Truncation test: m*g_p integral and |m*g_p| <= k*p^t for every listed p."""
    for p, value in g.items():
        g_p = Fraction(value)
        _check_localized(p, g_p)
        scaled = m * g_p
        if scaled.denominator != 1 or abs(scaled) > k * p ** gspec.t_exp:
            return False
    return True


def membership_certificate(h: Mapping[int, Fraction]) -> Tuple[int, int]:
    """
    (m, k) placing a finite-support element of the direct sum inside G:
    m is the product of the denominators, k = ceil(m * sum |h_p|).
    """
    entries = {p: Fraction(v) for p, v in h.items() if Fraction(v) != 0}
    for p, g_p in entries.items():
        _check_localized(p, g_p)
    m = prod(g_p.denominator for g_p in entries.values())
    k = ceil(m * sum(abs(g_p) for g_p in entries.values()))
    return m, max(k, 1)


def sum_certificate(first: Tuple[int, int], second: Tuple[int, int]) -> Tuple[int, int]:
    """Certificate for g + h from (m, k) for g and (n, l) for h: (mn, nk + ml)."""
    (m, k), (n, l) = first, second
    return m * n, n * k + m * l


def residue_lift_certificate(residues: Mapping[int, int], gspec: GSpec) -> Optional[Tuple[int, int]]:
    """Residues 0 <= g_p < p^t lie in G with (m, k) = (1, 1); None if a residue is out of range."""
    for p, g_p in residues.items():
        if not 0 <= g_p < p ** gspec.t_exp:
            return None
    if not gspec_membership_check({p: Fraction(v) for p, v in residues.items()}, 1, 1, gspec):
        return None
    return 1, 1


@dataclass(frozen=True)
class PrimeCheckRecord:
    p: int
    n_p: int
    flags: Tuple[Tuple[bool, ...], ...]     # flags[m-1][k-1]

    @property
    def passed(self) -> bool:
        return all(all(row) for row in self.flags)

    def failures(self) -> List[Tuple[int, int]]:
        return [
            (m, k)
            for m, row in enumerate(self.flags, start=1)
            for k, ok in enumerate(row, start=1)
            if not ok
        ]


@dataclass(frozen=True)
class NumericCheckReport:
    m_max: int
    k_max: int
    prime_count: int
    t_exp: int
    r_exp: int
    records: Tuple[PrimeCheckRecord, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> List[Tuple[int, int, int]]:
        return [(r.p, m, k) for r in self.records for m, k in r.failures()]


def check_prime(p: int, gspec: GSpec, m_max: int, k_max: int) -> PrimeCheckRecord:
    """
    For each 1 <= m <= m_max, 1 <= k <= k_max:
    (i) m*n_p > k*p^t, so no admissible g_p equals n_p, and
    (ii) m*n_p + k*p^t < p^r, so no admissible g_p is congruent to n_p mod p^r.
    """
    n_p = choose_np(p, gspec.t_exp)
    p_t = p ** gspec.t_exp
    p_r = p ** gspec.r_exp
    flags = tuple(
        tuple(m * n_p > k * p_t and m * n_p + k * p_t < p_r for k in range(1, k_max + 1))
        for m in range(1, m_max + 1)
    )
    return PrimeCheckRecord(p, n_p, flags)


def threshold_primes(gspec: GSpec, m_max: int, k_max: int, prime_count: int) -> List[int]:
    """First prime_count primes of P with 2*max(m_max, k_max) < isqrt(p)."""
    bound = 2 * max(m_max, k_max)
    selected = []
    for p in gspec.P.iter_primes():
        if bound < isqrt(p):
            selected.append(p)
            if len(selected) == prime_count:
                break
    return selected


def verify_non_surjectivity(
    gspec: GSpec, m_max: int, k_max: int, prime_count: int, workers: int = 1
) -> NumericCheckReport:
    """Exact certificate that (n_p) is not hit coordinatewise, for every tested (p, m, k)."""
    if min(m_max, k_max, prime_count) < 1:
        raise PreconditionError("budgets must be >= 1")
    primes = threshold_primes(gspec, m_max, k_max, prime_count)

    def run(p: int) -> PrimeCheckRecord:
        return check_prime(p, gspec, m_max, k_max)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            records = tuple(executor.map(run, primes))
    else:
        records = tuple(run(p) for p in primes)
    return NumericCheckReport(m_max, k_max, prime_count, gspec.t_exp, gspec.r_exp, records)


# ----------------------------------------------------------------------
# 4. Full pipeline
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SeparationResult:
    cases: FrozenSet[StrictCase]
    witness: Witness
    verified: bool
    report: Optional[NumericCheckReport] = None


def separate(
    tau: TypeRep,
    rho: TypeRep,
    m_max: int = 8,
    k_max: int = 8,
    prime_count: int = 40,
    workers: int = 1,
) -> SeparationResult:
    cases = classify(tau, rho)
    w = witness(tau, rho)
    if isinstance(w, RankOneWitness):
        return SeparationResult(cases, w, verify_rank1_witness(tau, rho, w.x))
    report = verify_non_surjectivity(w.g, m_max, k_max, prime_count, workers)
    tau_n, rho_n = normalize_pair(tau, rho)
    on_piece = (
        tau_n.support(lambda v: v == Fin(w.g.t_exp)).intersect(w.g.P) == w.g.P
        and rho_n.support(lambda v: v == Fin(w.g.r_exp)).intersect(w.g.P) == w.g.P
    )
    return SeparationResult(cases, w, report.verdict and on_piece, report)
