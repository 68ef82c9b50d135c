"""
selftest command: seeded property suites over the whole library.

Each suite returns the number of trials run and the failures it saw; the
JSON report carries no timings so a fixed seed gives identical bytes.
"""
import time
from dataclasses import dataclass, field
from math import isqrt
from typing import Callable, Dict, Iterable, List, Optional

from app.components.reports import CommandOutcome, build_report, frame_table
from config.config import EXIT_CODES, SAMPLING, SELFTEST_SUITES
from config.session import SessionConfig
from lattice.errors import LatticeError
from lattice.ext_oracle import (
    CompletelyDecomposable,
    ext_vanishes_cd,
    ext_vanishes_rank1,
    quotient_shape,
    vanishes_via_shape,
)
from lattice.poset_embed import (
    cotorsion_image_report,
    powerset_embed,
    powerset_poset,
    verify_embedding,
)
from lattice.prime_sets import PrimeIndexing, SymbolicPrimeSet, first_primes
from lattice.sampling import TypeSampler
from lattice.separation import GSpec, classify, separate, verify_non_surjectivity
from lattice.type_lattice import equivalent, ext_max, join, leq, meet
from utils.utils_logging import AppLogger, log_suite_result

MAX_REPORTED_FAILURES = 5


@dataclass
class SuiteContext:
    config: SessionConfig
    sampler: TypeSampler
    workers: int = 1


@dataclass
class SuiteResult:
    key: str
    name: str
    trials: int
    failures: List[str] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def fail(self, message: str) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(message)


# ----------------------------------------------------------------------
# Suites
# ----------------------------------------------------------------------
def suite_prime_sets(ctx: SuiteContext, out: SuiteResult) -> None:
    s = ctx.sampler
    k = s.indexing.modulus
    probes_pool = first_primes(500)
    tail = first_primes(SAMPLING["exception_prime_count"] + 10 * k)
    for trial in range(out.trials):
        a, b, c = s.prime_set(), s.prime_set(), s.prime_set()
        lhs, rhs = (a | b) & c, (a & c) | (b & c)
        demorgan = (~(a | b), ~a & ~b)
        for p in s.rng.sample(probes_pool, 20):
            if (p in lhs) != (p in rhs):
                out.fail(f"trial {trial}: distributivity differs at {p}")
            if (p in demorgan[0]) != (p in demorgan[1]):
                out.fail(f"trial {trial}: De Morgan differs at {p}")
            if (p in ~~a) != (p in a):
                out.fail(f"trial {trial}: complement not involutive at {p}")
            owners = [i for i in range(k) if p in SymbolicPrimeSet.cell(s.indexing, i)]
            if len(owners) != 1:
                out.fail(f"trial {trial}: {p} lies in cells {owners}")
        members = [p for p in tail if p in a]
        if a.is_finite() and set(members) != set(a.plus):
            out.fail(f"trial {trial}: finite set {a} has members {members}")
        if a.is_infinite() and not any(p > max(a.explicit_primes(), default=0) for p in members):
            out.fail(f"trial {trial}: infinite set {a} has no member past its explicit primes")


def suite_lattice_axioms(ctx: SuiteContext, out: SuiteResult) -> None:
    s = ctx.sampler
    probes = first_primes(200)
    for trial in range(out.trials):
        a, b, c = s.type(), s.type(), s.type()
        checks = {
            "join commutative": equivalent(join(a, b), join(b, a)),
            "meet commutative": equivalent(meet(a, b), meet(b, a)),
            "join associative": equivalent(join(join(a, b), c), join(a, join(b, c))),
            "meet associative": equivalent(meet(meet(a, b), c), meet(a, meet(b, c))),
            "join idempotent": equivalent(join(a, a), a),
            "meet idempotent": equivalent(meet(a, a), a),
            "absorption join": equivalent(join(a, meet(a, b)), a),
            "absorption meet": equivalent(meet(a, join(a, b)), a),
            "upper bound": leq(a, join(a, b)) and leq(b, join(a, b)),
            "lower bound": leq(meet(a, b), a) and leq(meet(a, b), b),
            "equivalence symmetric": equivalent(a, b) == equivalent(b, a),
            "antisymmetry on classes": (leq(a, b) and leq(b, a)) == equivalent(a, b),
        }
        if leq(a, c) and leq(b, c):
            checks["least upper bound"] = leq(join(a, b), c)
        if leq(c, a) and leq(c, b):
            checks["greatest lower bound"] = leq(c, meet(a, b))
        if equivalent(a, b) and equivalent(b, c):
            checks["equivalence transitive"] = equivalent(a, c)
        if leq(a, b) and leq(b, c):
            checks["leq transitive"] = leq(a, c)
        for name, ok in checks.items():
            if not ok:
                out.fail(f"trial {trial}: {name}")
        if trial % 10 == 0:
            j = join(a, b)
            for p in probes:
                if j.value_at(p) != ext_max(a.value_at(p), b.value_at(p)):
                    out.fail(f"trial {trial}: join is not pointwise max at {p}")
                    break


def suite_oracle_equivalence(ctx: SuiteContext, out: SuiteResult) -> None:
    s = ctx.sampler
    for trial in range(out.trials):
        T, X = s.type(), s.type()
        if ext_vanishes_rank1(T, X) != vanishes_via_shape(quotient_shape(X, T)):
            out.fail(f"trial {trial}: criterion and quotient shape disagree")


def suite_monotonicity(ctx: SuiteContext, out: SuiteResult) -> None:
    s = ctx.sampler
    inner = SELFTEST_SUITES["MONO"].get("inner_trials", 1)
    for trial in range(out.trials):
        tau, rho = s.leq_pair()
        for _ in range(inner):
            X = s.type()
            if ext_vanishes_rank1(rho, X) and not ext_vanishes_rank1(tau, X):
                out.fail(f"trial {trial}: vanishing for the larger type but not the smaller")
            if ext_vanishes_rank1(tau, X) and not ext_vanishes_rank1(tau, s.above(X)):
                out.fail(f"trial {trial}: second argument not monotone")


def suite_well_defined(ctx: SuiteContext, out: SuiteResult) -> None:
    s = ctx.sampler
    for trial in range(out.trials):
        tau = s.type()
        tau2 = s.finite_perturbation(tau)
        if not equivalent(tau, tau2):
            out.fail(f"trial {trial}: finite perturbation changed the class")
            continue
        X = s.type()
        if ext_vanishes_rank1(tau, X) != ext_vanishes_rank1(tau2, X):
            out.fail(f"trial {trial}: answer depends on the first representative")
        if ext_vanishes_rank1(X, tau) != ext_vanishes_rank1(X, tau2):
            out.fail(f"trial {trial}: answer depends on the second representative")


def suite_join_meet(ctx: SuiteContext, out: SuiteResult) -> None:
    s = ctx.sampler
    for trial in range(out.trials):
        tau, rho, X = s.type(), s.type(), s.type()
        t_ok, r_ok = ext_vanishes_rank1(tau, X), ext_vanishes_rank1(rho, X)
        if ext_vanishes_rank1(join(tau, rho), X) != (t_ok and r_ok):
            out.fail(f"trial {trial}: join law")
        if (t_ok or r_ok) and not ext_vanishes_rank1(meet(tau, rho), X):
            out.fail(f"trial {trial}: meet direction")


def suite_separation(ctx: SuiteContext, out: SuiteResult) -> None:
    s, cfg = ctx.sampler, ctx.config
    for trial in range(out.trials):
        tau, rho = s.strict_pair()
        if not classify(tau, rho):
            out.fail(f"trial {trial}: no case for a strict pair")
            continue
        result = separate(tau, rho, cfg.m_max, cfg.k_max, cfg.prime_count, ctx.workers)
        if not result.verified:
            out.fail(f"trial {trial}: {type(result.witness).__name__} witness failed verification")


def suite_completely_decomposable(ctx: SuiteContext, out: SuiteResult) -> None:
    s = ctx.sampler
    for trial in range(out.trials):
        tau, rho = s.both_finite_pair()
        G = s.completely_decomposable()
        if ext_vanishes_cd(CompletelyDecomposable((tau,)), G) != ext_vanishes_cd(CompletelyDecomposable((rho,)), G):
            out.fail(f"trial {trial}: classes differ on a rank-{G.rank} group")


def suite_half_exponent(ctx: SuiteContext, out: SuiteResult) -> None:
    cfg = ctx.config
    gspec = GSpec(SymbolicPrimeSet.universe(ctx.sampler.indexing), 1, 2)
    report = verify_non_surjectivity(gspec, cfg.m_max, cfg.k_max, out.trials, ctx.workers)
    for p, m, k in report.failures():
        out.fail(f"p={p}, m={m}, k={k}")
    for record in report.records:
        if not record.n_p ** 2 <= record.p ** 3 < (record.n_p + 1) ** 2:
            out.fail(f"p={record.p}: n_p={record.n_p} outside the bracket")
        if record.n_p != isqrt(record.p ** 3):
            out.fail(f"p={record.p}: n_p is not the integer square root")
    shorter = verify_non_surjectivity(gspec, cfg.m_max, cfg.k_max, max(1, out.trials // 2), ctx.workers)
    if shorter.records != report.records[: len(shorter.records)]:
        out.fail("records change when fewer primes are tested")


def suite_powerset_embedding(ctx: SuiteContext, out: SuiteResult) -> None:
    n = out.trials
    ix = PrimeIndexing(max(ctx.config.modulus, n))
    poset = powerset_poset(n)
    e = powerset_embed(n, ix)
    verified = verify_embedding(e, poset, ctx.workers)
    if not verified:
        out.fail(f"powerset_embed({n}) is not an order embedding")
        return
    singletons = [e.images[1 << i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if leq(singletons[i], singletons[j]) or leq(singletons[j], singletons[i]):
                out.fail(f"singletons {i} and {j} are comparable")
    rng = ctx.sampler.rng
    for _ in range(100):
        x, y = rng.randrange(1 << n), rng.randrange(1 << n)
        if not equivalent(e.images[x | y], join(e.images[x], e.images[y])):
            out.fail(f"union of {e.labels[x]} and {e.labels[y]} is not the join")
        if not equivalent(e.images[x & y], meet(e.images[x], e.images[y])):
            out.fail(f"intersection of {e.labels[x]} and {e.labels[y]} is not the meet")
        if x != y and equivalent(e.images[x], e.images[y]):
            out.fail(f"{e.labels[x]} and {e.labels[y]} have equivalent images")
    cfg = ctx.config
    image = cotorsion_image_report(e, poset, cfg.m_max, cfg.k_max, cfg.prime_count, ctx.workers, verified=True)
    for record in image.covering:
        if not record.result.verified:
            out.fail(f"covering pair {e.labels[record.lower]} < {e.labels[record.upper]} not separated")


SUITES: Dict[str, Callable[[SuiteContext, SuiteResult], None]] = {
    "SETS": suite_prime_sets,
    "LAT": suite_lattice_axioms,
    "ORC": suite_oracle_equivalence,
    "MONO": suite_monotonicity,
    "WELL": suite_well_defined,
    "JOIN": suite_join_meet,
    "SEP": suite_separation,
    "CD": suite_completely_decomposable,
    "NP": suite_half_exponent,
    "EMB": suite_powerset_embedding,
}


# ----------------------------------------------------------------------
# Runner
# ----------------------------------------------------------------------
def ordered_suite_keys(selected: Optional[Iterable[str]] = None) -> List[str]:
    keys = sorted(SELFTEST_SUITES, key=lambda key: SELFTEST_SUITES[key]["ordinal"])
    if selected:
        wanted = set(selected)
        keys = [key for key in keys if key in wanted]
    return keys


def run_suite(key: str, config: SessionConfig, trials: Optional[int] = None, workers: int = 1) -> SuiteResult:
    suite = SELFTEST_SUITES[key]
    modulus = min(config.modulus, SAMPLING["max_modulus"])
    sampler = TypeSampler(PrimeIndexing(modulus), seed=config.seed * 1000 + suite["ordinal"])
    result = SuiteResult(key, suite["suite_name"], trials if trials is not None else suite["trials"])
    try:
        SUITES[key](SuiteContext(config, sampler, workers), result)
    except LatticeError as e:
        result.fail(f"{type(e).__name__}: {e}")
    return result


def run_selftest(config: SessionConfig, logger: AppLogger, suites: Optional[Iterable[str]] = None,
                 trials: Optional[int] = None, workers: int = 1) -> CommandOutcome:
    """Run the selected suites (all by default) in ordinal order; `trials` caps every suite."""
    results = []
    for key in ordered_suite_keys(suites):
        budget = SELFTEST_SUITES[key]["trials"] if trials is None else min(trials, SELFTEST_SUITES[key]["trials"])
        started = time.perf_counter()
        result = run_suite(key, config, budget, workers)
        log_suite_result(logger, result.name, result.trials, result.failure_count, time.perf_counter() - started)
        results.append(result)

    rows = [
        {
            "suite": r.key,
            "name": r.name,
            "trials": r.trials,
            "failures": r.failure_count,
            "status": "pass" if r.passed else "FAIL",
        }
        for r in results
    ]
    all_passed = all(r.passed for r in results)
    payload = {
        "suites": [{**row, "examples": r.failures} for row, r in zip(rows, results)],
        "all_passed": all_passed,
    }
    lines = [frame_table(rows, ["suite", "name", "trials", "failures", "status"]), ""]
    for r in results:
        for message in r.failures:
            lines.append(f"[{r.key}] {message}")
    lines.append("selftest: " + ("all suites passed" if all_passed else "FAILED"))
    inputs = {"suites": [r.key for r in results], "trials": trials}
    exit_code = EXIT_CODES["OK"] if all_passed else EXIT_CODES["VERIFICATION"]
    return CommandOutcome(build_report("selftest", inputs, config, payload), "\n".join(lines), exit_code)
