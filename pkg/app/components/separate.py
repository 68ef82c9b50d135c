"""separate command: cases, witness and its verification."""
from typing import Any, Dict

from app.components.reports import CommandOutcome, build_report, frame_table, section
from app.components.type_dsl import format_type, parse_type
from config.config import EXIT_CODES
from config.session import SessionConfig
from lattice.prime_sets import PrimeIndexing
from lattice.separation import (
    InfiniteRankWitness,
    NumericCheckReport,
    SeparationResult,
    Witness,
    ordered_cases,
    separate,
)


def witness_payload(w: Witness) -> Dict[str, Any]:
    if isinstance(w, InfiniteRankWitness):
        return {
            "kind": "InfiniteRank",
            "case": w.case.value,
            "P": str(w.g.P),
            "t": w.g.t_exp,
            "r": w.g.r_exp,
        }
    return {"kind": "RankOne", "case": w.case.value, "type": format_type(w.x)}


def witness_text(w: Witness) -> str:
    if isinstance(w, InfiniteRankWitness):
        return f"GSpec(P = {w.g.P}, t = {w.g.t_exp}, r = {w.g.r_exp})"
    return f"RankOne {format_type(w.x)}"


def numeric_payload(report: NumericCheckReport) -> Dict[str, Any]:
    return {
        "m_max": report.m_max,
        "k_max": report.k_max,
        "prime_count": report.prime_count,
        "primes_tested": len(report.records),
        "records": [{"p": r.p, "n_p": r.n_p, "passed": r.passed} for r in report.records],
        "failures": [list(f) for f in report.failures()],
        "verdict": report.verdict,
    }


def result_payload(result: SeparationResult) -> Dict[str, Any]:
    payload = {
        "cases": [c.value for c in ordered_cases(result.cases)],
        "witness": witness_payload(result.witness),
        "verified": result.verified,
    }
    if result.report is not None:
        payload["numeric_check"] = numeric_payload(result.report)
    return payload


def run_separate(tau_text: str, rho_text: str, config: SessionConfig, workers: int = 1) -> CommandOutcome:
    ix = PrimeIndexing(config.modulus)
    tau, rho = parse_type(tau_text, ix), parse_type(rho_text, ix)
    result = separate(tau, rho, config.m_max, config.k_max, config.prime_count, workers)
    payload = result_payload(result)

    lines = [
        f"cases:    {', '.join(payload['cases'])}",
        f"witness:  {witness_text(result.witness)}",
        f"verified: {'pass' if result.verified else 'FAIL'}",
    ]
    if result.report is not None:
        check = payload["numeric_check"]
        lines += [
            "",
            section(
                f"non-surjectivity check (m <= {check['m_max']}, k <= {check['k_max']}, "
                f"{check['primes_tested']} primes)",
                frame_table(check["records"], ["p", "n_p", "passed"]),
            ),
        ]
    exit_code = EXIT_CODES["OK"] if result.verified else EXIT_CODES["VERIFICATION"]
    report = build_report("separate", {"tau": tau_text, "rho": rho_text}, config, payload)
    return CommandOutcome(report, "\n".join(lines), exit_code)
