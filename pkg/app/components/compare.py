"""cmp, join and meet commands."""
from app.components.reports import CommandOutcome, build_report
from app.components.type_dsl import format_type, parse_type
from config.session import SessionConfig
from lattice.prime_sets import PrimeIndexing
from lattice.type_lattice import compare, join, meet

LATTICE_OPS = {"join": join, "meet": meet}


def run_compare(tau_text: str, rho_text: str, config: SessionConfig) -> CommandOutcome:
    ix = PrimeIndexing(config.modulus)
    verdict = compare(parse_type(tau_text, ix), parse_type(rho_text, ix))
    inputs = {"tau": tau_text, "rho": rho_text}
    return CommandOutcome(build_report("cmp", inputs, config, {"relation": verdict}), verdict)


def run_lattice_op(op: str, tau_text: str, rho_text: str, config: SessionConfig) -> CommandOutcome:
    ix = PrimeIndexing(config.modulus)
    result = format_type(LATTICE_OPS[op](parse_type(tau_text, ix), parse_type(rho_text, ix)))
    inputs = {"tau": tau_text, "rho": rho_text}
    return CommandOutcome(build_report(op, inputs, config, {"type": result}), result)
