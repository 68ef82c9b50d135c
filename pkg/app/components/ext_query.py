"""ext command: Zero/Continuum with both oracle routes side by side."""
from app.components.reports import CommandOutcome, build_report, frame_table, section
from app.components.type_dsl import parse_type
from config.session import SessionConfig
from lattice.errors import InvariantBreach
from lattice.ext_oracle import ext_class, ext_vanishes_rank1, quotient_shape, vanishes_via_shape
from lattice.prime_sets import PrimeIndexing


def _route(vanishes: bool) -> str:
    return "Zero" if vanishes else "Continuum"


def run_ext(t_text: str, x_text: str, config: SessionConfig) -> CommandOutcome:
    ix = PrimeIndexing(config.modulus)
    T, X = parse_type(t_text, ix), parse_type(x_text, ix)

    criterion = ext_vanishes_rank1(T, X)
    shape = quotient_shape(X, T)
    via_shape = vanishes_via_shape(shape)
    if criterion != via_shape:
        raise InvariantBreach(f"oracle routes disagree: criterion={criterion}, shape={via_shape}")

    components = [
        {"kind": c.kind.value, "primes": str(c.primes), "exponent": c.exponent}
        for c in shape.components
    ]
    result = {
        "class": ext_class(T, X).value,
        "criterion": _route(criterion),
        "shape_route": _route(via_shape),
        "shape": components,
    }
    text = "\n".join([
        result["class"],
        f"criterion: {result['criterion']}",
        f"shape:     {result['shape_route']}",
        "",
        section("quotient shape", frame_table(
            [{**c, "exponent": "" if c["exponent"] is None else c["exponent"]} for c in components],
            ["kind", "primes", "exponent"],
        )),
    ])
    return CommandOutcome(build_report("ext", {"T": t_text, "X": x_text}, config, result), text)
