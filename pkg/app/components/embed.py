"""embed command: power set or poset file into the type lattice, and its cotorsion image."""
from typing import Optional

from app.components.reports import CommandOutcome, build_report, frame_table, section
from app.components.separate import witness_payload, witness_text
from app.components.type_dsl import format_type
from config.config import EXIT_CODES, MAX_POWERSET_ATOMS
from config.session import SessionConfig
from lattice.errors import PreconditionError
from lattice.poset_embed import (
    cotorsion_image_report,
    load_poset,
    poset_embed,
    powerset_embed,
    powerset_poset,
    verify_embedding,
)
from lattice.prime_sets import PrimeIndexing
from lattice.separation import ordered_cases


def run_embed(config: SessionConfig, powerset: Optional[int] = None, poset_path: Optional[str] = None,
              workers: int = 1) -> CommandOutcome:
    ix = PrimeIndexing(config.modulus)
    if powerset is not None:
        if powerset > MAX_POWERSET_ATOMS:
            raise PreconditionError(f"--powerset is limited to {MAX_POWERSET_ATOMS} atoms, got {powerset}")
        embedding = powerset_embed(powerset, ix)
        poset = powerset_poset(powerset)
        inputs = {"powerset": powerset}
    else:
        poset = load_poset(poset_path)
        embedding = poset_embed(poset, ix)
        inputs = {"poset": {"n": poset.n, "le": [[a, b] for a in range(poset.n) for b in range(poset.n) if poset.le(a, b)]}}

    verified = verify_embedding(embedding, poset, workers)
    assignment = [{"element": label, "type": format_type(t)} for label, t in zip(embedding.labels, embedding.images)]
    result = {"assignment": assignment, "embedding_verified": verified}
    lines = [
        section("assignment", frame_table(assignment, ["element", "type"])),
        "",
        f"order-preserving and order-reflecting: {'pass' if verified else 'FAIL'}",
    ]

    if not verified:
        return CommandOutcome(build_report("embed", inputs, config, result), "\n".join(lines),
                              EXIT_CODES["VERIFICATION"])

    image = cotorsion_image_report(
        embedding, poset, config.m_max, config.k_max, config.prime_count, workers, verified=verified
    )
    labels = embedding.labels
    result["cotorsion_image"] = {
        "summary": image.summary(),
        "covering": [
            {
                "lower": labels[r.lower],
                "upper": labels[r.upper],
                "cases": [c.value for c in ordered_cases(r.result.cases)],
                "witness": witness_payload(r.result.witness),
                "verified": r.result.verified,
            }
            for r in image.covering
        ],
        "incomparable": [
            {"a": labels[r.a], "b": labels[r.b], "a_leq_b": r.a_leq_b, "b_leq_a": r.b_leq_a}
            for r in image.incomparable
        ],
    }
    covering_rows = [
        {
            "lower": labels[r.lower],
            "upper": labels[r.upper],
            "witness": witness_text(r.result.witness),
            "verified": r.result.verified,
        }
        for r in image.covering
    ]
    summary = image.summary()
    lines += [
        "",
        section(
            "cotorsion image (order reversed): covering pairs",
            frame_table(covering_rows, ["lower", "upper", "witness", "verified"]),
        ),
        "",
        f"covering pairs: {summary['covering_pairs']}, witnesses verified: {summary['witnesses_verified']}, "
        f"incomparable pairs (mutual non-leq): {summary['incomparable_pairs']}",
    ]
    ok = image.all_witnesses_verified and all(not (r.a_leq_b or r.b_leq_a) for r in image.incomparable)
    exit_code = EXIT_CODES["OK"] if ok else EXIT_CODES["VERIFICATION"]
    return CommandOutcome(build_report("embed", inputs, config, result), "\n".join(lines), exit_code)
