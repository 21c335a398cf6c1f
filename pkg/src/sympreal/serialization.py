"""Bit-exact JSON documents for matrices, specs, structures, certificates.

Scalars are serialized as two-element arrays of rational strings (the
exact_field grammar); nothing is ever rendered as a float. Serialization
is canonical (sorted keys, fixed separators), so identical inputs produce
byte-identical documents.
"""

from __future__ import annotations

import json
from typing import Any

from .canonical import (
    PROP24,
    REVERSER_FRIENDLY,
    CanonicalSpec,
    EvenNilBlock,
    PairBlock,
)
from .jordan import JordanStructure
from .matrices import Matrix
from .reality import (
    HAMILTONIAN,
    INVOLUTION,
    SKEW_HAMILTONIAN,
    SKEW_INVOLUTION,
    CheckRecord,
    ReverserCertificate,
    StrongRealityReport,
)
from .scalars import GaussianRational, format_rational, parse_rational
from .skew import SkewBlock, SkewCanonicalSpec


class DocumentError(ValueError):
    """Raised for malformed input documents."""


def scalar_to_pair(z: GaussianRational) -> list[str]:
    return [format_rational(z.re), format_rational(z.im)]


def scalar_from_pair(pair: Any) -> GaussianRational:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise DocumentError(f"scalar must be a [re, im] pair, got {pair!r}")
    try:
        return GaussianRational(parse_rational(pair[0]), parse_rational(pair[1]))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def matrix_to_document(
    m: Matrix, metadata: dict[str, Any] | None = None
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "order": m.rows,
        "entries": [
            [scalar_to_pair(m.entry(i, j)) for j in range(m.cols)]
            for i in range(m.rows)
        ],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def matrix_from_document(doc: Any) -> Matrix:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise DocumentError("matrix document must be an object with 'entries'")
    entries = doc["entries"]
    if not isinstance(entries, list) or not entries:
        raise DocumentError("'entries' must be a nonempty 2-D array")
    rows = []
    for row in entries:
        if not isinstance(row, list) or len(row) != len(entries[0]):
            raise DocumentError("'entries' rows must have equal length")
        rows.append([scalar_from_pair(e) for e in row])
    m = Matrix(rows)
    declared = doc.get("order")
    if declared is not None and declared != m.rows:
        raise DocumentError(
            f"declared order {declared} does not match entry grid {m.rows}"
        )
    return m


def jordan_structure_to_document(js: JordanStructure) -> dict[str, Any]:
    return {
        "order": js.order,
        "blocks": [
            {
                "eigenvalue": scalar_to_pair(block.eigenvalue),
                "size": block.size,
                "multiplicity": mult,
            }
            for block, mult in js.items()
        ],
    }


def report_to_document(report: StrongRealityReport) -> dict[str, Any]:
    return {
        "verdict": report.verdict,
        "violations": [
            {
                "eigenvalue": scalar_to_pair(block.eigenvalue),
                "size": block.size,
                "multiplicity": mult,
            }
            for block, mult in report.violations
        ],
    }


def spec_to_document(spec: CanonicalSpec) -> dict[str, Any]:
    blocks = []
    for block in spec.blocks:
        if isinstance(block, EvenNilBlock):
            blocks.append({"type": "even_nil", "half_size": block.half_size})
        else:
            blocks.append(
                {
                    "type": "pair",
                    "eigenvalue": scalar_to_pair(block.eigenvalue),
                    "size": block.size,
                }
            )
    return {"policy": spec.policy, "blocks": blocks}


def spec_from_document(doc: Any) -> CanonicalSpec:
    if not isinstance(doc, dict) or "blocks" not in doc:
        raise DocumentError("spec document must be an object with 'blocks'")
    policy = doc.get("policy", PROP24)
    if policy not in (PROP24, REVERSER_FRIENDLY):
        raise DocumentError(f"unknown policy: {policy!r}")
    blocks = []
    for item in doc["blocks"]:
        if not isinstance(item, dict) or "type" not in item:
            raise DocumentError(f"malformed block entry: {item!r}")
        if item["type"] == "even_nil":
            half = item.get("half_size")
            if not isinstance(half, int) or half < 1:
                raise DocumentError(f"bad half_size in {item!r}")
            blocks.append(EvenNilBlock(half))
        elif item["type"] == "pair":
            size = item.get("size")
            if not isinstance(size, int) or size < 1:
                raise DocumentError(f"bad size in {item!r}")
            blocks.append(PairBlock(scalar_from_pair(item.get("eigenvalue")), size))
        else:
            raise DocumentError(f"unknown block type: {item['type']!r}")
    if not blocks:
        raise DocumentError("spec must contain at least one block")
    return CanonicalSpec(tuple(blocks), policy)


def skew_spec_to_document(spec: SkewCanonicalSpec) -> dict[str, Any]:
    return {
        "blocks": [
            {"eigenvalue": scalar_to_pair(b.eigenvalue), "size": b.size}
            for b in spec.blocks
        ]
    }


def certificate_to_document(
    cert: ReverserCertificate,
    classification: dict[str, Any] | None = None,
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "subject": matrix_to_document(cert.subject),
        "reverser": matrix_to_document(cert.reverser),
        "kind": cert.kind,
        "subject_structure": cert.subject_structure,
        "checks": cert.checks.as_dict(),
    }
    if classification is not None:
        doc["classification"] = classification
    return doc


def certificate_parts_from_document(doc: Any) -> tuple[Matrix, Matrix, str, str]:
    """Extract (subject, reverser, kind, subject_structure) for re-checking."""
    if not isinstance(doc, dict):
        raise DocumentError("certificate document must be an object")
    for key in ("subject", "reverser", "kind"):
        if key not in doc:
            raise DocumentError(f"certificate document missing {key!r}")
    kind = doc["kind"]
    if kind not in (INVOLUTION, SKEW_INVOLUTION):
        raise DocumentError(f"unknown certificate kind: {kind!r}")
    structure = doc.get("subject_structure", HAMILTONIAN)
    if structure not in (HAMILTONIAN, SKEW_HAMILTONIAN):
        raise DocumentError(f"unknown subject structure: {structure!r}")
    subject = matrix_from_document(doc["subject"])
    reverser = matrix_from_document(doc["reverser"])
    return subject, reverser, kind, structure


def dump_json(payload: Any) -> str:
    """Canonical JSON rendering: sorted keys, two-space indent, newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
