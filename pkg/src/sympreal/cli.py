"""Command-line interface.

Every subcommand reads a matrix document from a file path (or '-' for
standard input), writes canonical JSON to standard output, and exits with:

* 0 - success / positive verdict
* 1 - malformed input
* 2 - mathematical precondition failure (machine-readable error code)
* 3 - negative verdict (not strongly real / not similar to the negative /
      a failed verification), with the exact violating data

Exit code 3 deliberately separates a mathematical "no" from an
operational failure so pipelines can tell verdicts from crashes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .canonical import PROP24, REVERSER_FRIENDLY, build, symplectic_transform
from .errors import (
    NotHamiltonian,
    NotSimilarToNegative,
    NotStronglyReal,
    SymprealError,
)
from .jordan import jordan_structure
from .matrices import Matrix, is_hamiltonian, random_symplectic, symplectic_inverse
from .reality import classify_strong, skew_reverser, strong_reverser, verify_reverser
from .serialization import (
    DocumentError,
    certificate_parts_from_document,
    certificate_to_document,
    dump_json,
    jordan_structure_to_document,
    matrix_from_document,
    matrix_to_document,
    report_to_document,
    skew_spec_to_document,
    spec_from_document,
    spec_to_document,
)
from .skew import is_similar_to_negative, negation_involution, skew_canonical_transform

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_PRECONDITION = 2
EXIT_NEGATIVE = 3


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read input: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def _read_matrix(path: str) -> Matrix:
    return matrix_from_document(_read_json(path))


def _emit(payload: Any) -> None:
    sys.stdout.write(dump_json(payload))


def _cmd_classify(args: argparse.Namespace) -> int:
    x = _read_matrix(args.matrix)
    if not is_hamiltonian(x):
        raise NotHamiltonian("input matrix is not Hamiltonian")
    js = jordan_structure(x)
    report = classify_strong(js)
    _emit(
        {
            "jordan_structure": jordan_structure_to_document(js),
            "strong_reality": report_to_document(report),
        }
    )
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def _cmd_skew_reverser(args: argparse.Namespace) -> int:
    x = _read_matrix(args.matrix)
    cert = skew_reverser(x)
    _emit(certificate_to_document(cert))
    return EXIT_OK


def _cmd_strong_reverser(args: argparse.Namespace) -> int:
    x = _read_matrix(args.matrix)
    try:
        cert = strong_reverser(x)
    except NotStronglyReal as verdict:
        _emit(
            {
                "error": {"code": verdict.code, "message": str(verdict)},
                "classification": report_to_document(verdict.report),
            }
        )
        return EXIT_NEGATIVE
    report = classify_strong(jordan_structure(x))
    _emit(certificate_to_document(cert, classification=report_to_document(report)))
    return EXIT_OK


def _cmd_sh_classify(args: argparse.Namespace) -> int:
    x = _read_matrix(args.matrix)
    verdict = is_similar_to_negative(x)
    js = jordan_structure(x)
    _emit(
        {
            "jordan_structure": jordan_structure_to_document(js),
            "similar_to_negative": verdict,
        }
    )
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_sh_reverser(args: argparse.Namespace) -> int:
    x = _read_matrix(args.matrix)
    try:
        cert = negation_involution(x)
    except NotSimilarToNegative as verdict:
        _emit({"error": {"code": verdict.code, "message": str(verdict)}})
        return EXIT_NEGATIVE
    _emit(certificate_to_document(cert))
    return EXIT_OK


def _cmd_canonical(args: argparse.Namespace) -> int:
    x = _read_matrix(args.matrix)
    if args.structure == "hamiltonian":
        s, spec = symplectic_transform(x, args.policy)
        spec_doc = spec_to_document(spec)
    else:
        s, skew_spec = skew_canonical_transform(x)
        spec_doc = skew_spec_to_document(skew_spec)
    _emit({"transform": matrix_to_document(s), "spec": spec_doc})
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    doc = _read_json(args.certificate)
    subject, reverser, kind, structure = certificate_parts_from_document(doc)
    checks = verify_reverser(subject, reverser, kind, structure)
    _emit({"checks": checks.as_dict(), "valid": checks.all_true()})
    return EXIT_OK if checks.all_true() else EXIT_NEGATIVE


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec_doc = json.loads(args.spec)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid spec JSON: {exc}") from exc
    spec = spec_from_document(spec_doc)
    canonical = build(spec)
    half = canonical.rows // 2
    conjugator = random_symplectic(half, args.seed)
    subject = conjugator * canonical * symplectic_inverse(conjugator)
    metadata: dict[str, Any] = {
        "seed": args.seed,
        "provenance": {"spec": spec_to_document(spec)},
    }
    if args.label:
        metadata["label"] = args.label
    _emit(matrix_to_document(subject, metadata=metadata))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympreal",
        description=(
            "Exact classification of Hamiltonian and skew-Hamiltonian "
            "matrices up to sign under the symplectic group, with "
            "machine-verifiable reverser certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_matrix_command(name: str, help_text: str, handler):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("matrix", help="matrix document path, or - for stdin")
        p.set_defaults(handler=handler)
        return p

    add_matrix_command(
        "classify",
        "Jordan structure and strong-reality classification",
        _cmd_classify,
    )
    add_matrix_command(
        "skew-reverser",
        "skew-involution reverser certificate (exists for every Hamiltonian)",
        _cmd_skew_reverser,
    )
    add_matrix_command(
        "strong-reverser",
        "involution reverser certificate, or the violating blocks",
        _cmd_strong_reverser,
    )
    add_matrix_command(
        "sh-classify",
        "negation-similarity verdict for a skew-Hamiltonian matrix",
        _cmd_sh_classify,
    )
    add_matrix_command(
        "sh-reverser",
        "symplectic involution conjugating a skew-Hamiltonian matrix to its negative",
        _cmd_sh_reverser,
    )
    canonical_cmd = add_matrix_command(
        "canonical",
        "symplectic transform to canonical form plus the block spec",
        _cmd_canonical,
    )
    canonical_cmd.add_argument(
        "--policy",
        choices=[PROP24, REVERSER_FRIENDLY],
        default=PROP24,
        help="canonical target for even nilpotent blocks",
    )
    canonical_cmd.add_argument(
        "--structure",
        choices=["hamiltonian", "skew-hamiltonian"],
        default="hamiltonian",
        help="which canonical theory to apply",
    )

    verify_cmd = sub.add_parser("verify", help="re-check a certificate from scratch")
    verify_cmd.add_argument("certificate", help="certificate document path, or -")
    verify_cmd.set_defaults(handler=_cmd_verify)

    generate_cmd = sub.add_parser(
        "generate", help="build a seeded random conjugate of a canonical form"
    )
    generate_cmd.add_argument(
        "--spec", required=True, help="inline canonical spec JSON"
    )
    generate_cmd.add_argument("--seed", type=int, default=0)
    generate_cmd.add_argument("--label", default=None)
    generate_cmd.set_defaults(handler=_cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DocumentError as exc:
        _emit({"error": {"code": "malformed_input", "message": str(exc)}})
        return EXIT_MALFORMED
    except (NotStronglyReal, NotSimilarToNegative) as verdict:
        _emit({"error": {"code": verdict.code, "message": str(verdict)}})
        return EXIT_NEGATIVE
    except SymprealError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}})
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
