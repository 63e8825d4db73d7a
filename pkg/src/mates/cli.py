"""Command line front end: serve the API, run one-shot consultations,
and validate knowledge-base files.

Exit codes: 0 success, 1 I/O failure, 2 domain error (parse failure,
validation violations, unknown ids). The knowledge base comes from
`--kb`, else the `MATES_KB` environment variable, else the bundled one.
"""

from __future__ import annotations

import argparse
import os
import sys
import textwrap
from pathlib import Path
from typing import Any

import uvicorn

from . import wire
from .diagnosis import Query, consult_by_disease, rank
from .dsl import ParseError, parse_kb
from .kb import KnowledgeBase, UnknownIdError, default_kb, validate
from .service import create_app


class _CliError(Exception):
    def __init__(self, exit_code: int, message: str) -> None:
        super().__init__(message)
        self.exit_code = exit_code


def _load_kb(path_arg: str | None) -> KnowledgeBase:
    path = path_arg or os.environ.get("MATES_KB")
    if path is None:
        return default_kb()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(1, f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_kb(text)
    except ParseError as exc:
        raise _CliError(2, f"{path}: {exc}") from exc


def _require_clean(kb: KnowledgeBase) -> None:
    violations = validate(kb)
    if violations:
        listing = "\n".join(f"  {v.kind}({v.subject}): {v.message}" for v in violations)
        raise _CliError(2, f"knowledge base is invalid:\n{listing}")


def _split_ids(raw: str) -> list[str]:
    return [part.strip() for part in raw.split(",") if part.strip()]


def _wrap(text: str) -> str:
    return textwrap.fill(text, width=78, initial_indent="     ",
                         subsequent_indent="     ")


def _print_suggestions(body: dict[str, Any]) -> None:
    suggestions = body["suggestions"]
    if not suggestions:
        print("no matching disease")
        return
    for pos, item in enumerate(suggestions, start=1):
        print(f"{pos}. {item['display_name']}  score {item['score']}")
        print(f"   matched: {', '.join(item['matched_symptom_ids'])}")
        print("   Care and Treatment:")
        print(_wrap(item["care_treatment"]))
        print("   If not treated:")
        print(_wrap(item["if_untreated"]))


def _print_results(body: dict[str, Any]) -> None:
    for item in body["results"]:
        print(item["display_name"])
        print("   Care and Treatment:")
        print(_wrap(item["care_treatment"]))
        print("   If not treated:")
        print(_wrap(item["if_untreated"]))


def _cmd_serve(args: argparse.Namespace) -> int:
    kb = _load_kb(args.kb)
    _require_clean(kb)
    app = create_app(kb, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _cmd_consult(args: argparse.Namespace) -> int:
    kb = _load_kb(args.kb)
    _require_clean(kb)
    try:
        if args.symptoms is not None:
            query = Query.of(_split_ids(args.symptoms))
            body: dict[str, Any] = wire.consult_symptoms_body(kb, rank(kb, query))
        else:
            advice = consult_by_disease(kb, _split_ids(args.diseases))
            body = wire.consult_disease_body(kb, advice)
    except (UnknownIdError, ValueError) as exc:
        raise _CliError(2, str(exc)) from exc
    if args.format == "json":
        sys.stdout.write(wire.to_json_bytes(body).decode("utf-8") + "\n")
    elif "suggestions" in body:
        _print_suggestions(body)
    else:
        _print_results(body)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    kb = _load_kb(args.kb)
    violations = validate(kb)
    if violations:
        for v in violations:
            print(f"{v.kind}({v.subject}): {v.message}", file=sys.stderr)
        return 2
    print(f"ok: {len(kb.symptoms)} symptoms, {len(kb.diseases)} diseases, "
          f"{len(kb.rules)} rules")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mates",
        description="Maternal-care expert system: consultation service and KB tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP API server")
    serve.add_argument("--kb", metavar="PATH", help="knowledge-base file")
    serve.add_argument("--host", default="127.0.0.1", help="bind address")
    serve.add_argument("--port", type=int, default=8080, help="bind port")
    serve.add_argument("--ui-dir", metavar="DIR",
                       help="built web UI bundle to serve at /")

    consult = sub.add_parser("consult", help="one-shot consultation")
    consult.add_argument("--kb", metavar="PATH", help="knowledge-base file")
    mode = consult.add_mutually_exclusive_group(required=True)
    mode.add_argument("--symptoms", metavar="IDS",
                      help="comma-separated symptom ids to rank diseases for")
    mode.add_argument("--diseases", metavar="IDS",
                      help="comma-separated disease ids to retrieve guidance for")
    consult.add_argument("--format", choices=("table", "json"), default="table")

    check = sub.add_parser("validate", help="check a knowledge-base file")
    check.add_argument("--kb", metavar="PATH", help="knowledge-base file")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"serve": _cmd_serve, "consult": _cmd_consult,
                "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
