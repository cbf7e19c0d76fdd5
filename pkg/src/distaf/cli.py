"""Offline companion: validate templates, score assessment files without a
server, emit exports, bootstrap the first admin, and launch the API.

Exit codes: 0 ok, 1 validation/domain errors, 2 I/O problems, 3 usage.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import DistafError, TemplateFormatError
from .framework import Phase, load_template, validate_template
from .reports import color_band, export_assessment, fingerprint_series, FingerprintLevel
from .scoring import assessment_scorecard
from .store import load_assessment

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit 3, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="distaf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate a framework template file")
    p_validate.add_argument("template", help="path to a template JSON file")

    p_score = sub.add_parser("score", help="score an assessment file against a template")
    p_score.add_argument("template")
    p_score.add_argument("assessment")
    p_score.add_argument(
        "--phase", choices=["design", "operational", "both"], default="both"
    )

    p_export = sub.add_parser("export", help="export an assessment in a chosen format")
    p_export.add_argument("template")
    p_export.add_argument("assessment")
    p_export.add_argument("--format", choices=["dump", "tabular", "summary"], default="dump")
    p_export.add_argument("-o", "--output", help="write to a file instead of stdout")

    p_admin = sub.add_parser("init-admin", help="seed the first admin user")
    p_admin.add_argument("--data-dir", default=os.environ.get("DISTAF_DATA_DIR", "data"))
    p_admin.add_argument("--username", default="admin")

    p_serve = sub.add_parser("serve", help="start the HTTP API")
    p_serve.add_argument("--data-dir", default=os.environ.get("DISTAF_DATA_DIR", "data"))
    p_serve.add_argument(
        "--template-dir", default=os.environ.get("DISTAF_TEMPLATE_DIR", "templates")
    )
    p_serve.add_argument("--host", default=os.environ.get("DISTAF_BIND", "127.0.0.1"))
    p_serve.add_argument("--port", type=int, default=int(os.environ.get("DISTAF_PORT", "8300")))
    p_serve.add_argument(
        "--session-lifetime",
        type=float,
        default=float(os.environ.get("DISTAF_SESSION_LIFETIME", str(8 * 3600))),
        help="session lifetime in seconds",
    )
    return parser


def _load_template_file(path: str):
    try:
        return load_template(path)
    except OSError as exc:
        raise _IOProblem(f"cannot read template {path}: {exc}") from exc


def _load_assessment_file(path: str):
    try:
        return load_assessment(path)
    except OSError as exc:
        raise _IOProblem(f"cannot read assessment {path}: {exc}") from exc


class _IOProblem(Exception):
    pass


def _cmd_validate(args) -> int:
    try:
        template = _load_template_file(args.template)
    except TemplateFormatError as exc:
        print(f"error: {exc}")
        return EXIT_VALIDATION
    report = validate_template(template)
    for finding in report.findings:
        print(str(finding))
    if report.ok:
        print(f"template {template.id} v{template.version}: OK "
              f"({len(report.warnings)} warning(s))")
        return EXIT_OK
    print(f"template {template.id}: {len(report.errors)} error(s)")
    return EXIT_VALIDATION


def _phase_table(template, card, phase: Phase) -> str:
    scores = card.phase(phase)
    lines = [
        f"== {phase.value.capitalize()} phase (completeness {scores.completeness * 100:.0f}%) ==",
        f"{'Pillar':<8} {'Name':<24} {'Raw':>7} {'Capped':>7}  Band",
    ]
    for pillar in template.pillars:
        node = scores.pillars.get(pillar.code)
        if node is None:
            continue
        raw = "" if node.raw_score is None else f"{node.raw_score:.1f}"
        capped = "" if node.capped_score is None else f"{node.capped_score:.1f}"
        lines.append(
            f"{pillar.code:<8} {pillar.name:<24} {raw:>7} {capped:>7}  {color_band(node).value}"
        )
    axes = fingerprint_series(template, card, FingerprintLevel.PILLARS, phase).axes
    values = ", ".join(
        f"{a.label}={'' if a.value is None else f'{a.value:.1f}'}" for a in axes
    )
    lines.append(f"Fingerprint: {values}")
    return "\n".join(lines)


def _cmd_score(args) -> int:
    template = _load_template_file(args.template)
    state = _load_assessment_file(args.assessment)
    card = assessment_scorecard(template, state)
    phases = {
        "design": (Phase.DESIGN,),
        "operational": (Phase.OPERATIONAL,),
        "both": (Phase.DESIGN, Phase.OPERATIONAL),
    }[args.phase]
    blocks = [_phase_table(template, card, phase) for phase in phases]
    print("\n\n".join(blocks))
    if card.warnings:
        print("\nWarnings:")
        for warning in card.warnings:
            print(f"  - {warning}")
    return EXIT_OK


def _cmd_export(args) -> int:
    template = _load_template_file(args.template)
    state = _load_assessment_file(args.assessment)
    card = assessment_scorecard(template, state)
    text = export_assessment(template, state, card, args.format)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise _IOProblem(f"cannot write {args.output}: {exc}") from exc
        print(f"wrote {args.format} export to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_init_admin(args) -> int:
    from .access import UserStore

    data_dir = Path(args.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    users = UserStore(data_dir / "users.json")
    user, temp_password = users.bootstrap_admin(args.username)
    print(f"admin user {user.username!r} created")
    print(f"temporary password: {temp_password}")
    print("the password must be changed on first login")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import AppConfig, create_app

    config = AppConfig(
        data_dir=Path(args.data_dir),
        template_dir=Path(args.template_dir),
        session_lifetime=args.session_lifetime,
        host=args.host,
        port=args.port,
    )
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "score": _cmd_score,
    "export": _cmd_export,
    "init-admin": _cmd_init_admin,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _IOProblem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TemplateFormatError as exc:
        # Unreadable document content counts as an I/O problem for the CLI.
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DistafError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
