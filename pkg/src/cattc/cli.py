"""Command-line driver.

``cattc check`` typechecks declaration files (one environment per file, in
declaration order; a failed declaration is reported but not registered, so
later uses of its name fail).  ``cattc oracle`` cross-validates the syntactic
pasting-scheme judgment against the globular before-order oracle on all
diagrams up to a tree-size bound.  ``cattc dump`` reprints a cleanly checked
file in canonical form, which is a fixpoint under re-checking.

Exit codes: 0 all passed, 1 a check failed, 2 I/O or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from .errors import CheckError, ParseError
from .frontend import Printer, elaborate, parse
from .globular import run_oracle
from .kernel import Environment, Mode, check_coherence

MODES = tuple(m.value for m in Mode)


@dataclass
class DeclReport:
    name: str
    ok: bool
    rule: Optional[str] = None
    dim: Optional[int] = None
    depth: Optional[int] = None
    error_kind: Optional[str] = None
    error_message: Optional[str] = None
    line: Optional[int] = None
    col: Optional[int] = None

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "ok": self.ok}
        if self.ok:
            out.update(rule=self.rule, dim=self.dim, depth=self.depth)
        else:
            out["error"] = {
                "kind": self.error_kind,
                "message": self.error_message,
                "line": self.line,
                "col": self.col,
            }
        return out


@dataclass
class FileReport:
    path: str
    decls: list[DeclReport] = field(default_factory=list)
    error: Optional[dict] = None  # file-level syntax error
    env: Optional[Environment] = None

    @property
    def pass_count(self) -> int:
        return sum(1 for d in self.decls if d.ok)

    @property
    def fail_count(self) -> int:
        return sum(1 for d in self.decls if not d.ok) + (1 if self.error else 0)

    def to_json(self) -> dict:
        out: dict = {"path": self.path, "decls": [d.to_json() for d in self.decls]}
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class Report:
    files: list[FileReport] = field(default_factory=list)

    @property
    def pass_count(self) -> int:
        return sum(f.pass_count for f in self.files)

    @property
    def fail_count(self) -> int:
        return sum(f.fail_count for f in self.files)

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def to_json(self) -> dict:
        return {
            "files": [f.to_json() for f in self.files],
            "pass_count": self.pass_count,
            "fail_count": self.fail_count,
        }


def check_text(text: str, mode: Mode, path: str = "<input>") -> FileReport:
    """Check a whole source text against a fresh environment."""
    report = FileReport(path)
    try:
        decls = parse(text)
    except ParseError as err:
        report.error = {
            "kind": "SyntaxError",
            "message": err.message,
            "line": err.line,
            "col": err.col,
        }
        return report
    env = Environment(mode)
    report.env = env
    for decl in decls:
        try:
            ctx, ty = elaborate(decl, env)
            definition = check_coherence(env, decl.name, ctx, ty)
        except CheckError as err:
            err.at(decl.line, decl.col)
            report.decls.append(
                DeclReport(
                    name=decl.name,
                    ok=False,
                    error_kind=err.kind.value,
                    error_message=err.message,
                    line=err.line,
                    col=err.col,
                )
            )
            continue
        report.decls.append(
            DeclReport(
                name=definition.name,
                ok=True,
                rule=definition.rule,
                dim=definition.dim,
                depth=definition.depth,
            )
        )
    return report


def check_file(path: str, mode: Mode) -> FileReport:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return check_text(text, mode, path)


def _print_human(report: FileReport, verbose: bool, out) -> None:
    if report.error:
        err = report.error
        print(
            f"FAIL {report.path}: syntax error: {err['message']} "
            f"at {report.path}:{err['line']}:{err['col']}",
            file=out,
        )
        return
    for decl in report.decls:
        if decl.ok:
            if verbose:
                print(
                    f"ok {decl.name} [rule={decl.rule} dim={decl.dim} "
                    f"depth={decl.depth}]",
                    file=out,
                )
            else:
                print(f"ok {decl.name}", file=out)
        else:
            print(
                f"FAIL {decl.name}: {decl.error_kind}: {decl.error_message} "
                f"at {report.path}:{decl.line}:{decl.col}",
                file=out,
            )


class SystemExit2(Exception):
    """Usage/environment error, mapped to exit code 2."""


def _resolve_mode(flag: Optional[str]) -> Mode:
    value = flag or os.environ.get("CATT_MODE") or Mode.CAT.value
    try:
        return Mode(value)
    except ValueError:
        raise SystemExit2(f"invalid mode '{value}' (choose from {', '.join(MODES)})")


def cmd_check(args: argparse.Namespace) -> int:
    mode = _resolve_mode(args.mode)
    report = Report()
    for path in args.files:
        try:
            report.files.append(check_file(path, mode))
        except OSError as err:
            print(f"error: cannot read {path}: {err.strerror}", file=sys.stderr)
            return 2
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        for file_report in report.files:
            _print_human(file_report, args.verbose, sys.stdout)
    return 0 if report.ok else 1


def cmd_dump(args: argparse.Namespace) -> int:
    mode = _resolve_mode(args.mode)
    try:
        report = check_file(args.file, mode)
    except OSError as err:
        print(f"error: cannot read {args.file}: {err.strerror}", file=sys.stderr)
        return 2
    if report.fail_count:
        _print_human(report, verbose=False, out=sys.stderr)
        return 1
    assert report.env is not None
    printer = Printer(report.env)
    for definition in report.env:
        print(printer.decl(definition))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.max_vertices < 1:
        raise SystemExit2("--max-vertices must be at least 1")
    report = run_oracle(args.max_vertices)
    for stats in report.sizes:
        print(
            f"size {stats.vertices}: trees={stats.trees} "
            f"contexts_ok={stats.contexts_ok} "
            f"mutations_rejected={stats.mutations_rejected} "
            f"boundary_checks={stats.boundary_checks}"
        )
    print(
        f"total: contexts={report.contexts_checked} "
        f"mismatches={len(report.mismatches)}"
    )
    if report.mismatches:
        for line in report.mismatches:
            print(f"MISMATCH: {line}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cattc",
        description="Typechecker for coherences in weak omega-categories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="typecheck declaration files")
    check.add_argument("files", nargs="+", metavar="file")
    check.add_argument("--mode", choices=MODES, default=None)
    check.add_argument("--verbose", action="store_true")
    check.add_argument("--json", action="store_true")
    check.set_defaults(func=cmd_check)

    oracle = sub.add_parser(
        "oracle", help="cross-validate the pasting judgment against the oracle"
    )
    oracle.add_argument("--max-vertices", type=int, default=6)
    oracle.set_defaults(func=cmd_oracle)

    dump = sub.add_parser("dump", help="print a checked file in canonical form")
    dump.add_argument("file")
    dump.add_argument("--mode", choices=MODES, default=None)
    dump.set_defaults(func=cmd_dump)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
