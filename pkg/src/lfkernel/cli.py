"""The ``lf`` command line."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import LFError
from .script import EXIT_ELAB, EXIT_RULE, check_file, exit_code

SCHEMA_VERSION = 1


class _Style:
    def __init__(self, stream):
        pref = os.environ.get("LF_COLOR", "").strip().lower()
        if pref in ("1", "yes", "always", "true", "on"):
            self.on = True
        elif pref in ("0", "no", "never", "false", "off"):
            self.on = False
        else:
            self.on = hasattr(stream, "isatty") and stream.isatty()

    def __call__(self, text: str, code: str) -> str:
        return f"\x1b[{code}m{text}\x1b[0m" if self.on else text

    def ok(self, text):
        return self(text, "32")

    def bad(self, text):
        return self(text, "31")

    def dim(self, text):
        return self(text, "2")


def _guard_of(args) -> str:
    if args.theory:
        from .theories import get_theory

        return get_theory(args.theory).guard
    return args.guard


def _term_error(err: LFError) -> int:
    print(f"error: {err.code}: {err}", file=sys.stderr)
    code = exit_code(err)
    return code if code != EXIT_RULE else EXIT_ELAB


def _read_term(args):
    from .notation import read

    return read(args.term, guard=_guard_of(args))


def cmd_parse(args) -> int:
    from .printer import print_term

    try:
        t = _read_term(args)
    except LFError as err:
        return _term_error(err)
    print(print_term(t, decorations="full", ascii=args.ascii))
    return 0


def cmd_typecheck(args) -> int:
    from .printer import format_type

    try:
        t = _read_term(args)
    except LFError as err:
        return _term_error(err)
    print(format_type(t.type, style="full", ascii=args.ascii))
    return 0


def cmd_expand(args) -> int:
    from .notation import expand_all
    from .printer import print_term

    try:
        t = expand_all(_read_term(args))
    except LFError as err:
        return _term_error(err)
    print(print_term(t, decorations="binders", fold=False, ascii=args.ascii))
    return 0


def _check_one(job):
    path, theory, disable, ascii_out = job
    return check_file(path, theory=theory, disable=disable, ascii_out=ascii_out)


def cmd_check(args) -> int:
    jobs = [(f, args.theory, tuple(args.disable), args.ascii) for f in args.files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_check_one, jobs))
    else:
        reports = [_check_one(j) for j in jobs]
    code = next((r.exit_code for r in reports if r.exit_code), 0)

    if args.report:
        from .report import write_script_report, write_summary

        for r in reports:
            write_script_report(r, args.report)
        write_summary(reports, args.report)

    if args.json:
        doc = {"version": SCHEMA_VERSION, "exit_code": code, "reports": [r.to_json() for r in reports]}
        print(json.dumps(doc, ensure_ascii=args.ascii, indent=2))
        return code

    st = _Style(sys.stdout)
    turn = "|-" if args.ascii else "⊢"
    for r in reports:
        if r.ok:
            print(f"{st.ok('OK')}   {r.path} [{r.theory}] {turn} {r.theorem}  "
                  + st.dim(f"({r.nodes} nodes, {' '.join(r.rules)}, {r.ms:.0f} ms)"))
        else:
            e = r.error or {}
            where = f"step {e['step']} ({e['rule']}), line {e['line']}: " if e.get("step") else ""
            print(f"{st.bad('FAIL')} {r.path} [{r.theory}] exit {r.exit_code}: {where}{e.get('code')}: {e.get('message')}")
    return code


def cmd_library(args) -> int:
    from .kernel import check_theorem
    from .library import catalog, library_theorem
    from .printer import print_term
    from .theories import get_theory

    st = _Style(sys.stdout)
    rows, out = [], []
    code = 0
    for entry in catalog():
        t0 = time.perf_counter()
        try:
            d = library_theorem(entry.name)
            rep = check_theorem(get_theory(entry.theory), d)
        except LFError as err:
            code = code or exit_code(err)
            print(f"{st.bad('FAIL')} {entry.name}: {err.code}: {err}")
            continue
        ms = (time.perf_counter() - t0) * 1000
        rows.append((entry.name, entry.theory, rep.nodes, ms, rep.rules))
        seq = ", ".join(print_term(a, ascii=args.ascii) for a in d.assumptions)
        turn = "|-" if args.ascii else "⊢"
        out.append({"name": entry.name, "theory": entry.theory, "sequent": f"{seq} {turn} {print_term(d.conclusion, ascii=args.ascii)}".strip(),
                    "nodes": rep.nodes, "rules": rep.rules, "note": entry.note})
        if not args.json:
            print(f"{st.ok('OK')}   {entry.name:<30} [{entry.theory}] {out[-1]['sequent']}  "
                  + st.dim(f"({rep.nodes} nodes; {' '.join(rep.rules)})"))
    if args.json:
        print(json.dumps(out, ensure_ascii=args.ascii, indent=2))
    if args.report:
        from .report import write_library_report

        write_library_report(rows, args.report)
    return code


def cmd_systems(args) -> int:
    from .kernel import RuleId
    from .theories import builtin_theories

    order = list(RuleId)
    for th in builtin_theories():
        rules = " ".join(r.value for r in sorted(th.rules, key=order.index))
        axioms = " ".join(getattr(a, "name", "X") for a in th.axioms)
        extra = f"; axioms {axioms}" if axioms else ""
        print(f"{th.name:<18} {rules}{extra}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lf", description="Check LF proof scripts and inspect LF notation.")
    p.add_argument("--ascii", action="store_true", help="print ASCII instead of Unicode symbols")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check proof scripts")
    c.add_argument("files", nargs="+")
    c.add_argument("--theory", help="override the script's theory header")
    c.add_argument("--disable", action="append", default=[], metavar="R.n", help="switch a rule off (repeatable)")
    c.add_argument("--json", action="store_true", help="machine-readable report")
    c.add_argument("--jobs", type=int, default=1, metavar="N", help="check files in N processes")
    c.add_argument("--report", metavar="DIR", help="write CSV and PNG summaries to DIR")
    c.set_defaults(fn=cmd_check)

    for name, fn, text in (("parse", cmd_parse, "elaborate a term and echo it fully decorated"),
                           ("typecheck", cmd_typecheck, "print the type of a term"),
                           ("expand", cmd_expand, "unfold every defined notation")):
        s = sub.add_parser(name, help=text)
        s.add_argument("term")
        s.add_argument("--guard", choices=("core", "iota", "eps"), default="eps", help="admissible constants")
        s.add_argument("--theory", help="take the guard from a named theory")
        s.set_defaults(fn=fn)

    lib = sub.add_parser("library", help="list and re-check the theorem catalog")
    lib.add_argument("--json", action="store_true")
    lib.add_argument("--report", metavar="DIR")
    lib.set_defaults(fn=cmd_library)

    sy = sub.add_parser("systems", help="list the built-in theories")
    sy.set_defaults(fn=cmd_systems)
    for s in (c, lib, sy) + tuple(sub.choices[n] for n in ("parse", "typecheck", "expand")):
        s.add_argument("--ascii", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("ascii",):
        setattr(args, name, getattr(args, name, False))
    try:
        return args.fn(args)
    except LFError as err:
        print(f"error: {err.code}: {err}", file=sys.stderr)
        return exit_code(err)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
