"""Command-line interface.

Exit codes: 0 success or accepted, 1 negative decision or rejected,
2 usage or input error, 3 budget or state cap exceeded.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .automaton import automaton_to_text, compile_regular_tag, enumerate_accepted
from .errors import (
    BudgetExceeded,
    InvalidCfg,
    InvalidGrammar,
    NonterminationGuard,
    NotLexicalizable,
    NotRegularForm,
    ParseError,
    StateExplosion,
    TagError,
    UnknownToken,
)
from .formats import parse_cfg_file, parse_grammar_file, render_grammar
from .lexicalizer import STRATEGIES, cfg_to_regular_tag, close_substitution
from .oracle import DerivationBudget, enumerate_derived, enumerate_regular, sample_language
from .recognizer import Recognizer, derive_yield_cfg, tokenize
from .spine_graph import build_spine_graph, check_regular_form, extend_to_regular_form, to_dot
from .trees import format_tree

OK, NEGATIVE, INPUT_ERROR, OVER_BUDGET = 0, 1, 2, 3

NOT_RECOGNIZABILITY = ("note: this decides regular form only; a grammar outside regular form "
                       "may still generate a recognizable tree set.")


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    report: str
    error: str = ""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _grammar(path):
    return parse_grammar_file(_read(path))


def _write_or_return(text, out):
    if out:
        Path(out).write_text(text)
        return f"wrote {out}\n"
    return text


def cmd_check(args):
    g = _grammar(args.grammar)
    ok, witnesses = check_regular_form(g)
    lines = [f"regular form: {'yes' if ok else 'no'}",
             f"simple cycles: {len(witnesses)}"]
    lines += [w.describe() for w in witnesses]
    if not ok:
        lines.append(NOT_RECOGNIZABILITY)
    return CommandResult(OK if ok else NEGATIVE, "\n".join(lines) + "\n")


def cmd_extend(args):
    g = _grammar(args.grammar)
    extended, added = extend_to_regular_form(g)
    text = render_grammar(extended)
    note = "".join(f"# added {format_tree(t)}\n" for t in added) or "# already in regular form\n"
    if args.output:
        Path(args.output).write_text(text)
        return CommandResult(OK, note + f"wrote {args.output}\n")
    return CommandResult(OK, note + text)


def cmd_lexicalize(args):
    c = parse_cfg_file(_read(args.cfg))
    g = cfg_to_regular_tag(c, STRATEGIES[args.strategy], lexicalized=args.lexicalized)
    if args.close_substitution:
        g = close_substitution(g)
    return CommandResult(OK, _write_or_return(render_grammar(g), args.output))


def cmd_parse(args):
    g = _grammar(args.grammar)
    tokens = tokenize(args.string)
    for t in tokens:
        if t not in g.terminals:
            raise UnknownToken(f"token {t!r} is not a terminal of the grammar")
    automaton = compile_regular_tag(g, state_cap=args.state_cap)
    rec = Recognizer(derive_yield_cfg(automaton))
    accepted = rec.accepts(tokens)
    lines = [f"{'accepted' if accepted else 'rejected'}: {' '.join(tokens) or '(empty)'}"]
    if args.chart:
        for (i, j), cell in sorted(rec.chart(tokens).items()):
            names = sorted(str(s) for s in cell if not isinstance(s, tuple) or s[0] != "bin")
            if names:
                lines.append(f"[{i},{j}] " + " ".join(names))
    return CommandResult(OK if accepted else NEGATIVE, "\n".join(lines) + "\n")


def _budget(args):
    return DerivationBudget(max_nodes=args.max_nodes, max_steps=args.max_steps)


def cmd_enumerate(args):
    g = _grammar(args.grammar)
    run = enumerate_regular if args.regular_only else enumerate_derived
    trees = run(g, _budget(args), completed_only=args.completed_only)
    body = "".join(format_tree(t) + "\n" for t in trees)
    return CommandResult(OK, body + f"# {len(trees)} trees\n")


def cmd_compile(args):
    g = _grammar(args.grammar)
    a = compile_regular_tag(g, state_cap=args.state_cap)
    return CommandResult(OK, _write_or_return(automaton_to_text(a), args.output))


def cmd_graph(args):
    g = _grammar(args.grammar)
    sg = build_spine_graph(g)
    if args.dot:
        return CommandResult(OK, to_dot(sg))
    lines = [f"vertices: {' '.join(sg.vertices)}"]
    lines += [f"{e.ident}: {e.source} -> {e.target} {e.label.aux_name}:{e.label.index} "
              f"{format_tree(e.label.segment)}" for e in sg.edges]
    return CommandResult(OK, "\n".join(lines) + "\n")


def cmd_oracle(args):
    g = _grammar(args.grammar)
    budget = _budget(args)
    lines = []
    agree = True
    derived = set(enumerate_derived(g, budget))
    regular = set(enumerate_regular(g, budget))
    same = derived == regular
    lines.append(f"T' vs T'_R at {args.max_nodes} nodes: {'equal' if same else 'differ'} "
                 f"({len(derived)} vs {len(regular)} trees)")
    ok, _ = check_regular_form(g)
    if not ok:
        lines.append("not in regular form: automaton and parser checks skipped")
        lines.append(NOT_RECOGNIZABILITY)
        return CommandResult(OK if same else NEGATIVE, "\n".join(lines) + "\n")
    agree &= same
    a = compile_regular_tag(g, state_cap=args.state_cap)
    completed = set(enumerate_derived(g, budget, completed_only=True))
    accepted = set(enumerate_accepted(a, args.max_nodes))
    lines.append(f"automaton vs enumeration at {args.max_nodes} nodes: "
                 f"{'equal' if accepted == completed else 'differ'} ({len(accepted)} trees)")
    agree &= accepted == completed
    rec = Recognizer(derive_yield_cfg(a))
    language = sample_language(g, budget)
    missed = sorted(w for w in language if not rec.accepts(tokenize(w)))
    lines.append(f"parser vs language sample: {len(language) - len(missed)}/{len(language)} accepted")
    lines += [f"  rejected: {w or '(empty)'}" for w in missed]
    agree &= not missed
    return CommandResult(OK if agree else NEGATIVE, "\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regform", description="Regular-form TAG toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def grammar_cmd(name, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("grammar", help="grammar file")
        return s

    def budget_flags(s):
        s.add_argument("--max-nodes", type=int, default=12)
        s.add_argument("--max-steps", type=int, default=10 ** 6)

    def cap_flag(s):
        s.add_argument("--state-cap", type=int, default=10 ** 5)

    s = grammar_cmd("check", "decide regular form and list simple cycles")
    s.set_defaults(run=cmd_check)
    s = grammar_cmd("extend", "add the trees needed for regular form")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_extend)
    s = sub.add_parser("lexicalize", help="turn a CFG into a regular-form TAG")
    s.add_argument("cfg", help="CFG file")
    s.add_argument("--strategy", choices=sorted(STRATEGIES), default="leftmost")
    s.add_argument("--lexicalized", action="store_true")
    s.add_argument("--close-substitution", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_lexicalize)
    s = grammar_cmd("parse", "recognize a space-separated token string")
    s.add_argument("string")
    s.add_argument("--chart", action="store_true")
    cap_flag(s)
    s.set_defaults(run=cmd_parse)
    s = grammar_cmd("enumerate", "list derived trees up to a node budget")
    budget_flags(s)
    s.add_argument("--regular-only", action="store_true")
    s.add_argument("--completed-only", action="store_true")
    s.set_defaults(run=cmd_enumerate)
    s = grammar_cmd("compile", "write the tree automaton")
    s.add_argument("-o", "--output")
    cap_flag(s)
    s.set_defaults(run=cmd_compile)
    s = grammar_cmd("graph", "show the spine graph")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(run=cmd_graph)
    s = grammar_cmd("oracle", "cross-check every construction against enumeration")
    budget_flags(s)
    cap_flag(s)
    s.set_defaults(run=cmd_oracle)
    return p


def run_command(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(list(argv))
        if getattr(args, "max_nodes", 1) < 1 or getattr(args, "max_steps", 1) < 1 \
                or getattr(args, "state_cap", 1) < 1:
            raise UsageError("budgets must be positive")
        return args.run(args)
    except UsageError as exc:
        return CommandResult(INPUT_ERROR, "", str(exc))
    except (BudgetExceeded, StateExplosion, NonterminationGuard) as exc:
        return CommandResult(OVER_BUDGET, "", f"limit exceeded: {exc}")
    except NotRegularForm as exc:
        return CommandResult(INPUT_ERROR, "", f"{exc}; run 'extend' first")
    except (ParseError, InvalidGrammar, InvalidCfg, NotLexicalizable, UnknownToken, TagError) as exc:
        return CommandResult(INPUT_ERROR, "", f"error: {exc}")


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return exc.code or 0
    result = run_command(argv)
    if result.report:
        sys.stdout.write(result.report)
    if result.error:
        sys.stderr.write(result.error.rstrip("\n") + "\n")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
