"""Command line interface.

State and report JSON goes to ``-o FILE`` when given and to standard
output otherwise, so commands compose through pipes; human-readable
summaries go to standard error.  Exit codes: 0 on success, 1 on domain
errors (illegal move, infeasible or out-of-domain input, trivial input,
nothing found within a search bound), 2 on usage or file format errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import CONSTRUCTORS, TrisectionError, TrisectionState, construct
from .moves import (
    DESTAB_CAVEAT,
    DestabMove,
    DistinctComponents,
    SameComponent,
    StabMove,
    apply_destabilization,
    apply_stabilization,
    balance,
    build_heegaard,
    fake_heegaard_stab,
)
from .explorer import (
    MoveGraphNode,
    bfs_reachable,
    realize_path,
    shortest_path,
    verify_properties,
)
from .planner import plan_common_stabilization, replay
from .serialize import (
    StateFormatError,
    plan_report_to_text,
    script_from_text,
    script_to_text,
    state_from_text,
    state_to_text,
    verification_report_to_text,
)


class _UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_state(path: str) -> TrisectionState:
    return state_from_text(_read_text(path))


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _arc_argument(text: str) -> SameComponent | DistinctComponents:
    kind, _, rest = text.partition(":")
    try:
        if kind == "same" and rest and "," not in rest:
            return SameComponent(rest)
        if kind == "distinct":
            first, comma, second = rest.partition(",")
            if comma and first and second:
                return DistinctComponents(first, second)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error)) from error
    raise argparse.ArgumentTypeError(
        f"arc must look like same:cK or distinct:cK,cL, got {text!r}"
    )


def _cmd_new(args: argparse.Namespace) -> int:
    _, names = CONSTRUCTORS[args.kind]
    if len(args.params) != len(names):
        wanted = " ".join(names) if names else "(none)"
        raise _UsageError(f"constructor {args.kind!r} takes parameters: {wanted}")
    state = construct(args.kind, tuple(args.params))
    _write_text(args.output, state_to_text(state))
    _note(f"new {args.kind}: profile {state.profile}")
    return 0


def _cmd_show(args: argparse.Namespace) -> int:
    state = _read_state(args.file)
    genera = state.genera
    yesno = {True: "yes", False: "no"}
    lines = [
        f"label: {state.label}",
        f"profile: {state.profile}",
        f"genera: g12={genera.g12} g13={genera.g13} g23={genera.g23}",
        f"boundary components (b={state.b}): {' '.join(state.link.components)}",
        "feasible: yes",
        f"balanced: {yesno[state.is_balanced]}",
        f"trivial: {yesno[state.is_trivial]}",
        f"history: {len(state.history)} moves",
    ]
    print("\n".join(lines))
    return 0


def _cmd_stab(args: argparse.Namespace) -> int:
    state = _read_state(args.file)
    after = apply_stabilization(state, StabMove(args.handlebody, args.arc))
    _write_text(args.output, state_to_text(after))
    _note(f"stab H{args.handlebody}: profile {state.profile} -> {after.profile}")
    return 0


def _cmd_destab(args: argparse.Namespace) -> int:
    state = _read_state(args.file)
    after = apply_destabilization(state, DestabMove(args.handlebody, args.arc))
    _write_text(args.output, state_to_text(after))
    _note(f"destab H{args.handlebody}: profile {state.profile} -> {after.profile}")
    _note(f"note: {DESTAB_CAVEAT}")
    return 0


def _cmd_balance(args: argparse.Namespace) -> int:
    state = _read_state(args.file)
    after, script = balance(state)
    _write_text(args.output, state_to_text(after))
    if args.script is not None:
        _write_text(args.script, script_to_text(script))
    _note(f"balance: {len(script)} moves -> profile {after.profile}")
    return 0


def _cmd_build_heegaard(args: argparse.Namespace) -> int:
    state = _read_state(args.file)
    after, genus, script = build_heegaard(state, args.handlebody)
    _write_text(args.output, state_to_text(after))
    if args.script is not None:
        _write_text(args.script, script_to_text(script))
    _note(
        f"build-heegaard H{args.handlebody}: {len(script)} moves -> "
        f"profile {after.profile}; Heegaard genus {genus}"
    )
    return 0


def _cmd_fake_stab(args: argparse.Namespace) -> int:
    state = _read_state(args.file)
    after = fake_heegaard_stab(state)
    _write_text(args.output, state_to_text(after))
    _note(f"fake-stab: profile {state.profile} -> {after.profile}")
    return 0


def _cmd_plan(args: argparse.Namespace) -> int:
    a = _read_state(args.a)
    b = _read_state(args.b)
    report = plan_common_stabilization(a, b, args.rs_bound)
    _write_text(args.output, plan_report_to_text(report))
    moves_a = sum(len(getattr(report.a, name)) for name in report.a.__dataclass_fields__)
    moves_b = sum(len(getattr(report.b, name)) for name in report.b.__dataclass_fields__)
    _note(
        f"plan: rs_bound={report.rs_bound}; final profile {report.final_profile} "
        f"(a: {moves_a} records, b: {moves_b} records)"
    )
    return 0


def _cmd_explore(args: argparse.Namespace) -> int:
    state = _read_state(args.start)
    start = MoveGraphNode.from_state(state)
    if args.shortest_to is not None:
        goal = MoveGraphNode.from_state(_read_state(args.shortest_to))
        path = None
        if goal.sum_h() <= args.max_sum:
            path = shortest_path(start, goal, goal.sum_h() - start.sum_h())
        if path is None:
            _note(f"NotFound: no stabilization script from {start} to {goal} within sum_h <= {args.max_sum}")
            return 1
        _, script = realize_path(state, path)
        _write_text(None, script_to_text(script))
        _note(f"explore: shortest script has {len(script)} moves")
        return 0
    reachable = bfs_reachable(start, args.max_sum, threads=args.threads)
    for node, depth in reachable.items():
        print(f"({node.g12},{node.g13},{node.g23};b={node.b}) depth={depth}")
    _note(f"explore: {len(reachable)} nodes reachable within sum_h <= {args.max_sum}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = verify_properties(args.max_sum, threads=args.threads)
    _write_text(args.output, verification_report_to_text(report))
    for entry in report.entries:
        status = "PASS" if entry.passed else "FAIL"
        extra = f", slack={entry.slack}" if entry.slack is not None else ""
        _note(f"{status} {entry.name} (max_sum={entry.max_sum}{extra})")
    return 0 if report.all_passed else 1


def _cmd_replay(args: argparse.Namespace) -> int:
    state = _read_state(args.file)
    script = script_from_text(_read_text(args.script))
    after = replay(state, script)
    _write_text(args.output, state_to_text(after))
    _note(f"replay: {len(script)} records -> profile {after.profile}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trisect",
        description="Combinatorial engine for trisections of closed orientable 3-manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("new", _cmd_new, "construct a fresh trisection state")
    p.add_argument("kind", choices=sorted(CONSTRUCTORS))
    p.add_argument("params", nargs="*", type=int, help="constructor parameters")
    p.add_argument("-o", "--output", help="state file (default: stdout)")

    p = add("show", _cmd_show, "print a state's profile, genera and flags")
    p.add_argument("file", help="state file ('-' for stdin)")

    for name, fn in (("stab", _cmd_stab), ("destab", _cmd_destab)):
        p = add(name, fn, f"apply one {'formal de' if name == 'destab' else ''}stabilization")
        p.add_argument("file", nargs="?", default="-", help="state file ('-' for stdin)")
        p.add_argument("--handlebody", type=int, required=True, choices=(1, 2, 3))
        p.add_argument("--arc", type=_arc_argument, required=True,
                       help="same:cK or distinct:cK,cL")
        p.add_argument("-o", "--output", help="state file (default: stdout)")

    p = add("balance", _cmd_balance, "stabilize until the three genera agree")
    p.add_argument("file", nargs="?", default="-", help="state file ('-' for stdin)")
    p.add_argument("-o", "--output", help="state file (default: stdout)")
    p.add_argument("--script", help="also write the applied script here")

    p = add("build-heegaard", _cmd_build_heegaard,
            "stabilize one handlebody until the state is a Heegaard splitting")
    p.add_argument("file", nargs="?", default="-", help="state file ('-' for stdin)")
    p.add_argument("--handlebody", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("-o", "--output", help="state file (default: stdout)")
    p.add_argument("--script", help="also write the applied script here")

    p = add("fake-stab", _cmd_fake_stab, "apply one compound fake Heegaard stabilization")
    p.add_argument("file", nargs="?", default="-", help="state file ('-' for stdin)")
    p.add_argument("-o", "--output", help="state file (default: stdout)")

    p = add("plan", _cmd_plan, "plan a common stabilization of two states")
    p.add_argument("a", help="first state file")
    p.add_argument("b", help="second state file")
    p.add_argument("--rs-bound", type=int, required=True,
                   help="number of fake Heegaard stabilizations per side")
    p.add_argument("-o", "--output", help="report file (default: stdout)")

    p = add("explore", _cmd_explore, "breadth-first search of the move graph")
    p.add_argument("--start", required=True, help="state file ('-' for stdin)")
    p.add_argument("--max-sum", type=int, required=True,
                   help="bound on h1+h2+h3 of visited nodes")
    p.add_argument("--shortest-to", help="state file; emit a shortest script to it")
    p.add_argument("--threads", type=int, default=1)

    p = add("verify", _cmd_verify, "check engine properties over a node range")
    p.add_argument("--max-sum", type=int, required=True)
    p.add_argument("-o", "--output", help="report file (default: stdout)")
    p.add_argument("--threads", type=int, default=1)

    p = add("replay", _cmd_replay, "replay a move script against a state")
    p.add_argument("file", help="state file ('-' for stdin)")
    p.add_argument("script", help="script file (a JSON array of move records)")
    p.add_argument("-o", "--output", help="state file (default: stdout)")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        code = exit_.code
        return code if isinstance(code, int) else 2
    try:
        return args.fn(args)
    except _UsageError as error:
        print(f"usage error: {error}", file=sys.stderr)
        return 2
    except StateFormatError as error:
        print(f"StateFormatError: {error}", file=sys.stderr)
        return 2
    except TrisectionError as error:
        print(f"{type(error).__name__}: {error}", file=sys.stderr)
        return 1
    except OSError as error:
        print(f"IO error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
