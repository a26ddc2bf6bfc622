"""Command-line entry point: ``hcpaudit <subcommand> ...``.

Digraph arguments are a file path, ``-`` for stdin, or ``fixture:NAME``.
Exit codes: 0 success / Hamiltonian, 1 definite no, 2 greedy stuck,
3 bad input or usage.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .audit import CLAIMS, REFUTED, AuditReport, audit, format_witness, replay
from .bench import bench
from .digraph import Digraph, DegreeKind, classify, format_digraph, parse_digraph
from .errors import HCPError
from .fixtures import NAMED
from .matching import enumerate_matchings
from .oracle import InstanceSpec, brute_force_hamiltonian, generate
from .projector import decompose, format_projector, project
from .solver import Verdict, make_rank_fn, solve_exact, solve_greedy, split_degree_two

EXIT_INPUT = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means STUCK here
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_digraph(src: str) -> Digraph:
    if src.startswith("fixture:"):
        name = src.split(":", 1)[1]
        if name not in NAMED:
            raise UsageError(f"unknown fixture {name!r}; known: {', '.join(NAMED)}")
        return NAMED[name]
    if src == "-":
        return parse_digraph(sys.stdin.read())
    try:
        with open(src, encoding="utf-8") as fh:
            return parse_digraph(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {src}: {exc.strerror}") from None


def _sizes(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ids(ids) -> str:
    return " ".join(map(str, sorted(ids)))


# -- subcommands -----------------------------------------------------------


def cmd_validate(args) -> int:
    d = _read_digraph(args.digraph)
    cls = classify(d)
    print(f"n={d.n} m={d.m} class={cls.kind.value} strongly_connected={str(cls.strongly_connected).lower()}")
    if args.degrees:
        for v in range(d.n):
            print(f"{v} out={cls.out_degree[v]} in={cls.in_degree[v]}")
    return 0


def cmd_project(args) -> int:
    sys.stdout.write(format_projector(project(_read_digraph(args.digraph))))
    return 0


def cmd_solve(args) -> int:
    d = _read_digraph(args.digraph)
    if args.mode == "greedy":
        out = solve_greedy(
            d, args.max_passes, rank_path=args.rank_path, audit=args.audit,
            order=args.order, split=args.split,
        )
    else:
        out = solve_exact(d, args.code_cap, rank_path=args.rank_path, audit=args.audit, split=args.split)
    print(out.verdict.value)
    if out.verdict is Verdict.HAMILTONIAN:
        print(_ids(out.arcs))
    elif out.verdict is Verdict.NO_PM and out.hall_witness:
        g = project(d)
        print("# hall: " + " ".join(g.vertex_name(v) for v in sorted(out.hall_witness)))
    elif out.verdict is Verdict.STUCK:
        print(f"# best_rank={out.best_rank} code={''.join(map(str, out.final_code or ()))}")
    return out.verdict.exit_code


def cmd_enumerate(args) -> int:
    d = _read_digraph(args.digraph)
    if classify(d).kind is DegreeKind.OUTSIDE:
        print(Verdict.BAD_DEGREE.value)
        return EXIT_INPUT
    dec = decompose(project(d))
    if not dec.has_perfect_matching:
        print(Verdict.NO_PM.value)
        return 1
    rank = make_rank_fn(d)
    for code, m in enumerate_matchings(dec, limit=args.limit):
        bits = "".join(map(str, code)) or "-"
        print(f"{bits} rank={rank(m.edges)} arcs={m.serialize()}")
    return 0


def cmd_oracle(args) -> int:
    hc = brute_force_hamiltonian(_read_digraph(args.digraph))
    if hc is None:
        print("NONE")
        return 1
    print(_ids(hc))
    return 0


def cmd_gen(args) -> int:
    cls = DegreeKind.GAMMA if args.cls == "gamma" else DegreeKind.BOUND_TWO
    d, planted = generate(InstanceSpec(args.n, cls, args.plant, args.seed, args.density))
    comments = [f"gen n={args.n} class={cls.value} plant={str(args.plant).lower()} seed={args.seed} density={args.density:g}"]
    if planted is not None:
        comments.append(f"planted: {_ids(planted)}")
    sys.stdout.write(format_digraph(d, comments))
    return 0


def cmd_split(args) -> int:
    s, smap = split_degree_two(_read_digraph(args.digraph))
    comments = [f"split of n={smap.original_n}: vertices {' '.join(map(str, smap.split_vertices)) or '(none)'}"]
    comments += [f"pair {a} {b}" for a, b in smap.pairs]
    comments.append(f"bridges: {_ids(smap.bridge_arcs)}")
    sys.stdout.write(format_digraph(s, comments))
    return 0


def cmd_audit(args) -> int:
    if args.replay:
        if args.claim == "all":
            raise UsageError("--replay needs a single claim id")
        d = _read_digraph(args.replay)
        obs = replay(args.claim, d)
        if obs is None:
            print(f"claim={args.claim}\nreplay=NOT_APPLICABLE\nwitness={format_witness(d)}")
            return 1
        print(f"claim={args.claim}\nreplay={REFUTED if obs.refuted else 'NOT_REFUTED'}\nwitness={format_witness(d)}")
        for k, v in obs.details.items():
            print(f"witness.{k}={v}")
        return 0 if obs.refuted else 1
    claims = list(CLAIMS) if args.claim == "all" else [args.claim]
    for c in claims:
        if c not in CLAIMS:
            raise UsageError(f"unknown claim {c!r}; known: {', '.join(CLAIMS)}")
    reports: list[AuditReport] = []
    for c in claims:
        sizes = args.sizes or CLAIMS[c].default_sizes
        reports.append(
            audit(c, args.budget, sizes, args.seed, exhaustive=args.exhaustive, timing=args.timing)
        )
    if args.format == "csv":
        print(AuditReport.CSV_HEADER)
        for r in reports:
            print(r.to_csv_row())
    else:
        sys.stdout.write("\n".join(r.to_text() for r in reports))
    return 0


def cmd_bench(args) -> int:
    sys.stdout.write(bench(args.sizes, args.reps, args.seed, density=args.density, timing=args.timing))
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hcpaudit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_digraph(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("digraph", help="file, '-' for stdin, or fixture:NAME")
        return sp

    sp = with_digraph("validate", "parse a digraph and report its degree class")
    sp.add_argument("--degrees", action="store_true", help="print the per-vertex degree table")
    sp.set_defaults(func=cmd_validate)

    with_digraph("project", "print the projector bipartite graph").set_defaults(func=cmd_project)

    sp = with_digraph("solve", "search for a Hamiltonian cycle through projector matchings")
    sp.add_argument("--mode", choices=("greedy", "exact"), default="greedy")
    sp.add_argument("--max-passes", type=int, default=None)
    sp.add_argument("--code-cap", type=int, default=1 << 20)
    sp.add_argument("--rank-path", choices=("components", "exact"), default="components")
    sp.add_argument("--order", choices=("ascending", "descending"), default="ascending")
    sp.add_argument("--split", action="store_true", help="split (2,2) vertices first")
    sp.add_argument("--audit", action="store_true", help="cross-check every rank by elimination")
    sp.set_defaults(func=cmd_solve)

    sp = with_digraph("enumerate", "list every perfect matching by component code")
    sp.add_argument("--limit", type=int, default=None)
    sp.set_defaults(func=cmd_enumerate)

    with_digraph("oracle", "brute-force Hamiltonian cycle or NONE").set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="generate a random instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="cls", choices=("gamma", "boundtwo"), default="gamma")
    sp.add_argument("--plant", action=argparse.BooleanOptionalAction, default=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--density", type=float, default=0.5)
    sp.set_defaults(func=cmd_gen)

    with_digraph("split", "split vertices with in- and out-degree two").set_defaults(func=cmd_split)

    sp = sub.add_parser("audit", help="search for counterexamples to a claim")
    sp.add_argument("claim", help=f"one of {', '.join(CLAIMS)}, or 'all'")
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--sizes", type=_sizes, default=None, help="LO..HI vertex counts")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp.add_argument("--exhaustive", action="store_true", help="all bounded digraphs for each size (n <= 5)")
    sp.add_argument("--timing", action="store_true", help="append elapsed time (breaks byte stability)")
    sp.add_argument("--replay", metavar="DIGRAPH", help="re-check one witness instead of searching")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("bench", help="time the greedy solver on planted instances")
    sp.add_argument("--sizes", type=_int_list, default=[100, 200, 400])
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--density", type=float, default=1.0)
    sp.add_argument("--timing", action=argparse.BooleanOptionalAction, default=True)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HCPError, UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
