"""Command-line front end tying the solver, checkers and generators together.

One subcommand per activity: solve, verify, convert, reduce, generate,
decompose. Answer-style subcommands print stable ``key=value`` lines (or the
same records as JSON with ``--format json-lines``); reduce, generate and
decompose print the produced artifact in its file format. All vertex ids on
the wire are 1-based, whatever the input format used; files may contain
``c``-prefixed comment lines.

Exit codes: 0 success or YES; 1 a requested decision came back NO or a
witness failed verification; 2 unusable input; 3 a guard or search budget
stopped the run before an answer.
"""

import argparse
import json
import sys

from .dp import solve, solve_by_solution_size
from .errors import BudgetError, GuardError, ParseError
from .graphs import (caterpillar_graph, cycle_graph, gnp_graph, iter_bits,
                     parse_graph, path_graph, write_graph, write_hypergraph)
from .reductions import (gd_to_osgtd, lgd_to_osgtd, mcc_to_osgtd,
                         corona_with_leaves, osgtd_to_cobipartite,
                         osgtd_to_hypergraph, parse_mcc, parse_osgtd,
                         tgd_to_osgtd, write_osgtd)
from .rules import (RuleApplication, is_forcing_set, min_forcing_bruteforce,
                    parse_rules, replay_trace, rules_label)
from .sequences import (VARIANTS, forcing_to_sequence, sequence_to_forcing,
                        verify_sequence)
from .treedec import (exact_treewidth, heuristic_decomposition, make_nice,
                      parse_td, validate_td, write_td)


class _Out:
    """Record emitter: ``key=value`` lines or one JSON object per record."""

    def __init__(self, fmt):
        self.json = fmt == "json-lines"

    def rec(self, key, value, text=None):
        if self.json:
            print(json.dumps({key: value}, separators=(",", ":")))
        else:
            print(f"{key}={value if text is None else text}")

    def ids(self, key, vertices):
        ids = [v + 1 for v in vertices]
        self.rec(key, ids, text=" ".join(str(v) for v in ids))

    def step(self, app):
        val = [app.kind, app.actor + 1, app.target + 1]
        self.rec("step", val, text=f"{app.kind} {app.actor + 1} {app.target + 1}")


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _content_tokens(text):
    toks = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks.extend(line.split())
    return toks


def _parse_ids(text, n, what):
    out = []
    for tok in _content_tokens(text):
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"malformed {what} id {tok!r}") from None
        if not (1 <= v <= n):
            raise ParseError(f"{what} id {v} out of range 1..{n}")
        out.append(v - 1)
    return out


def _parse_trace(text, n):
    steps = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("z", "t", "d"):
            raise ParseError(f"malformed trace line: {line!r}")
        try:
            a, t = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"malformed trace line: {line!r}") from None
        if not (1 <= a <= n and 1 <= t <= n):
            raise ParseError(f"trace vertex out of range in {line!r}")
        steps.append(RuleApplication(parts[0], a - 1, t - 1))
    return steps


def _load_td(args, g):
    if args.td is None:
        return None
    td = parse_td(_read(args.td))
    ok, _, msg = validate_td(g, td)
    if not ok:
        raise ParseError(f"decomposition rejected: {msg}")
    return td


def _cmd_solve(args, out):
    g = parse_graph(_read(args.graph))
    rules = parse_rules(args.rules)
    if args.size is not None:
        dec = solve_by_solution_size(g, args.size, rules,
                                     budget=args.budget)
        out.rec("answer", "yes" if dec.yes else "no")
        out.rec("reason", dec.reason)
        if dec.k_min is not None:
            out.rec("k", dec.k_min)
        if dec.yes:
            out.ids("s", iter_bits(dec.s_mask))
            for app in dec.trace:
                out.step(app)
        return 0 if dec.yes else 1
    if args.method == "brute":
        k, s_mask, trace = min_forcing_bruteforce(g, rules,
                                                  max_n=args.max_n,
                                                  budget=args.budget)
    else:
        res = solve(g, rules, ntd=_load_td(args, g), budget=args.budget,
                    strategy=args.strategy.replace("-", "_"))
        k, s_mask, trace = res.k, res.s_mask, res.trace
    out.rec("rules", rules_label(rules))
    out.rec("k", k)
    out.ids("s", iter_bits(s_mask))
    for app in trace:
        out.step(app)
    return 0


def _cmd_verify(args, out):
    g = parse_graph(_read(args.graph))
    if args.sequence is not None:
        seq = _parse_ids(_read(args.sequence), g.n, "sequence")
        chk = verify_sequence(g, seq, args.variant)
        out.rec("valid", "yes" if chk.ok else "no")
        if chk.ok:
            out.rec("length", len(seq))
            out.ids("witness", chk.witnesses)
            return 0
        out.rec("fail_index", chk.fail_index)
        out.rec("reason", chk.reason)
        return 1
    rules = parse_rules(args.rules)
    s = _parse_ids(_read(args.set), g.n, "set")
    s_mask = 0
    for v in s:
        s_mask |= 1 << v
    if args.trace is not None:
        trace = _parse_trace(_read(args.trace), g.n)
        final, bad = replay_trace(g, s_mask, trace, rules)
        if bad is not None:
            out.rec("valid", "no")
            out.rec("fail_index", bad)
            out.rec("reason", "step not applicable")
            return 1
        if final != g.full_mask():
            out.rec("valid", "no")
            out.rec("reason", "trace ends before the graph is blue")
            return 1
        out.rec("valid", "yes")
        out.rec("k", s_mask.bit_count())
        return 0
    res = is_forcing_set(g, s_mask, rules, budget=args.budget)
    out.rec("valid", "yes" if res.forced else "no")
    if res.forced:
        out.rec("k", s_mask.bit_count())
        for app in res.trace:
            out.step(app)
        return 0
    return 1


def _cmd_convert(args, out):
    g = parse_graph(_read(args.graph))
    if args.sequence is not None:
        seq = _parse_ids(_read(args.sequence), g.n, "sequence")
        chk = verify_sequence(g, seq, args.variant)
        if not chk.ok:
            raise ParseError(f"input sequence invalid at position "
                             f"{chk.fail_index}: {chk.reason}")
        s_mask, trace = sequence_to_forcing(g, seq, args.variant)
        out.rec("rules", rules_label(set(a.kind for a in trace)) or "-")
        out.rec("k", s_mask.bit_count())
        out.ids("s", iter_bits(s_mask))
        for app in trace:
            out.step(app)
        return 0
    s = _parse_ids(_read(args.set), g.n, "set")
    s_mask = 0
    for v in s:
        s_mask |= 1 << v
    trace = _parse_trace(_read(args.trace), g.n)
    seq, _ = forcing_to_sequence(g, s_mask, trace, args.variant)
    out.rec("length", len(seq))
    out.ids("seq", seq)
    return 0


def _cmd_reduce(args, out):
    if args.source == "mcc":
        if args.partition is None:
            raise ParseError("--from mcc needs --partition")
        inst = parse_mcc(_read(args.graph), _read(args.partition))
        try:
            osg = mcc_to_osgtd(inst)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        sys.stdout.write(write_osgtd(osg, with_labels=args.labels))
        return 0
    if args.source in ("gd", "tgd", "lgd"):
        if args.target_length is None:
            raise ParseError(f"--from {args.source} needs --target-length")
        g = parse_graph(_read(args.graph))
        build = {"gd": gd_to_osgtd, "tgd": tgd_to_osgtd,
                 "lgd": lgd_to_osgtd}[args.source]
        try:
            osg = build(g, args.target_length)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        sys.stdout.write(write_osgtd(osg))
        return 0
    # source is a one-sided instance file
    inst = parse_osgtd(_read(args.graph))
    if args.to == "hyper":
        sys.stdout.write(write_hypergraph(osgtd_to_hypergraph(inst)))
        return 0
    if args.to == "cobip":
        if args.target is None:
            raise ParseError("--to cobip needs --target")
        try:
            lift, kprime = osgtd_to_cobipartite(inst, args.target)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        sys.stdout.write(f"c target-length {kprime}\n" + write_graph(lift))
        return 0
    raise ParseError(f"--from osgtd cannot produce {args.to!r}")


def _cmd_generate(args, out):
    if args.kind == "corona":
        if args.graph is None:
            raise ParseError("generate corona needs a base graph file")
        g = corona_with_leaves(parse_graph(_read(args.graph)))
    else:
        if args.n is None:
            raise ParseError(f"generate {args.kind} needs --n")
        if args.kind == "path":
            g = path_graph(args.n)
        elif args.kind == "cycle":
            try:
                g = cycle_graph(args.n)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        elif args.kind == "random":
            if args.seed is None:
                raise ParseError("generate random needs an explicit --seed")
            g = gnp_graph(args.n, args.p, args.seed)
        else:
            if args.seed is None:
                raise ParseError("generate caterpillar needs an explicit "
                                 "--seed")
            g = caterpillar_graph(args.n, args.seed)
    sys.stdout.write(write_graph(g))
    return 0


def _cmd_decompose(args, out):
    g = parse_graph(_read(args.graph))
    if args.strategy == "exact":
        width, td = exact_treewidth(g, max_n=args.max_n)
    else:
        td = heuristic_decomposition(g, strategy=args.strategy.replace("-", "_"))
        width = td.width
    if not args.nice:
        sys.stdout.write(f"c width {width}\n" + write_td(td))
        return 0
    ntd = make_nice(g, td)
    lines = [f"c nice tree decomposition: width {ntd.width}, "
             f"{len(ntd.kinds)} nodes, root {ntd.root + 1}"]
    for i, kind in enumerate(ntd.kinds):
        v = "-" if ntd.vertex[i] is None else str(ntd.vertex[i] + 1)
        kids = " ".join(str(c + 1) for c in ntd.children[i])
        lines.append(f"n {i + 1} {kind} {v} {kids}".rstrip())
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _build_parser():
    top = argparse.ArgumentParser(
        prog="zfgrundy",
        description="forcing sets, domination sequences and their reductions")
    top.add_argument("--format", choices=("text", "json-lines"),
                     default="text", help="record output style")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimum forcing set for a rule set")
    p.add_argument("graph")
    p.add_argument("--rules", required=True,
                   help="non-empty subset of z/t/d, e.g. ztd")
    p.add_argument("--method", choices=("dp", "brute"), default="dp")
    p.add_argument("--size", type=int, default=None,
                   help="decide 'is there a forcing set of this size' "
                        "(rule sets z and zd)")
    p.add_argument("--td", default=None, help="use this .td file")
    p.add_argument("--strategy", choices=("min-fill", "min-degree"),
                   default="min-fill")
    p.add_argument("--budget", type=int, default=2 ** 24)
    p.add_argument("--max-n", type=int, default=20,
                   help="brute-force size guard")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a sequence or a forcing set")
    p.add_argument("graph")
    p.add_argument("--sequence", default=None)
    p.add_argument("--variant", choices=VARIANTS, default=None)
    p.add_argument("--set", default=None)
    p.add_argument("--rules", default=None)
    p.add_argument("--trace", default=None)
    p.add_argument("--budget", type=int, default=2 ** 22)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("convert",
                       help="sequence to forcing set or back, by duality")
    p.add_argument("graph")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--sequence", default=None)
    p.add_argument("--set", default=None)
    p.add_argument("--trace", default=None)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("reduce", help="run a hardness reduction")
    p.add_argument("graph", help="graph file, or instance file for "
                                 "--from osgtd")
    p.add_argument("--from", dest="source", required=True,
                   choices=("gd", "tgd", "lgd", "mcc", "osgtd"))
    p.add_argument("--to", default="osgtd",
                   choices=("osgtd", "cobip", "hyper"))
    p.add_argument("--partition", default=None,
                   help="color classes, one line per class (mcc)")
    p.add_argument("--target-length", type=int, default=None)
    p.add_argument("--target", choices=VARIANTS, default=None,
                   help="lift flavor for --to cobip")
    p.add_argument("--labels", action="store_true",
                   help="emit gadget labels as comments")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("generate", help="construct a graph")
    p.add_argument("kind",
                   choices=("corona", "random", "path", "cycle",
                            "caterpillar"))
    p.add_argument("graph", nargs="?", default=None,
                   help="base graph (corona)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=None,
                   help="explicit 64-bit seed")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("decompose", help="tree decomposition of a graph")
    p.add_argument("graph")
    p.add_argument("--strategy", choices=("min-fill", "min-degree", "exact"),
                   default="min-fill")
    p.add_argument("--max-n", type=int, default=20,
                   help="exact-mode size guard")
    p.add_argument("--nice", action="store_true",
                   help="emit the five-type nice form instead of .td")
    p.set_defaults(func=_cmd_decompose)
    return top


def _check_arg_combinations(args):
    if args.command == "verify":
        seqish = args.sequence is not None
        if seqish == (args.set is not None):
            raise ParseError("verify needs exactly one of --sequence/--set")
        if seqish and args.variant is None:
            raise ParseError("verify --sequence needs --variant")
        if not seqish and args.rules is None:
            raise ParseError("verify --set needs --rules")
    if args.command == "convert":
        seqish = args.sequence is not None
        if seqish == (args.set is not None):
            raise ParseError("convert needs exactly one of --sequence/--set")
        if not seqish and args.trace is None:
            raise ParseError("convert --set needs --trace")


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        _check_arg_combinations(args)
        return args.func(args, _Out(args.format))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GuardError, BudgetError) as exc:
        print(f"stopped: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
