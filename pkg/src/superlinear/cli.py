"""Command line front end: color, verify, oracle, gen, fuzz and bench.

Exit codes: 0 success, 1 usage / parse / contract / budget error, 2 some component
has no coloring, 3 a coloring fails verification (or the fuzzer found a
discrepancy).
"""

from __future__ import annotations

import argparse
import gc
import hashlib
import os
import random
import statistics
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coloring import DEFAULT_UNIVERSE, ListAssignment, find_violation
from .driver import color_graph
from .errors import BudgetExceeded, ContractError, ExtensionError
from .extend import BRANCHES, Trace
from .graph import Graph, components, induced
from .instances import (
    GADGETS,
    Instance,
    cycle,
    find_good_cycle_instance,
    format_coloring,
    format_instance,
    fuzz_instance,
    identical_lists,
    k23,
    k33,
    parse_coloring,
    parse_instance,
    petersen,
    planted,
    prism,
    random_cubic,
    random_lists,
    random_subcubic,
    read_text,
    write_text,
)
from .oracle import SearchBudget, enumerate_all, solve_superlinear

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_INVALID = 0, 1, 2, 3


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        write_text(path, text)


# ---------------------------------------------------------------------------
# color / verify / oracle


def cmd_color(args) -> int:
    inst = parse_instance(read_text(args.instance))
    trace = Trace(record=args.trace is not None)
    result = color_graph(inst.graph, inst.lists, trace=trace, check=args.check)
    if args.trace is not None:
        write_text(args.trace, "\n".join(trace.lines) + "\n")
    if args.report:
        sys.stderr.write(result.report.to_text())
    if not result.ok:
        _emit("".join(f"{c}\n" for c in result.certificates), args.out)
        return EXIT_INFEASIBLE
    _emit(format_coloring(result.coloring), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(read_text(args.instance))
    f = parse_coloring(read_text(args.coloring), inst.graph.n, inst.lists.universe)
    bad = find_violation(inst.graph, inst.lists, f)
    if bad is not None:
        print(f"invalid {bad}")
        return EXIT_INVALID
    print("ok")
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = parse_instance(read_text(args.instance))
    budget = SearchBudget(max_vertices=args.max_vertices)
    if args.count:
        print(enumerate_all(inst.graph, inst.lists, budget))
        return EXIT_OK
    f = solve_superlinear(inst.graph, inst.lists, budget)
    if f is None:
        print("infeasible")
        return EXIT_INFEASIBLE
    _emit(format_coloring(f), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# gen


def _int_param(params: Sequence[str], i: int, what: str) -> int:
    if i >= len(params):
        raise ContractError(f"missing {what}")
    raw = params[i]
    if raw.startswith("seed="):
        raw = raw[len("seed="):]
    try:
        return int(raw)
    except ValueError:
        raise ContractError(f"{what} must be an integer, got {raw!r}") from None


def generate_graph(family: str, params: Sequence[str]) -> Graph:
    fixed = {"petersen": petersen, "c5": lambda: cycle(5), "k33": k33, "k23": k23, "prism": prism}
    if family in fixed:
        return fixed[family]()
    if family == "cycle":
        return cycle(_int_param(params, 0, "cycle length"))
    if family in ("random-subcubic", "random-cubic"):
        n = _int_param(params, 0, "order")
        rng = random.Random(_int_param(params, 1, "seed") if len(params) > 1 else 0)
        return random_cubic(n, rng) if family == "random-cubic" else random_subcubic(n, rng)
    if family == "planted":
        if not params or params[0] not in GADGETS:
            raise ContractError(f"planted needs a gadget name: {', '.join(GADGETS)}")
        order = _int_param(params, 1, "host order")
        rng = random.Random(_int_param(params, 2, "seed") if len(params) > 2 else 0)
        return planted(params[0], order, rng)[0]
    raise ContractError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    if args.family == "good-cycle":
        # the lists are part of this construction
        target = args.params[0] if args.params else "recolor"
        rng = random.Random(_int_param(args.params, 1, "seed") if len(args.params) > 1 else 0)
        inst = find_good_cycle_instance(rng, target)
        if inst is None:
            raise ContractError(f"no good-cycle {target} instance found for this seed")
        _emit(format_instance(inst, f"good-cycle {' '.join(args.params)}"), args.out)
        return EXIT_OK
    g = generate_graph(args.family, args.params)
    mode = args.lists[0]
    if mode == "identical":
        L = identical_lists(g.n, universe=args.universe)
    elif mode == "random":
        seed = _int_param(args.lists, 1, "list seed") if len(args.lists) > 1 else 0
        L = random_lists(g.n, random.Random(seed), args.universe)
    elif mode == "file":
        if len(args.lists) < 2:
            raise ContractError("--lists file needs a path")
        L = parse_instance(read_text(args.lists[1])).lists
        if len(L) != g.n:
            raise ContractError(f"list file has {len(L)} lists for {g.n} vertices")
    else:
        raise ContractError(f"unknown list mode {mode!r}")
    comment = " ".join([args.family, *args.params, "lists", *args.lists])
    _emit(format_instance(Instance(g, L), comment), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# fuzz


@dataclass
class FuzzSummary:
    iters: int = 0
    discrepancies: int = 0
    fallbacks: int = 0
    infeasible_components: int = 0
    oracle_checks: int = 0
    branches: Counter = field(default_factory=Counter)
    families: Counter = field(default_factory=Counter)
    digest: str = ""
    reproducers: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def missing(self) -> list[str]:
        return [b for b in BRANCHES if not self.branches[b]]

    def to_text(self) -> str:
        lines = [
            f"iters={self.iters}",
            f"discrepancies={self.discrepancies}",
            f"fallbacks={self.fallbacks}",
            f"infeasible_components={self.infeasible_components}",
            f"oracle_checks={self.oracle_checks}",
            f"seconds={self.seconds:.1f}",
            f"digest={self.digest}",
            f"branches_hit={len(BRANCHES) - len(self.missing)}/{len(BRANCHES)}",
            f"missing={','.join(self.missing) or '-'}",
        ]
        lines += [f"family.{k}={v}" for k, v in sorted(self.families.items())]
        lines += [f"branch.{b}={self.branches[b]}" for b in BRANCHES]
        return "\n".join(lines) + "\n"


def check_instance(inst: Instance) -> tuple[Optional[str], object]:
    """Color ``inst`` and cross-check it; returns ``(problem, result)``."""
    g, L = inst.graph, inst.lists
    try:
        result = color_graph(g, L, check=True, fallback=True)
    except (ExtensionError, ContractError, AssertionError) as e:
        return f"color_graph raised {type(e).__name__}: {e}", None
    blocked = {v for c in result.certificates for v in c.component}
    view = g.copy()
    view.remove(blocked)
    bad = find_violation(view, L, result.coloring)
    if bad is not None:
        return f"output fails verification: {bad}", result
    infeasible = {c.component for c in result.certificates}
    for comp in components(g):
        comp = tuple(sorted(comp))
        if len(comp) > 10:
            if comp in infeasible:
                return f"large component {comp[:5]}... reported infeasible", result
            continue
        sub, order = induced(g, comp)
        local = ListAssignment([L[v] for v in order], L.universe)
        feasible = solve_superlinear(sub, local) is not None
        if feasible == (comp in infeasible):
            return f"oracle says feasible={feasible} for component {comp}", result
    if result.report.fallbacks:
        return f"defensive fallback used {result.report.fallbacks} times", result
    return None, result


def run_fuzz(
    iters: int,
    max_n: int = 200,
    seed: int = 0,
    out_dir: Optional[str] = None,
    progress=None,
) -> FuzzSummary:
    """Fuzz ``iters`` instances; iteration ``i`` draws from its own seed ``(seed, i)``."""
    s = FuzzSummary()
    h = hashlib.sha256()
    t0 = time.perf_counter()
    for i in range(iters):
        rng = random.Random(f"{seed}:{i}")
        family, inst = fuzz_instance(rng, max_n)
        problem, result = check_instance(inst)
        s.iters += 1
        s.families[family] += 1
        h.update(f"{i} {family} {inst.graph.n} {inst.graph.m}\n".encode())
        if result is not None:
            s.branches.update(result.report.branches)
            s.fallbacks += result.report.fallbacks
            s.infeasible_components += len(result.certificates)
            s.oracle_checks += sum(1 for c in components(inst.graph) if len(c) <= 10)
            h.update(format_coloring(result.coloring).encode())
        if problem is not None:
            s.discrepancies += 1
            if out_dir is not None:
                os.makedirs(out_dir, exist_ok=True)
                path = os.path.join(out_dir, f"repro-{seed}-{i}.txt")
                write_text(path, format_instance(inst, f"{family} seed={seed} iter={i}\n{problem}"))
                s.reproducers.append(path)
            if progress is not None:
                progress(f"iter {i} ({family}): {problem}")
        if progress is not None and (i + 1) % 10000 == 0:
            progress(f"{i + 1} iterations, {s.discrepancies} discrepancies")
    s.digest = h.hexdigest()[:16]
    s.seconds = time.perf_counter() - t0
    return s


def cmd_fuzz(args) -> int:
    def progress(msg):
        print(msg, file=sys.stderr)

    s = run_fuzz(args.iters, args.n, args.seed, args.out_dir, progress)
    sys.stdout.write(s.to_text())
    if s.discrepancies:
        return EXIT_INVALID
    if args.require_coverage and s.missing:
        return EXIT_INVALID
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench


@dataclass
class BenchRow:
    n: int
    seconds: list
    work: int
    steps: int

    @property
    def median(self) -> float:
        return statistics.median(self.seconds)


def run_bench(sizes: Sequence[int], seed: int = 0, repeats: int = 5) -> list[BenchRow]:
    """Median timings of :func:`color_graph` on one random connected cubic graph per size."""
    if not sizes:
        raise ContractError("no sizes given")
    rows = []
    for n in sizes:
        rng = random.Random(f"bench:{seed}:{n}")
        g = random_cubic(n, rng, connected=True)
        L = random_lists(n, rng)
        times = []
        for _ in range(repeats):
            gc.collect()
            gc.disable()
            try:
                t0 = time.perf_counter()
                r = color_graph(g, L)
                times.append(time.perf_counter() - t0)
            finally:
                gc.enable()
        rows.append(BenchRow(n, times, r.report.work, r.report.steps))
    return rows


def bench_table(rows: Sequence[BenchRow]) -> str:
    out = ["n\tmedian_s\tus_per_n\twork\twork_per_n\tsteps_per_n\ttime_ratio"]
    prev = None
    for row in rows:
        ratio = "-" if prev is None else f"{row.median / prev.median:.3f}"
        out.append(
            f"{row.n}\t{row.median:.4f}\t{1e6 * row.median / row.n:.2f}\t{row.work}"
            f"\t{row.work / row.n:.2f}\t{row.steps / row.n:.3f}\t{ratio}"
        )
        prev = row
    return "\n".join(out) + "\n"


def bench_plot(rows: Sequence[BenchRow], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r.n for r in rows]
    fig, (a, b) = plt.subplots(1, 2, figsize=(9, 3.5))
    a.plot(ns, [r.median for r in rows], "o-")
    a.set_xlabel("n")
    a.set_ylabel("median seconds")
    a.set_xscale("log")
    a.set_yscale("log")
    b.plot(ns, [r.work / r.n for r in rows], "o-", label="work / n")
    b.plot(ns, [1e6 * r.median / r.n for r in rows], "s--", label="us / n")
    b.set_xlabel("n")
    b.set_xscale("log")
    b.set_ylim(bottom=0)
    b.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _sizes(text: str) -> list[int]:
    try:
        return [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ContractError(f"bad size list {text!r}") from None


def cmd_bench(args) -> int:
    rows = run_bench(_sizes(args.sizes), args.seed, args.repeats)
    sys.stdout.write("--- bench\n" + bench_table(rows) + "--- end\n")
    if args.plot:
        bench_plot(rows, args.plot)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superlinear", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("color", help="color an instance file")
    c.add_argument("instance")
    c.add_argument("--out", help="coloring file (default stdout)")
    c.add_argument("--report", action="store_true", help="print the run report to stderr")
    c.add_argument("--check", action="store_true", help="re-verify every extension step")
    c.add_argument("--trace", metavar="PATH", help="write one line per greedy choice")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring against an instance")
    v.add_argument("instance")
    v.add_argument("coloring")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive search on a small instance")
    o.add_argument("instance")
    o.add_argument("--count", action="store_true", help="count all colorings")
    o.add_argument("--max-vertices", type=int, default=12)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="write an instance file")
    g.add_argument(
        "family",
        help="petersen | c5 | k33 | k23 | prism | cycle N | random-subcubic N SEED | "
        "random-cubic N SEED | planted GADGET HOST_ORDER SEED | good-cycle BRANCH SEED",
    )
    g.add_argument("params", nargs="*")
    g.add_argument("--lists", nargs="+", default=["identical"], metavar="MODE",
                   help="identical | random SEED | file PATH")  # fmt: skip
    g.add_argument("--universe", type=int, default=DEFAULT_UNIVERSE)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("fuzz", help="differential fuzzing with branch coverage")
    f.add_argument("--n", type=int, default=200, help="maximum order")
    f.add_argument("--iters", type=int, default=1000)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out-dir", default="fuzz-failures", help="where reproducers go")
    f.add_argument("--require-coverage", action="store_true",
                   help="fail unless every branch was hit")  # fmt: skip
    f.set_defaults(func=cmd_fuzz)

    b = sub.add_parser("bench", help="time color_graph on random cubic graphs")
    b.add_argument("--sizes", default="10000,20000,40000,80000,160000")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--plot", metavar="PNG")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse uses 2 for usage errors; 2 means "infeasible" here
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except (ContractError, BudgetExceeded, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
