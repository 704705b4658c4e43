"""Command-line front end.

Subcommands: solve, kernelize, reduce-mcc, verify-reduction, stats, fuzz.
Reports are JSON documents (sorted keys, no timestamps) so identical inputs
and configuration produce byte-identical output; pass ``--timing`` to embed
wall-clock measurements, which naturally breaks that guarantee.

Exit codes: 0 success, 1 for a NO answer when a decision was requested,
2 for errors (bad input, resource limits, failed verification).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import __version__
from ._core import DEFAULT_BACKEND, available_backends
from .errors import InvalidArgumentError, ParseError, ResourceLimitError
from .generators import (
    random_harmless_set,
    random_instance,
    random_mcc,
)
from .graph import compute_core, is_harmless
from .io import (
    dumps,
    instance_to_doc,
    load_any_instance,
    save_instance,
    save_instance_json,
)
from .kernelize import kernel_decision, kernelize, to_plain_kernel
from .reduction import (
    build_reduction,
    construct_clique_solution,
    load_mcc,
    verify_reduction,
)
from .sparsity import LilyFailure, build_waterlily, count_profiles, projection_closure
from .solvers import brute_force_max, vc_solve


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmlesskit",
        description="Harmless-set solvers, kernelization and hardness-instance tools",
    )
    parser.add_argument("--version", action="version", version=f"harmlesskit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="embed wall-clock timings")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument(
        "--backend",
        choices=("auto",) + tuple(available_backends()),
        default="auto",
        help=f"search kernel backend (auto = {DEFAULT_BACKEND})",
    )
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--brute-cap", type=int, default=None)
    common.add_argument("--cover-cap", type=int, default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="exact maximum harmless set")
    p.add_argument("input")
    p.add_argument("--method", choices=("brute", "vc"), default="brute")
    p.add_argument("--decide", action="store_true", help="exit 1 when the size-k decision is NO")

    p = sub.add_parser("kernelize", parents=[common], help="run the reduction-rule pipeline")
    p.add_argument("input")
    p.add_argument("-p", "--max-threshold", type=int, default=None)
    p.add_argument("--kernel-out", help="write the kernel instance to this path")
    p.add_argument(
        "--plain",
        action="store_true",
        help="emit the unannotated kernel (two guard vertices added)",
    )

    p = sub.add_parser("reduce-mcc", parents=[common], help="build the clique-reduction instance")
    p.add_argument("input")
    p.add_argument("--instance-out", help="write the generated instance to this path")
    p.add_argument("--roles-out", help="write the vertex-role registry to this path")

    p = sub.add_parser(
        "verify-reduction", parents=[common], help="desk-scale check of both reduction directions"
    )
    p.add_argument("input")

    p = sub.add_parser("stats", parents=[common], help="projection/waterlily diagnostics")
    p.add_argument("input")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--x-ids", help="comma-separated 1-based target vertices")
    p.add_argument("--x-size", type=int, default=None, help="sample a random target set")
    p.add_argument("--closure-bound", type=int, default=4)
    p.add_argument("--lily-radius", type=int, default=None)
    p.add_argument("--lily-depth", type=int, default=None)
    p.add_argument("--lily-target", type=int, default=None)

    p = sub.add_parser("fuzz", parents=[common], help="randomised oracle cross-checks")
    p.add_argument(
        "--suite",
        choices=("hereditary", "kernel", "vc", "reduction"),
        default="hereditary",
    )
    p.add_argument("--count", type=int, default=50)
    return parser


def _emit(args, result: dict, renderer) -> None:
    report = {
        "tool": "harmlesskit",
        "version": __version__,
        "command": args.command,
        "config": _config_doc(args),
        "result": result,
    }
    if args.format == "json":
        text = dumps(report) + "\n"
    else:
        text = renderer(result) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _config_doc(args) -> dict:
    skip = {"command", "output", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _maybe_time(args, fn):
    start = time.perf_counter()
    value = fn()
    elapsed = (time.perf_counter() - start) * 1000.0
    return value, (round(elapsed, 3) if args.timing else None)


def _cmd_solve(args) -> int:
    instance = load_any_instance(args.input)
    solver = brute_force_max if args.method == "brute" else vc_solve
    kwargs = {"backend": args.backend}
    if args.method == "brute":
        kwargs["cap"] = args.brute_cap
    else:
        kwargs["cap"] = args.cover_cap
        kwargs["workers"] = args.workers
    (optimum, witness), ms = _maybe_time(args, lambda: solver(instance, **kwargs))
    decision = None if instance.k is None else optimum >= instance.k
    result = {
        "method": args.method,
        "n": instance.n,
        "m": instance.graph.m,
        "k": instance.k,
        "optimum": optimum,
        "witness": sorted(witness),
        "decision": decision,
    }
    if ms is not None:
        result["timing_ms"] = ms

    def render(r):
        lines = [f"optimum {r['optimum']} via {r['method']} on n={r['n']} m={r['m']}"]
        lines.append("witness: " + " ".join(str(v) for v in r["witness"]))
        if r["decision"] is not None:
            lines.append(f"decision (k={r['k']}): {'YES' if r['decision'] else 'NO'}")
        return "\n".join(lines)

    _emit(args, result, render)
    return 1 if (args.decide and decision is False) else 0


def _cmd_kernelize(args) -> int:
    instance = load_any_instance(args.input)
    (ann, report), ms = _maybe_time(
        args, lambda: kernelize(instance, args.max_threshold)
    )
    decision = kernel_decision(ann, report)
    kernel_instance = to_plain_kernel(ann) if args.plain else ann.instance
    kernel_doc = instance_to_doc(
        kernel_instance, roles=None if args.plain else {"core": sorted(ann.core)}
    )
    result = {
        "report": report.to_doc(),
        "decision": decision,
        "kernel": kernel_doc,
        "plain": args.plain,
    }
    if ms is not None:
        result["timing_ms"] = ms
    if args.kernel_out:
        out = Path(args.kernel_out)
        if out.suffix == ".json":
            save_instance_json(kernel_instance, out, roles=kernel_doc.get("roles"))
        else:
            save_instance(kernel_instance, out)

    def render(r):
        rep = r["report"]
        return "\n".join(
            [
                f"kernelize: {rep['initial']['graph']}/{rep['initial']['core']} -> "
                f"{rep['final']['graph']}/{rep['final']['core']} (graph/core)",
                f"rules: {rep['rule_counts']}",
                f"outcome: {rep['outcome']}, decision: {r['decision']}",
            ]
        )

    _emit(args, result, render)
    return 1 if decision == "no" else 0


def _cmd_reduce_mcc(args) -> int:
    mcc = load_mcc(args.input)
    out, ms = _maybe_time(args, lambda: build_reduction(mcc))
    if args.instance_out:
        path = Path(args.instance_out)
        if path.suffix == ".json":
            save_instance_json(out.instance, path, roles=out.roles_doc())
        else:
            save_instance(out.instance, path)
    if args.roles_out:
        Path(args.roles_out).write_text(dumps(out.roles_doc()) + "\n")
    result = {
        "k": mcc.k,
        "n": mcc.n,
        "m": mcc.m,
        "target": out.target,
        "degenerate": out.degenerate,
        "missing_pairs": [list(p) for p in out.missing_pairs],
        "instance_vertices": out.instance.n,
        "instance_edges": out.instance.graph.m,
        "modulator_size": len(out.modulator),
    }
    if ms is not None:
        result["timing_ms"] = ms

    def render(r):
        return (
            f"reduction: k={r['k']} n={r['n']} m={r['m']} -> "
            f"{r['instance_vertices']} vertices, {r['instance_edges']} edges, "
            f"target {r['target']}"
            + (" (degenerate: missing colour pair)" if r["degenerate"] else "")
        )

    _emit(args, result, render)
    return 0


def _cmd_verify_reduction(args) -> int:
    mcc = load_mcc(args.input)
    report, ms = _maybe_time(
        args,
        lambda: verify_reduction(mcc, cap=args.brute_cap, backend=args.backend),
    )
    result = report.to_doc()
    if ms is not None:
        result["timing_ms"] = ms

    def render(r):
        status = "CONFIRMED" if report.ok else "FAILED"
        return (
            f"verification {status}: cliques={r['clique_count']} "
            f"optimum={r['optimum']} target={r['target']}"
        )

    _emit(args, result, render)
    return 0 if report.ok else 2


def _cmd_stats(args) -> int:
    instance = load_any_instance(args.input)
    g = instance.graph
    rng = random.Random(args.seed)
    if args.x_ids:
        X = frozenset(int(tok) - 1 for tok in args.x_ids.split(","))
    elif args.x_size is not None:
        X = frozenset(rng.sample(range(g.n), min(args.x_size, g.n)))
    else:
        X = frozenset(rng.sample(range(g.n), min(max(1, g.n // 4), g.n))) if g.n else frozenset()
    result = {
        "n": g.n,
        "m": g.m,
        "max_degree": max((len(g.adj[v]) for v in range(g.n)), default=0),
        "radius": args.radius,
        "x": sorted(X),
        "profile_count": count_profiles(g, X, args.radius),
        "closure_size": len(projection_closure(g, X, args.radius, args.closure_bound)),
    }
    if args.lily_radius is not None:
        lily = build_waterlily(
            g,
            X,
            args.lily_radius,
            args.lily_depth if args.lily_depth is not None else 1,
            args.lily_target if args.lily_target is not None else 1,
        )
        if isinstance(lily, LilyFailure):
            result["waterlily"] = {"ok": False, "stage": lily.stage, "detail": lily.detail}
        else:
            result["waterlily"] = {
                "ok": True,
                "roots": sorted(lily.roots),
                "centres": sorted(lily.centres),
                "radius": lily.radius,
                "depth": lily.depth,
            }

    def render(r):
        lines = [
            f"n={r['n']} m={r['m']} max_degree={r['max_degree']}",
            f"|X|={len(r['x'])} radius={r['radius']}: "
            f"{r['profile_count']} profiles, closure size {r['closure_size']}",
        ]
        if "waterlily" in r:
            lines.append(f"waterlily: {r['waterlily']}")
        return "\n".join(lines)

    _emit(args, result, render)
    return 0


def _cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    failures: list[str] = []
    count = args.count
    if args.suite == "hereditary":
        for case in range(count):
            inst = random_instance(rng, rng.randint(1, 10))
            S = random_harmless_set(rng, inst)
            sub = frozenset(v for v in S if rng.random() < 0.5)
            if not is_harmless(inst, S):
                failures.append(f"case {case}: generated set not harmless")
            elif not is_harmless(inst, sub):
                failures.append(f"case {case}: subset of a harmless set not harmless")
            elif not S <= compute_core(inst):
                failures.append(f"case {case}: harmless set escapes the core")
    elif args.suite == "kernel":
        from .kernelize import kernelize as _kern
        from .solvers import decide

        for case in range(count):
            n = rng.randint(1, 9)
            inst = random_instance(rng, n, k=rng.randint(0, n))
            ann, rep = _kern(inst)
            want = decide(inst, backend=args.backend)
            got = (
                rep.outcome == "yes"
                or brute_force_max(ann.instance, candidates=ann.core, backend=args.backend)[0]
                >= ann.instance.k
            )
            if want != got:
                failures.append(f"case {case}: kernel decision {got} != oracle {want}")
    elif args.suite == "vc":
        for case in range(count):
            inst = random_instance(rng, rng.randint(1, 12))
            b, _ = brute_force_max(inst, backend=args.backend)
            v, w = vc_solve(inst, backend=args.backend, workers=args.workers)
            if b != v or not is_harmless(inst, w):
                failures.append(f"case {case}: vc={v} oracle={b}")
    elif args.suite == "reduction":
        for case in range(count):
            mcc = random_mcc(rng, rng.choice((2, 3)), rng.choice((1, 2)))
            out = build_reduction(mcc)
            if len(out.selectable_vertices()) > 22:
                continue
            rep = verify_reduction(mcc, cap=args.brute_cap, backend=args.backend)
            if not rep.ok:
                failures.append(f"case {case}: reduction check failed: {rep.to_doc()}")
            for clique in mcc.cliques():
                sol = construct_clique_solution(out, clique)
                if len(sol) != out.target or not is_harmless(out.instance, sol):
                    failures.append(f"case {case}: clique solution invalid for {clique}")
    result = {
        "suite": args.suite,
        "count": count,
        "failures": failures,
        "passed": not failures,
    }

    def render(r):
        status = "all passed" if r["passed"] else f"{len(r['failures'])} FAILURES"
        return f"fuzz {r['suite']} x{r['count']}: {status}"

    _emit(args, result, render)
    return 0 if not failures else 2


_COMMANDS = {
    "solve": _cmd_solve,
    "kernelize": _cmd_kernelize,
    "reduce-mcc": _cmd_reduce_mcc,
    "verify-reduction": _cmd_verify_reduction,
    "stats": _cmd_stats,
    "fuzz": _cmd_fuzz,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, InvalidArgumentError, ResourceLimitError, OSError) as exc:
        print(f"harmlesskit: error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
