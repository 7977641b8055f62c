"""Command-line entry point.

Exit codes: 0 success / ACCEPT, 1 REJECT or no certificate, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from ._accel import backend_name
from .analyzer import check_lemma_hypotheses, embed_triangulation, adjacency
from .construction import build_gk, degree_histogram, skeleton_subgraph
from .solver import DEFAULT_BUDGET, SizeGuardError, naive_twinwidth, twinwidth_at_most, twinwidth_exact
from .trigraph import TrigraphError, verify_certificate
from .witness import WitnessError, synthesize_plan

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def metadata(g) -> dict:
    return {
        "k": g.k,
        "n": g.n,
        "m": len(g.edges),
        "skeleton_n": len(g.skeleton_vertices),
        "histogram": {str(d): c for d, c in degree_histogram(g).items()},
    }


def cmd_generate(args) -> int:
    g = build_gk(args.k)
    meta = json.dumps(metadata(g), sort_keys=False)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        io.write_edge_list(d / f"g{args.k}.edges", g.n, g.edges)
        (d / f"g{args.k}.emb").write_text(io.format_embedding(g.embedding))
        (d / f"g{args.k}.json").write_text(meta + "\n")
    print(meta)
    return EXIT_OK


def cmd_export(args) -> int:
    g = build_gk(args.k)
    fmt = args.format
    if fmt == "edges":
        text = io.format_edge_list(g.n, g.edges)
    elif fmt == "embedding":
        text = io.format_embedding(g.embedding)
    elif fmt == "dot":
        text = io.to_dot(g.graph, name=f"G{args.k}")
    elif fmt == "meta":
        text = json.dumps(metadata(g)) + "\n"
    elif fmt == "skeleton-edges":
        sk, emb = skeleton_subgraph(g)
        text = io.format_edge_list(sk.capacity, sk.edges())
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(fmt)
    _emit(text, args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    plan = synthesize_plan(args.k)
    seq, trace = plan.sequence, plan.trace
    n = len(seq) + 1
    text = io.format_certificate(n, trace.overall_width, seq)
    _emit(text, args.out)
    if args.trace:
        Path(args.trace).write_text(io.format_trace_csv(seq, trace))
    if args.out:
        print(f"width={trace.overall_width} steps={len(seq)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = io.read_edge_list(args.graph)
    n, width, seq = io.read_certificate(args.cert)
    if n != g.n:
        print(f"REJECT reason=certificate is for n={n}, graph has n={g.n}")
        return EXIT_REJECT
    bound = width if args.bound is None else args.bound
    v = verify_certificate(g, seq, bound)
    if v:
        print(f"ACCEPT width={v.width} bound={bound}")
        return EXIT_OK
    parts = ["REJECT"]
    if v.step is not None:
        parts.append(f"step={v.step}")
    if v.red_degree is not None:
        parts.append(f"red_degree={v.red_degree}")
    parts.append(f"reason={v.reason}")
    print(" ".join(parts))
    return EXIT_REJECT


def cmd_solve(args) -> int:
    g = io.read_edge_list(args.graph)
    upper = None
    if args.upper_cert:
        n, w, seq = io.read_certificate(args.upper_cert)
        v = verify_certificate(g, seq, w)
        if not v:
            raise UsageError(f"upper-bound certificate does not verify: {v.reason}")
        upper = (v.width, seq)
    if args.mode == "naive":
        try:
            width, seq = naive_twinwidth(g)
        except SizeGuardError as exc:
            raise UsageError(str(exc)) from None
        status = "exact"
    elif args.mode == "exact":
        res = twinwidth_exact(g, budget=args.budget, upper_bound=upper, threads=args.threads)
        width, seq, status = res.width, res.sequence, res.status
    else:
        if args.bound is None:
            raise UsageError("--mode at-most needs --bound")
        out = twinwidth_at_most(g, args.bound, args.budget)
        if out.sequence is None:
            status = "infeasible" if out.proven_none else "unknown"
            print(f"width>{args.bound} status={status}" if out.proven_none else f"width=? status={status}")
            return EXIT_REJECT
        width = verify_certificate(g, out.sequence, args.bound).width
        seq, status = out.sequence, "upper-bound"
    if args.out:
        io.write_certificate(args.out, g.n, width, seq)
    print(f"width={width} status={status}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.k is not None:
        sk, emb = skeleton_subgraph(build_gk(args.k))
    elif args.graph:
        sk = io.read_edge_list(args.graph)
        emb = io.parse_embedding(Path(args.embedding).read_text()) if args.embedding else embed_triangulation(adjacency(sk))
    else:
        raise UsageError("analyze needs --k or --graph")
    report = check_lemma_hypotheses(sk, emb)
    print(json.dumps(report.to_dict()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twinwidth", description="Twin-width toolkit for the planar family G_k.")
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({backend_name()} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", help="build G_k and print its metadata")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("export", help="write G_k in one format")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--format", choices=["edges", "embedding", "dot", "meta", "skeleton-edges"], default="edges")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("witness", help="synthesize the 7-contraction certificate of G_k")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--trace", help="optional per-step CSV")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("verify", help="replay a certificate against a graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--cert", required=True)
    s.add_argument("--bound", type=int, help="defaults to the certificate's declared width")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="twin-width of a small graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--mode", choices=["exact", "naive", "at-most"], default="exact")
    s.add_argument("--bound", type=int)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--seed", type=int, default=0, help="accepted for reproducibility; the search is deterministic")
    s.add_argument("--upper-cert", help="certificate to use as the starting upper bound")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("analyze", help="evaluate skeleton hypotheses as JSON")
    s.add_argument("--k", type=int)
    s.add_argument("--graph")
    s.add_argument("--embedding")
    s.set_defaults(func=cmd_analyze)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, io.FormatError, TrigraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WitnessError as exc:  # pragma: no cover - would be an implementation bug
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
