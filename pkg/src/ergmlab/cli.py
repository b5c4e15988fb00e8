"""``ergmlab`` command-line entry point.

Every subcommand prints one JSON object (or CSV with ``--format csv`` where the
output is a table) carrying a ``manifest``: command, input digests,
parameters, toolkit version and seed. Files written with ``--out`` embed the
same manifest. Exit codes: 0 ok, 1 a verification failed, 2 invalid input,
3 size cap exceeded, 64 unknown subcommand.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import random
import sys
from pathlib import Path

from . import __version__, kernels
from .dyadic import Dyadic
from .errors import ErgmError, InvalidArgument, SizeCapError, TooLarge
from .graph import Graph, format_graph_text, from_code, parse_graph_text, triangle_count, is_bipartite
from .model import ErgmModel, loads_model, model_to_dict
from .oracles import (
    count_matchings,
    max_trifree_count,
    permanent_perfect_matchings,
    tri_free_decision,
    trifree_census_exhaustive,
)
from .partition import (
    decode_trifree_digits,
    partition_exhaustive,
    partition_reference,
    partition_two_vertex,
    resolve_threads,
)
from .reductions import (
    ReplacementParams,
    build_matching_ergm,
    build_trifree_ergm,
    decode_matching_digits,
    dichotomy_classify,
    feature_replace,
    gap_instance,
    gap_verdict,
    recover_old_exact,
    recover_old_partition,
    old_window,
    separation_identity_holds,
    snub,
    trifree_params_from_model,
)
from .sampler import run_chain, witness_bit
from .verify import CHECKS, verify_all

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_SIZE_CAP, EXIT_USAGE = 0, 1, 2, 3, 64

ORACLE_KINDS = ("trifree-census", "max-trifree", "matchings")


# -- manifest and output ------------------------------------------------------

def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def manifest(args: argparse.Namespace) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command", "seed")}
    inputs = {}
    for key in getattr(args, "_inputs", ()):
        value = getattr(args, key, None)
        for path in value if isinstance(value, list) else [value]:
            if path is not None:
                inputs[path] = _sha256(path)
    params.pop("_inputs", None)
    return {"command": args.command, "version": __version__, "inputs": inputs,
            "parameters": params, "seed": args.seed}


def _emit(args, payload: dict) -> None:
    payload = dict(payload)
    payload["manifest"] = manifest(args)
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _emit_csv(args, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    buf.write("# manifest: " + json.dumps(manifest(args), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _write_model(args, path: str, m: ErgmModel) -> None:
    obj = model_to_dict(m)
    obj["manifest"] = manifest(args)
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def _write_graph(args, path: str, g: Graph) -> None:
    Path(path).write_text("# manifest: " + json.dumps(manifest(args), sort_keys=True) + "\n"
                          + format_graph_text(g))


def _read_graph(path: str) -> Graph:
    return parse_graph_text(Path(path).read_text())


def _read_model(path: str) -> ErgmModel:
    return loads_model(Path(path).read_text())


def _digits_json(d) -> dict:
    return {"base_exponent": d.base_exponent, "digits": [str(x) for x in d.digits]}


def _z_json(z: Dyadic) -> dict:
    return {"z": str(z), "integer_part": str(z.floor()), "fraction_is_zero": z.frac() == Dyadic(0)}


def _model_digits(m: ErgmModel, z: Dyadic) -> dict | None:
    kind = m.metadata.get("kind")
    if trifree_params_from_model(m) is not None:
        return _digits_json(decode_trifree_digits(z, m.n, int(m.metadata["alpha"])))
    if kind == "matching":
        return _digits_json(decode_matching_digits(z, m.n))
    return None


def _partition(m: ErgmModel, engine: str, threads: int | None):
    if engine == "two-vertex":
        return partition_two_vertex(m)
    if engine == "reference":
        return partition_reference(m)
    return partition_exhaustive(m, threads=threads)


# -- subcommands ----------------------------------------------------------------

def cmd_partition(args) -> int:
    m = _read_model(args.model)
    res = _partition(m, args.engine, args.threads)
    out = {"engine": args.engine, "n": m.n, "states_enumerated": res.states_enumerated,
           "threads": resolve_threads(args.threads), "backend": kernels.BACKEND_NAME, **_z_json(res.z)}
    digits = _model_digits(m, res.z)
    if digits is not None:
        out["digits"] = digits
    _emit(args, out)
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.model:
        m = _read_model(args.model)
        z = partition_exhaustive(m, threads=args.threads).z
        digits = _model_digits(m, z)
        if digits is None:
            raise InvalidArgument("model carries no trifree or matching metadata; pass --z/--n/--alpha")
        n = m.n
    else:
        if args.z is None or args.n is None:
            raise InvalidArgument("decode needs --model, or --z with --n")
        z, n = Dyadic.parse(args.z), args.n
        if args.matching:
            digits = _digits_json(decode_matching_digits(z, n))
        else:
            if args.alpha is None:
                raise InvalidArgument("--alpha is required unless --matching is given")
            digits = _digits_json(decode_trifree_digits(z, n, args.alpha))
    _emit(args, {"n": n, **_z_json(z), "digits": digits})
    return EXIT_OK


def cmd_build_trifree(args) -> int:
    g = _read_graph(args.graph)
    m, p = build_trifree_ergm(g, args.alpha)
    _write_model(args, args.out, m)
    _emit(args, {"out": args.out, "n": m.n, "features": len(m.features), "alpha": p.alpha, "beta": p.beta})
    return EXIT_OK


def cmd_build_matching(args) -> int:
    g = _read_graph(args.graph)
    m = build_matching_ergm(g, homogeneous_paths=args.homogeneous_paths)
    _write_model(args, args.out, m)
    _emit(args, {"out": args.out, "n": m.n, "features": len(m.features),
                 "base_exponent": m.metadata["base_exponent"], "beta": m.metadata["beta"]})
    return EXIT_OK


def cmd_snub(args) -> int:
    g = _read_graph(args.graph)
    sg = snub(g, rng=random.Random(args.seed) if args.randomize else None)
    _write_graph(args, args.out, sg.graph)
    roles = sg.roles_json()
    roles["manifest"] = manifest(args)
    Path(args.roles).write_text(json.dumps(roles, indent=2) + "\n")
    _emit(args, {"out": args.out, "roles": args.roles, "n": sg.graph.n, "edges": sg.graph.num_edges(),
                 "triangles": triangle_count(sg.graph), "role_census": sg.role_census()})
    return EXIT_OK


def cmd_replace_feature(args) -> int:
    m = _read_model(args.model)
    if not 0 <= args.feature < len(m.features):
        raise InvalidArgument(f"feature index {args.feature} out of range 0..{len(m.features) - 1}")
    h = _read_graph(args.pattern)
    new, p = feature_replace(m, args.feature, h, args.embedding, gamma=args.gamma)
    _write_model(args, args.out, new)
    _emit(args, {"out": args.out, "n": new.n, "features": len(new.features), "replacement": p.to_dict(),
                 "window_bit": p.window_bit})
    return EXIT_OK


def cmd_recover_partition(args) -> int:
    m = _read_model(args.model)
    if m.metadata.get("kind") != "replaced":
        raise InvalidArgument("model carries no replacement metadata")
    p = ReplacementParams.from_dict(m.metadata["replacement"])
    z_new = partition_exhaustive(m, threads=args.threads).z
    out = {"z_new": str(z_new), "window": str(recover_old_partition(z_new, p)),
           "z_old_recovered": str(recover_old_exact(z_new, p)), "replacement": p.to_dict()}
    if args.old_model:
        z_old = partition_exhaustive(_read_model(args.old_model), threads=args.threads).z
        out["z_old"] = str(z_old)
        out["expected_window"] = str(old_window(z_old, p))
        out["window_matches"] = recover_old_partition(z_new, p) == old_window(z_old, p)
        out["exact_matches"] = recover_old_exact(z_new, p) == z_old
    _emit(args, out)
    return EXIT_OK


def cmd_gap_check(args) -> int:
    g = _read_graph(args.graph)
    m, p = gap_instance(g, args.k, args.flog)
    z = partition_exhaustive(m, threads=args.threads).z
    yes, no = gap_verdict(z, p)
    truth = tri_free_decision(g, args.k)
    verdict = "YES" if yes and not no else "NO" if no and not yes else "UNDECIDED"
    _emit(args, {"verdict": verdict, "z": str(z), "alpha": p.alpha, "k": p.k, "f_log": p.f_log,
                 "yes_threshold": str(p.yes_threshold), "no_threshold": str(p.no_threshold),
                 "yes_holds": yes, "no_holds": no, "tri_free": truth,
                 "agrees": (verdict == "YES") == truth and verdict != "UNDECIDED",
                 "identity_holds": separation_identity_holds(p)})
    return EXIT_OK


def cmd_classify(args) -> int:
    pats = [_read_graph(p) for p in args.patterns]
    c = dichotomy_classify(pats)
    _emit(args, {"verdict": c.verdict, "case": c.case, "pattern_index": c.pattern_index,
                 "witness": None if c.witness is None else list(c.witness)})
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _read_graph(args.graph)
    if args.kind == "trifree-census":
        counts = trifree_census_exhaustive(g).counts
        if args.format == "csv":
            _emit_csv(args, ["edges", "count"], [[i, c] for i, c in enumerate(counts)])
        else:
            _emit(args, {"kind": args.kind, "counts": [str(c) for c in counts]})
    elif args.kind == "max-trifree":
        res = max_trifree_count(g)
        _emit(args, {"kind": args.kind, "max_edges": res.max_edges, "count": res.count, "nodes": res.nodes,
                     "deletion_sets": [sorted(list(e) for e in s) for s in res.deletion_sets]})
    else:
        mc = count_matchings(g)
        if args.format == "csv":
            _emit_csv(args, ["size", "count"], [[i, c] for i, c in enumerate(mc.counts)])
        else:
            out = {"kind": args.kind, "counts": [str(c) for c in mc.counts], "perfect": str(mc.perfect)}
            if is_bipartite(g):
                out["permanent"] = str(permanent_perfect_matchings(g))
            _emit(args, out)
    return EXIT_OK


def cmd_sample(args) -> int:
    m = _read_model(args.model)
    if args.tv and m.n > 5:
        raise TooLarge("TV distance is limited to n <= 5")
    samples, report = run_chain(m, args.steps, seed=args.seed, tv=args.tv)
    out = {"steps": report.steps, "acceptance_rate": report.acceptance_rate, "tv_distance": report.tv_distance,
           "final_code": samples[-1]}
    if args.check_k is not None:
        params = trifree_params_from_model(m)
        if params is None:
            raise InvalidArgument("--check-k needs a trifree model")
        bits = {}
        for code in set(samples):
            bits[code] = witness_bit(params, from_code(code, m.n), args.check_k)
        ones = sum(bits[c] for c in samples)
        out["check"] = {"k": args.check_k, "ones": ones, "total": len(samples), "rate": ones / len(samples),
                        "tri_free": tri_free_decision(params.source, args.check_k)}
    _emit(args, out)
    return EXIT_OK


def cmd_verify_parsimony(args) -> int:
    g = _read_graph(args.graph)
    matchings = count_matchings(g).perfect
    permanent = permanent_perfect_matchings(g)
    sg = snub(g)
    res = max_trifree_count(sg.graph)
    expected_edges = 11 * g.n // 2
    ok = matchings == permanent == res.count and res.max_edges == expected_edges
    _emit(args, {"matchings": matchings, "permanent": permanent, "max_trifree_edges": res.max_edges,
                 "max_trifree_count": res.count, "expected_edges": expected_edges, "nodes": res.nodes,
                 "status": "PASS" if ok else "FAIL"})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify_all(args) -> int:
    if args.filter is not None and set(f.strip() for f in args.filter.split(",")) - set(CHECKS):
        raise InvalidArgument(f"unknown check in {args.filter!r}; keys: {', '.join(CHECKS)}")
    model = _read_model(args.model) if args.model else None
    results = verify_all(args.filter, model)
    for r in results:
        print(r.line(), file=sys.stderr)
    passed = all(r.passed for r in results)
    if args.format == "csv":
        _emit_csv(args, ["key", "name", "passed", "detail", "seconds"],
                  [[r.key, r.name, r.passed, r.detail, f"{r.seconds:.3f}"] for r in results])
    else:
        _emit(args, {"passed": passed, "results": [
            {"key": r.key, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results]})
    return EXIT_OK if passed else EXIT_FAILED


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: $ERGMLAB_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="ergmlab", description="Exact ERGM partition functions and reductions.")
    p.add_argument("--version", action="version", version=f"ergmlab {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, inputs=(), **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func, _inputs=tuple(inputs))
        return sp

    sp = add("partition", cmd_partition, ["model"], help="exact partition function")
    sp.add_argument("--model", required=True)
    sp.add_argument("--engine", choices=["exhaustive", "two-vertex", "reference"], default="exhaustive")

    sp = add("decode", cmd_decode, ["model"], help="digits of Z for trifree or matching models")
    sp.add_argument("--model")
    sp.add_argument("--z", help='exact value "M*2^-s"')
    sp.add_argument("--n", type=int)
    sp.add_argument("--alpha", type=int)
    sp.add_argument("--matching", action="store_true", help="base 2^C(n,2) digits")

    sp = add("build-trifree", cmd_build_trifree, ["graph"], help="trifree model for a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("--out", required=True)

    sp = add("build-matching-model", cmd_build_matching, ["graph"], help="matching model for a bipartite graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--homogeneous-paths", action="store_true", help="one P2 count instead of P2 indicators")

    sp = add("snub", cmd_snub, ["graph"], help="snub graph of a 3-regular bipartite graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--roles", required=True)
    sp.add_argument("--randomize", action="store_true", help="seeded random cyclic orders and picks")

    sp = add("replace-feature", cmd_replace_feature, ["model", "pattern"], help="feature replacement gadget")
    sp.add_argument("--model", required=True)
    sp.add_argument("--feature", type=int, required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--embedding", required=True, help='vertex map "0:0,1:2"')
    sp.add_argument("--gamma", type=int)
    sp.add_argument("--out", required=True)

    sp = add("recover-partition", cmd_recover_partition, ["model", "old_model"],
             help="read Z_old out of a replaced model's Z")
    sp.add_argument("--model", required=True)
    sp.add_argument("--old-model")

    sp = add("gap-check", cmd_gap_check, ["graph"], help="threshold test on the gap instance")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--flog", type=int, required=True)

    sp = add("classify", cmd_classify, ["patterns"], help="dichotomy classification of a pattern set")
    sp.add_argument("--patterns", nargs="+", required=True)

    sp = add("oracle", cmd_oracle, ["graph"], help="brute-force oracles")
    sp.add_argument("kind", choices=ORACLE_KINDS)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = add("sample", cmd_sample, ["model"], help="Metropolis-Hastings chain")
    sp.add_argument("--model", required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--tv", action="store_true")
    sp.add_argument("--check-k", type=int)

    sp = add("verify-parsimony", cmd_verify_parsimony, ["graph"], help="matchings vs snub maximum subgraphs")
    sp.add_argument("--graph", required=True)

    sp = add("verify-all", cmd_verify_all, ["model"], help="run the acceptance checks")
    sp.add_argument("--filter", help=f"comma-separated check keys ({', '.join(CHECKS)})")
    sp.add_argument("--model", help="also check trifree-model invariants of this file")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    return p


SUBCOMMANDS = ("partition", "decode", "build-trifree", "build-matching-model", "snub", "replace-feature",
               "recover-partition", "gap-check", "classify", "oracle", "sample", "verify-parsimony", "verify-all")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    first = next((a for a in argv if not a.startswith("-")), None)
    if first is None and not any(a in ("-h", "--help", "--version") for a in argv):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if first is not None and first not in SUBCOMMANDS:
        parser.print_usage(sys.stderr)
        print(f"ergmlab: unknown subcommand {first!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"ergmlab: size cap: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except (ErgmError, OSError, ValueError) as exc:
        print(f"ergmlab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
