"""Command-line interface.

Subcommands:

* ``solve``     -- solve a WCNF file, MaxSAT-evaluation style output
                   (``o``/``s``/``v`` lines, exit 30 optimum / 20 hard-unsat);
* ``encode``    -- reduce a problem file to WCNF plus a ``.map.json`` sidecar;
* ``run``       -- encode, solve, decode and re-verify in one go;
* ``generate``  -- produce benchmark instances (``php <m>``, ``fig1 <k> <m>``);
* ``bench``     -- run a manifest of instances, emit per-instance CSV stats.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .encodings import (
    EncodingResult,
    decode,
    encode_csp,
    encode_knapsack,
    encode_max_clique,
    encode_max_independent_set,
    encode_max_set_packing,
    encode_min_dominating_set,
    encode_min_hitting_set,
    encode_min_vertex_cover,
    encode_php,
    encode_sat,
    generate_clique_pendant_graph,
)
from .formula import WcnfInstance, emit_wcnf, parse_wcnf
from .problems import (
    emit_graph,
    parse_cnf,
    parse_csp,
    parse_graph,
    parse_knapsack,
    parse_set_system,
)
from .solver import HARD_UNSAT, SolverOptions, SolverTimeout, solve_with_trace

EXIT_OPTIMUM = 30
EXIT_HARD_UNSAT = 20
EXIT_ERROR = 1

_ENCODERS = {
    "vc": ("graph", encode_min_vertex_cover),
    "is": ("graph", encode_max_independent_set),
    "clique": ("graph", encode_max_clique),
    "ds": ("graph", encode_min_dominating_set),
    "hs": ("sets", encode_min_hitting_set),
    "sp": ("sets", lambda s: encode_max_set_packing(s.sets)),
    "knapsack": ("knapsack", encode_knapsack),
    "php": ("int", encode_php),
    "sat2horn": ("cnf", encode_sat),
    "csp2horn": ("csp", encode_csp),
}


def _onoff(value: str) -> bool:
    if value in ("on", "true", "1"):
        return True
    if value in ("off", "false", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected on or off, got {value!r}")


def _add_solver_flags(p: argparse.ArgumentParser):
    p.add_argument("--minimize-cores", type=_onoff, default=True, metavar="on|off",
                   help="shrink each core to a minimal one before blocking (default on)")
    p.add_argument("--seed-disjoint", type=_onoff, default=True, metavar="on|off",
                   help="seed with a greedy batch of disjoint cores (default on)")
    p.add_argument("--trace", metavar="PATH",
                   help="write per-iteration JSON records to PATH")
    p.add_argument("--timeout", type=float, default=1800.0, metavar="SECONDS",
                   help="time budget per solve (default 1800)")
    p.add_argument("--memlimit", type=float, default=10.0, metavar="GB",
                   help="address space limit in GB (default 10)")


def _options(args) -> SolverOptions:
    return SolverOptions(
        minimize_cores=args.minimize_cores,
        seed_disjoint=args.seed_disjoint,
        timeout_s=args.timeout,
    )


def _apply_memlimit(gigabytes: float):
    try:
        import resource

        limit = int(gigabytes * 1024**3)
        resource.setrlimit(resource.RLIMIT_AS, (limit, limit))
    except (ImportError, ValueError, OSError):
        print("c warning: could not apply memory limit", file=sys.stderr)


def _write_trace(path: str, trace):
    with open(path, "w") as fh:
        for rec in trace:
            fh.write(
                json.dumps(
                    {
                        "iteration": rec.index,
                        "hitting_set": sorted(rec.hitting_set),
                        "hs_cost": rec.hs_cost,
                        "core": sorted(rec.core) if rec.core is not None else None,
                        "core_size": len(rec.core) if rec.core is not None else 0,
                    }
                )
                + "\n"
            )


def _solve_instance(inst: WcnfInstance, args):
    result, trace = solve_with_trace(inst, _options(args))
    if args.trace:
        _write_trace(args.trace, trace)
    return result


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_problem(kind: str, path: str):
    input_form, encoder = _ENCODERS[kind]
    if input_form == "graph":
        return encoder(parse_graph(_read(path)))
    if input_form == "sets":
        return encoder(parse_set_system(_read(path)))
    if input_form == "knapsack":
        return encoder(parse_knapsack(_read(path)))
    if input_form == "cnf":
        return encoder(parse_cnf(_read(path)))
    if input_form == "csp":
        return encoder(parse_csp(_read(path)))
    if input_form == "int":
        try:
            m = int(path)
        except ValueError:
            m = int(_read(path).strip())
        return encoder(m)
    raise AssertionError(input_form)


def _encode_with_flags(kind: str, path: str, args) -> EncodingResult:
    if kind in ("php", "csp2horn") and args.atmost != "auto":
        if kind == "php":
            try:
                m = int(path)
            except ValueError:
                m = int(_read(path).strip())
            return encode_php(m, atmost_method=args.atmost)
        return encode_csp(parse_csp(_read(path)), atmost_method=args.atmost)
    return _load_problem(kind, path)


def _print_solution(result):
    if result.status == HARD_UNSAT:
        print("s UNSATISFIABLE")
        return EXIT_HARD_UNSAT
    print(f"o {result.cost}")
    print("s OPTIMUM FOUND")
    lits = [v if result.model[v] else -v for v in sorted(result.model)]
    print("v " + " ".join(map(str, lits)))
    return EXIT_OPTIMUM


def cmd_solve(args) -> int:
    _apply_memlimit(args.memlimit)
    inst = parse_wcnf(_read(args.wcnf))
    result = _solve_instance(inst, args)
    print(f"c iterations {result.stats.iterations}")
    print(f"c disjoint_cores {result.stats.disjoint_cores}")
    print(f"c ltur_calls {result.stats.ltur_calls}")
    return _print_solution(result)


def _sidecar(output: str) -> str:
    path = Path(output)
    return str(path.with_suffix(".map.json")) if path.suffix else output + ".map.json"


def cmd_encode(args) -> int:
    enc = _encode_with_flags(args.kind, args.input, args)
    Path(args.output).write_text(emit_wcnf(enc.instance, dialect=args.format))
    Path(_sidecar(args.output)).write_text(enc.map_json() + "\n")
    print(
        f"c wrote {args.output} ({enc.instance.num_vars} vars, "
        f"{len(enc.instance.hard)} hard, {len(enc.instance.soft)} soft)"
    )
    return 0


def cmd_run(args) -> int:
    _apply_memlimit(args.memlimit)
    enc = _encode_with_flags(args.kind, args.input, args)
    result = _solve_instance(enc.instance, args)
    answer = decode(result, enc)
    print(f"c iterations {result.stats.iterations}")
    if answer.verdict is not None:
        print(f"result: {answer.verdict}")
    print(f"optimum: {answer.value}")
    if answer.selection:
        print("selection: " + " ".join(map(str, answer.selection)))
    print("verified: true")
    return 0


def cmd_generate(args) -> int:
    if args.family == "php":
        if len(args.params) != 1:
            raise SystemExit("usage: generate php <m> <output>")
        enc = encode_php(int(args.params[0]))
        Path(args.output).write_text(emit_wcnf(enc.instance))
        Path(_sidecar(args.output)).write_text(enc.map_json() + "\n")
        print(
            f"c wrote {args.output} ({len(enc.instance.soft)} soft clauses, "
            f"{len(enc.instance.hard)} hard)"
        )
    else:
        if len(args.params) != 2:
            raise SystemExit("usage: generate fig1 <k> <m> <output>")
        g = generate_clique_pendant_graph(int(args.params[0]), int(args.params[1]))
        Path(args.output).write_text(emit_graph(g))
        print(f"c wrote {args.output} ({g.n} vertices, {len(g.edges)} edges)")
    return 0


def _bench_row(task) -> dict:
    spec, args_dict = task
    opts = SolverOptions(
        minimize_cores=args_dict["minimize_cores"],
        seed_disjoint=args_dict["seed_disjoint"],
        timeout_s=args_dict["timeout"],
    )
    kind = spec[0]
    k = m = ub = ""
    if kind == "fig1":
        k, m, problem = int(spec[1]), int(spec[2]), (spec[3] if len(spec) > 3 else "is")
        g = generate_clique_pendant_graph(k, m)
        enc = {
            "is": encode_max_independent_set,
            "vc": encode_min_vertex_cover,
            "clique": encode_max_clique,
        }[problem](g)
        inst = enc.instance
        name = f"fig1-k{k}-m{m}-{problem}"
        ub = k * (k - 1) // 2 + 2 * k
    elif kind == "php":
        m = int(spec[1])
        inst = encode_php(m).instance
        name = f"php-{m}"
    elif kind == "wcnf":
        inst = parse_wcnf(Path(spec[1]).read_text())
        name = Path(spec[1]).name
    else:
        raise ValueError(f"unknown manifest entry kind {kind!r}")

    start = time.monotonic()
    result, _ = solve_with_trace(inst, opts)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return {
        "instance": name,
        "k": k,
        "m": m,
        "cost": result.cost if result.cost is not None else "",
        "dc": result.stats.disjoint_cores,
        "iters": result.stats.iterations,
        "ub": ub,
        "ltur_calls": result.stats.ltur_calls,
        "time_ms": elapsed_ms,
    }


def cmd_bench(args) -> int:
    _apply_memlimit(args.memlimit)
    entries = []
    for raw in Path(args.manifest).read_text().splitlines():
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        entries.append(line.split())
    shared = {
        "minimize_cores": args.minimize_cores,
        "seed_disjoint": args.seed_disjoint,
        "timeout": args.timeout,
    }
    tasks = [(entry, shared) for entry in entries]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_row, tasks))
    else:
        rows = [_bench_row(t) for t in tasks]
    fields = ["instance", "k", "m", "cost", "dc", "iters", "ub", "ltur_calls", "time_ms"]
    with open(args.output, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    print(f"c wrote {args.output} ({len(rows)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hornmax",
        description="Horn MaxSAT solver and problem reduction toolkit",
    )
    parser.add_argument("--version", action="version", version=f"hornmax {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a WCNF file")
    p.add_argument("wcnf")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    kinds = sorted(_ENCODERS)
    p = sub.add_parser("encode", help="reduce a problem file to WCNF")
    p.add_argument("kind", choices=kinds)
    p.add_argument("input", help="problem file (for php: the hole count)")
    p.add_argument("output")
    p.add_argument("--atmost", choices=["auto", "pairwise", "sequential", "totalizer"],
                   default="auto", help="at-most-one encoding method")
    p.add_argument("--format", choices=["wcnf-classic", "wcnf-2022"],
                   default="wcnf-classic", help="output dialect")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("run", help="encode, solve, decode and verify")
    p.add_argument("kind", choices=kinds)
    p.add_argument("input", help="problem file (for php: the hole count)")
    p.add_argument("--atmost", choices=["auto", "pairwise", "sequential", "totalizer"],
                   default="auto")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("generate", help="generate benchmark instances")
    p.add_argument("family", choices=["php", "fig1"])
    p.add_argument("params", nargs="+", help="php: <m>; fig1: <k> <m>")
    p.add_argument("output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run a manifest of instances, emit CSV")
    p.add_argument("manifest", help="lines: 'fig1 <k> <m> [is|vc|clique]', "
                                    "'php <m>', or 'wcnf <path>'")
    p.add_argument("output")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.add_argument("--minimize-cores", type=_onoff, default=True, metavar="on|off")
    p.add_argument("--seed-disjoint", type=_onoff, default=True, metavar="on|off")
    p.add_argument("--timeout", type=float, default=1800.0, metavar="SECONDS")
    p.add_argument("--memlimit", type=float, default=10.0, metavar="GB")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SolverTimeout as exc:
        print("s UNKNOWN")
        print(f"c {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # parse errors, bad inputs: report and fail
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
