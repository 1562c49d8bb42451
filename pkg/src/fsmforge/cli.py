"""Command-line front end.

The CLI is a thin client of the service layer: each subcommand builds the
same request models the HTTP endpoints accept and either executes them
in-process (default) or posts them to a running service (``--server``).
Outputs are machine-readable: `enum` prints the run report as JSON and can
write DOT/JSON graph files; `bench` emits a CSV of comparative timings.

Exit codes: 0 success, 1 usage/parse errors, 2 unknown state register,
3 guarded or incomplete results (input guard, solver budget, state cap).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import urllib.error
import urllib.request
from pathlib import Path

from . import __version__
from .brute_enum import InputGuardError, enumerate_with_conditions
from .cut import FsmSpec, UnknownRegisterError, fsm_cut, identity_cut
from .netlist import NetlistError, parse_bench
from .sat_enum import enumerate_topology
from .solver import BudgetExceededError
from .service import pipeline
from .service.pipeline import ServiceError
from .service.schemas import CutRequest, CutResponse, EnumRequest, EnumResponse
from .topology import StateWord

_EXIT_BY_KIND = {
    "parse": 1,
    "usage": 1,
    "unknown_register": 2,
    "input_guard": 3,
    "budget": 3,
}

BENCH_CSV_COLUMNS = [
    "netlist",
    "states",
    "edges",
    "acpt",
    "recut_ms",
    "full_brute_ms",
    "full_sat_ms",
    "cut_brute_ms",
    "cut_sat_ms",
    "status",
]


def _fail(message: str, code: int) -> int:
    print(f"fsmforge: error: {message}", file=sys.stderr)
    return code


def _read_netlist_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ServiceError("usage", f"cannot read netlist file: {exc}") from exc


def _state_regs(arg: str) -> list[str]:
    regs = [name.strip() for name in arg.split(",") if name.strip()]
    if not regs:
        raise ServiceError("usage", "--state-regs needs at least one register name")
    return regs


def _post(server: str, path: str, payload: dict) -> dict:
    body = json.dumps(payload).encode()
    request = urllib.request.Request(
        server.rstrip("/") + path, data=body, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(request) as response:
            return json.loads(response.read())
    except urllib.error.HTTPError as exc:
        try:
            info = json.loads(exc.read())
        except Exception:
            raise ServiceError("usage", f"server error {exc.code}") from exc
        raise ServiceError(
            info.get("kind", "usage"), info.get("message", "server error"),
            line=info.get("line"), col=info.get("col"),
        ) from exc
    except urllib.error.URLError as exc:
        raise ServiceError("usage", f"cannot reach server: {exc.reason}") from exc


def _cmd_cut(args) -> int:
    request = CutRequest(
        bench=_read_netlist_file(args.netlist),
        state_registers=_state_regs(args.state_regs),
        name=Path(args.netlist).stem,
    )
    if args.server:
        response = CutResponse.model_validate(_post(args.server, "/cut", request.model_dump()))
    else:
        response = pipeline.run_cut(request)
    if args.out:
        Path(args.out).write_text(response.bench)
    if args.json:
        Path(args.json).write_text(json.dumps(response.netlist, indent=2) + "\n")
    stats = response.stats
    print(f"inputs={stats.inputs} regs={stats.regs} gates={stats.gates}")
    return 0


def _cmd_enum(args) -> int:
    if not args.reset or not all(c in "01" for c in args.reset):
        raise ServiceError("usage", f"--reset must be a 0/1 string, got {args.reset!r}")
    request = EnumRequest(
        bench=_read_netlist_file(args.netlist),
        state_registers=_state_regs(args.state_regs),
        reset=args.reset,
        engine=args.engine,
        use_cut=not args.no_cut,
        max_states=args.max_states,
        input_guard=args.input_guard,
        threads=args.threads,
        conflict_budget=args.conflict_budget,
        include_conditions=args.conditions,
        extra_starts=[s.strip() for s in args.also_start.split(",") if s.strip()]
        if args.also_start
        else [],
        name=Path(args.netlist).stem,
    )
    if args.server:
        response = EnumResponse.model_validate(_post(args.server, "/enum", request.model_dump()))
    else:
        response = pipeline.run_enum(request)
    if args.dimacs:
        # CNF of the enumerated cut, for cross-checking with external solvers
        from .cnf import encode, to_dimacs
        from .netlist import parse_bench as _pb

        netlist = _pb(request.bench)
        spec = FsmSpec(
            state_registers=tuple(request.state_registers),
            reset_state=StateWord.from_string(request.reset),
        )
        cut = (fsm_cut if request.use_cut else identity_cut)(netlist, spec)
        problem = encode(cut)
        Path(args.dimacs).write_text(
            to_dimacs(problem, [n.name for n in cut.netlist.nets])
        )
    if args.dot:
        Path(args.dot).write_text(response.dot)
    if args.json:
        payload = response.graph.model_dump()
        if response.conditions is not None:
            payload["conditions"] = response.conditions
        if response.report.acpt is not None:
            payload["acpt"] = response.report.acpt
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
    print(response.report.model_dump_json(indent=2))
    return 0 if response.graph.complete else 3


def _parse_generate_spec(spec: str) -> dict:
    options: dict[str, str] = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ServiceError("usage", f"bad --generate entry {item!r}, expected key=value")
        key, value = item.split("=", 1)
        options[key.strip()] = value.strip()
    if "seeds" not in options:
        raise ServiceError("usage", "--generate needs seeds=<a..b or list>")
    seeds_text = options.pop("seeds")
    if ".." in seeds_text:
        lo, hi = seeds_text.split("..", 1)
        seeds = list(range(int(lo), int(hi) + 1))
    else:
        seeds = [int(s) for s in seeds_text.split(";") if s]
    base = os.environ.get("FSMFORGE_SEED")
    if base is not None:
        seeds = [int(base) + s for s in seeds]
    return {
        "seeds": seeds,
        "profile": options.pop("profile", "random"),
        "states": int(options.pop("states", 8)),
        "inputs": int(options.pop("inputs", 2)),
        "density": float(options.pop("density", 1.0)),
        "pad_gates": int(options.pop("pad_gates", 0)),
        "pad_regs": int(options.pop("pad_regs", 0)),
        **({"_unknown": options} if options else {}),
    }


def _load_suite_dir(path: Path) -> list[tuple[str, str, FsmSpec]]:
    cases = []
    for bench_path in sorted(path.glob("*.bench")):
        spec_path = bench_path.with_suffix(".fsm.json")
        if not spec_path.exists():
            raise ServiceError("usage", f"missing spec file {spec_path.name} for {bench_path.name}")
        meta = json.loads(spec_path.read_text())
        spec = FsmSpec(
            state_registers=tuple(meta["state_registers"]),
            reset_state=StateWord.from_string(meta["reset"]),
        )
        cases.append((bench_path.stem, bench_path.read_text(), spec))
    if not cases:
        raise ServiceError("usage", f"no .bench files in suite directory {path}")
    return cases


def _generated_cases(options: dict) -> list[tuple[str, str, FsmSpec, dict | None]]:
    from .netlist import to_bench
    from .synth import generate, generate_xor_heavy, pad_with_noise, synthesize, truth_to_dict

    if options.get("_unknown"):
        unknown = ", ".join(options["_unknown"])
        raise ServiceError("usage", f"unknown --generate option(s): {unknown}")
    cases = []
    for seed in options["seeds"]:
        truth_data = None
        if options["profile"] == "xor":
            netlist, spec = generate_xor_heavy(seed)
        elif options["profile"] == "random":
            truth = generate(seed, options["states"], options["inputs"], options["density"])
            netlist, spec = synthesize(truth)
            truth_data = truth_to_dict(truth)
        else:
            raise ServiceError("usage", f"unknown profile {options['profile']!r}")
        if options["pad_gates"] or options["pad_regs"]:
            netlist = pad_with_noise(netlist, options["pad_gates"], options["pad_regs"], seed)
        cases.append((f"gen{seed}", to_bench(netlist), spec, truth_data))
    return cases


def _write_suite(directory: Path, cases) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, bench, spec, truth_data in cases:
        (directory / f"{name}.bench").write_text(bench)
        (directory / f"{name}.fsm.json").write_text(
            json.dumps(
                {
                    "state_registers": list(spec.state_registers),
                    "reset": str(spec.reset_state),
                },
                indent=2,
            )
            + "\n"
        )
        if truth_data is not None:
            (directory / f"{name}.truth.json").write_text(
                json.dumps(truth_data, indent=2) + "\n"
            )


def _bench_case(name: str, bench: str, spec: FsmSpec, args) -> dict:
    row: dict[str, object] = {c: "" for c in BENCH_CSV_COLUMNS}
    row["netlist"] = name
    try:
        netlist = parse_bench(bench)
        t0 = time.perf_counter()
        cut = fsm_cut(netlist, spec)
        row["recut_ms"] = f"{(time.perf_counter() - t0) * 1000.0:.3f}"
        full = identity_cut(netlist, spec)

        graphs = {}
        for label, target in (("full", full), ("cut", cut)):
            t0 = time.perf_counter()
            conditioned = enumerate_with_conditions(
                target, spec, input_guard=args.input_guard, threads=args.threads
            )
            row[f"{label}_brute_ms"] = f"{(time.perf_counter() - t0) * 1000.0:.3f}"
            graphs[f"{label}_brute"] = conditioned.base
            if label == "cut":
                row["acpt"] = f"{float(conditioned.acpt):.6g}"
            t0 = time.perf_counter()
            graph = enumerate_topology(target, spec, threads=args.threads)
            row[f"{label}_sat_ms"] = f"{(time.perf_counter() - t0) * 1000.0:.3f}"
            graphs[f"{label}_sat"] = graph

        reference = graphs["cut_sat"]
        row["states"] = len(reference.states)
        row["edges"] = len(reference.edges)
        agree = all(
            g.states == reference.states and g.edges == reference.edges
            for g in graphs.values()
        )
        row["status"] = "ok" if agree else "mismatch"
    except (NetlistError, UnknownRegisterError, InputGuardError, BudgetExceededError, ValueError) as exc:
        row["status"] = f"error: {exc}"
    return row


def _cmd_bench(args) -> int:
    if bool(args.suite) == bool(args.generate):
        return _fail("bench needs exactly one of --suite or --generate", 1)
    if args.suite:
        suite_dir = Path(args.suite)
        if not suite_dir.is_dir():
            return _fail(f"suite directory {args.suite} does not exist", 1)
        cases = [(name, bench, spec) for name, bench, spec in _load_suite_dir(suite_dir)]
    else:
        generated = _generated_cases(_parse_generate_spec(args.generate))
        if args.write_suite:
            _write_suite(Path(args.write_suite), generated)
        cases = [(name, bench, spec) for name, bench, spec, _ in generated]

    rows = [_bench_case(name, bench, spec, args) for name, bench, spec in cases]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=BENCH_CSV_COLUMNS)
    writer.writeheader()
    writer.writerows(rows)
    text = buffer.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if all(row["status"] == "ok" for row in rows) else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsmforge",
        description="Extract FSM cuts from gate-level netlists and enumerate "
        "their transition topologies.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cut = sub.add_parser("cut", help="extract the state registers' fan-in cone")
    p_cut.add_argument("--netlist", required=True, help=".bench file")
    p_cut.add_argument("--state-regs", required=True, help="comma-separated register names")
    p_cut.add_argument("--out", help="write the cut as .bench")
    p_cut.add_argument("--json", help="write the cut netlist as JSON")
    p_cut.add_argument("--server", help="delegate to a running service URL")
    p_cut.set_defaults(func=_cmd_cut)

    p_enum = sub.add_parser("enum", help="enumerate the transition topology")
    p_enum.add_argument("--netlist", required=True, help=".bench file")
    p_enum.add_argument("--state-regs", required=True, help="comma-separated register names")
    p_enum.add_argument("--reset", required=True, help="reset state bits, index 0 leftmost")
    p_enum.add_argument("--engine", choices=("sat", "brute"), default="sat")
    p_enum.add_argument("--no-cut", action="store_true", help="run on the full netlist")
    p_enum.add_argument("--dot", help="write the graph as DOT")
    p_enum.add_argument("--json", help="write the graph as JSON")
    p_enum.add_argument("--dimacs", help="write the cut's CNF in DIMACS form")
    p_enum.add_argument("--max-states", type=int, default=1 << 20)
    p_enum.add_argument("--threads", type=int, default=1)
    p_enum.add_argument("--input-guard", type=int, default=24,
                        help="max relevant free inputs for the brute engine")
    p_enum.add_argument("--conflict-budget", type=int, default=None)
    p_enum.add_argument("--conditions", action="store_true",
                        help="include per-transition condition cubes in --json (brute)")
    p_enum.add_argument("--also-start", default="",
                        help="extra start states to seed, comma-separated")
    p_enum.add_argument("--server", help="delegate to a running service URL")
    p_enum.set_defaults(func=_cmd_enum)

    p_bench = sub.add_parser("bench", help="compare engines on a suite, emit CSV")
    p_bench.add_argument("--suite", help="directory of NAME.bench + NAME.fsm.json pairs")
    p_bench.add_argument("--generate", help="e.g. seeds=1..8,profile=xor")
    p_bench.add_argument("--write-suite",
                         help="with --generate: also write NAME.bench / NAME.fsm.json "
                         "/ NAME.truth.json files into this directory")
    p_bench.add_argument("--out", help="CSV path (default: stdout)")
    p_bench.add_argument("--threads", type=int, default=1)
    p_bench.add_argument("--input-guard", type=int, default=24)
    p_bench.set_defaults(func=_cmd_bench)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    from pydantic import ValidationError

    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        first = exc.errors()[0]
        return _fail(f"invalid request: {first['loc']}: {first['msg']}", 1)
    except ServiceError as exc:
        where = ""
        if exc.line is not None:
            where = f" (line {exc.line}" + (f", col {exc.col})" if exc.col is not None else ")")
        return _fail(f"{exc.message}{where}", _EXIT_BY_KIND.get(exc.kind, 1))


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
