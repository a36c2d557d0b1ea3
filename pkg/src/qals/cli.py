"""Batch experiment front end.

Subcommands: generate | local-search | sweep | solve | spectrum | oracle.
Every command is deterministic given its config (seeds included); data
files are byte-identical across re-runs, with wall time and versions kept
in a sidecar metadata file (<out>.meta.json).

Exit codes: 0 success, 1 runtime/numerical error, 2 usage/config error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import importlib.metadata
import json
import math
import os
import sys
import time
import zlib

import numpy as np

from . import efftemp, hybrid, ising, localsearch, oracle, qsim
from .errors import ConfigError, QalsError, ResourceError
from .ising import ProblemInstance, SpinState
from .localsearch import LocalSearchParams
from .schedule import Schedule

MODE_BLOCKS = ("local_search", "sweep", "solver", "spectrum")
DEFAULT_SWEEP_CAP = 512


def _default_qubit_cap() -> int:
    env = os.environ.get("QAL_MAX_QUBITS")
    return int(env) if env else qsim.DEFAULT_QUBIT_CAP


def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return repr(x)
    return str(x)


def _write_csv(path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def _write_sidecar(out_path, config, seed, wall_time) -> None:
    try:
        version = importlib.metadata.version("qals")
    except importlib.metadata.PackageNotFoundError:
        version = "unknown"
    meta = {
        "config": config,
        "seed": seed,
        "versions": {"qals": version, "numpy": np.__version__},
        "wall_time_s": wall_time,
    }
    with open(str(out_path) + ".meta.json", "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=1, sort_keys=True)
        f.write("\n")


def _load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _check_mode_block(config: dict, expected: str) -> None:
    present = [k for k in MODE_BLOCKS if k in config]
    if present != [expected]:
        raise ConfigError(
            f"config must contain exactly the {expected!r} mode block, "
            f"found {present or 'none'}"
        )


def _parse_graph(spec: str) -> ising.HardwareGraph:
    try:
        kind, _, arg = spec.partition(":")
        if kind == "path":
            return ising.path_graph(int(arg))
        if kind == "ring":
            return ising.ring_graph(int(arg))
        if kind == "complete":
            return ising.complete_graph(int(arg))
        if kind == "king":
            r, c = arg.split("x")
            return ising.king_graph(int(r), int(c))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad graph spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown graph kind in {spec!r} (path|ring|complete|king)")


def _resolve_problem(source, seed_override=None) -> ProblemInstance:
    if isinstance(source, str):
        return ising.load_problem(source)
    if isinstance(source, dict):
        graph = _parse_graph(source["graph"])
        seed = seed_override if seed_override is not None else int(source["seed"])
        return ising.random_instance(
            graph, source.get("distribution", "pm_one"), seed
        )
    raise ConfigError("problem source must be a file path or generator spec")


def _resolve_start(spec, problem: ProblemInstance, seed: int) -> SpinState:
    if spec == "ground":
        return oracle.brute_force(problem).ground_states[0]
    if spec == "random":
        rng = np.random.default_rng(np.random.SeedSequence((seed, 0x57A27)))
        return SpinState(tuple(int(s) for s in rng.choice([-1, 1], problem.n)))
    if isinstance(spec, list):
        return SpinState(tuple(int(s) for s in spec))
    raise ConfigError(f"bad start spec {spec!r}")


def _bath(block: dict) -> qsim.BathParams:
    return qsim.BathParams.from_dict(block)


def _ls_params(block: dict, seed, qubit_cap) -> LocalSearchParams:
    return LocalSearchParams(
        s_prime=float(block["s_prime"]),
        tau=float(block.get("tau", 0.0)),
        ramp=float(block.get("ramp", 5.0)),
        bath=_bath(block.get("bath", {"T": 0.3})),
        samples=int(block.get("samples", 1)),
        seed=int(block.get("seed", 0) if seed is None else seed),
        dt=block.get("dt"),
        qubit_cap=qubit_cap,
    )


def cmd_generate(args) -> int:
    graph = _parse_graph(args.graph)
    problem = ising.random_instance(graph, args.dist, args.seed)
    ising.save_problem(problem, args.out)
    coeffs = list(problem.h) + [problem.J[e] for e in graph.sorted_edges]
    checksum = zlib.crc32(np.array(coeffs).tobytes())
    print(
        f"n={problem.n} edges={len(graph.edges)} checksum={checksum:08x} "
        f"-> {args.out}"
    )
    return 0


def cmd_oracle(args) -> int:
    problem = ising.load_problem(args.problem)
    spec = oracle.brute_force(problem)
    print(f"ground_energy={_fmt(spec.ground_energy)}")
    for state in spec.ground_states:
        print("ground_state=" + "".join("+" if s > 0 else "-" for s in state))
    if args.out:
        _write_csv(args.out, ["state", "energy"], oracle.spectrum_rows(spec))
        _write_sidecar(args.out, {"problem": args.problem}, None, 0.0)
    return 0


def cmd_spectrum(args) -> int:
    t0 = time.monotonic()
    config = _load_config(args.config) if args.config else {}
    if config:
        _check_mode_block(config, "spectrum")
    block = config.get("spectrum", {})
    problem = _resolve_problem(args.problem or config["problem"])
    schedule = Schedule.from_dict(config.get("schedule", {}))
    k = args.levels or int(block.get("levels", 2))
    grid = block.get("s_grid")
    if args.s_grid:
        lo, hi, num = args.s_grid.split(":")
        grid = np.linspace(float(lo), float(hi), int(num)).tolist()
    if grid is None:
        grid = np.linspace(0.0, 1.0, 21).tolist()
    rows = qsim.spectrum_trace(problem, schedule, grid, k, args.max_qubits)
    out = args.out or config.get("out", "spectrum.csv")
    _write_csv(out, ["s"] + [f"lambda_{i}" for i in range(k)], rows)
    _write_sidecar(out, config, None, time.monotonic() - t0)
    print(f"wrote {len(rows)} rows -> {out}")
    return 0


def cmd_local_search(args) -> int:
    t0 = time.monotonic()
    config = _load_config(args.config)
    _check_mode_block(config, "local_search")
    block = config["local_search"]
    seed = args.seed if args.seed is not None else None
    problem = _resolve_problem(config["problem"])
    schedule = Schedule.from_dict(config.get("schedule", {}))
    params = _ls_params(block, seed, args.max_qubits)
    start = _resolve_start(block.get("start", "random"), problem, params.seed)
    result = localsearch.run(problem, schedule, start, params)
    stats = localsearch.distribution_stats(problem, start, result.distribution)
    out = args.out or config.get("out", "local_search.csv")
    rows = [
        (
            "".join("+" if s > 0 else "-" for s in r.state),
            r.energy,
            r.hamming,
            r.count,
        )
        for r in result.records
    ]
    _write_csv(out, ["state", "energy", "hamming", "count"], rows)
    summary_out = out + ".summary.csv"
    _write_csv(
        summary_out,
        ["mean_energy", "mean_hamming", "p_start", "p_best_found"],
        [
            (
                stats["mean_energy"],
                stats["mean_hamming"],
                stats["p_start"],
                stats["p_best_found"],
            )
        ],
    )
    _write_sidecar(out, config, params.seed, time.monotonic() - t0)
    print(
        f"samples={result.total} mean_energy={stats['mean_energy']:.6g} "
        f"mean_hamming={stats['mean_hamming']:.4g} p_start={stats['p_start']:.4g}"
    )
    return 0


def _apply_perturbation(problem: ProblemInstance, perturb: dict) -> ProblemInstance:
    dh = perturb.get("dh", [0.0] * problem.n)
    if len(dh) != problem.n:
        raise ConfigError("dh length must equal n")
    h = tuple(hi + float(d) for hi, d in zip(problem.h, dh))
    J = dict(problem.J)
    for i, j, delta in perturb.get("dJ", []):
        key = (min(int(i), int(j)), max(int(i), int(j)))
        if key not in J:
            raise ConfigError(f"dJ edge {key} not in the hardware graph")
        J[key] = J[key] + float(delta)
    return ProblemInstance(problem.graph, h, J)


def cmd_sweep(args) -> int:
    t0 = time.monotonic()
    config = _load_config(args.config)
    _check_mode_block(config, "sweep")
    block = config["sweep"]
    problem = _resolve_problem(config["problem"])
    schedule = Schedule.from_dict(config.get("schedule", {}))
    base = _ls_params(block["base"], args.seed, args.max_qubits)
    start = _resolve_start(block.get("start", "random"), problem, base.seed)
    grid = block.get("grid", {})
    s_values = [float(v) for v in grid.get("s_prime", [base.s_prime])]
    tau_values = [float(v) for v in grid.get("tau", [base.tau])]
    t_values = [float(v) for v in grid.get("T", [base.bath.temperature])]
    if not (s_values and tau_values and t_values):
        raise ConfigError("sweep grid must be nonempty")
    npoints = len(s_values) * len(tau_values) * len(t_values)
    cap = int(block.get("max_points", DEFAULT_SWEEP_CAP))
    if npoints > cap:
        raise ResourceError(f"sweep grid has {npoints} points, cap is {cap}")
    variants = [("baseline", problem)]
    if "perturb" in block:
        variants.append(("perturbed", _apply_perturbation(problem, block["perturb"])))
    rows = []
    for sp in sorted(s_values):
        for tau in sorted(tau_values):
            for T in sorted(t_values):
                for name, prob in variants:
                    params = LocalSearchParams(
                        s_prime=sp,
                        tau=tau,
                        ramp=base.ramp,
                        bath=qsim.BathParams(T, base.bath.eta, base.bath.omega_c),
                        samples=base.samples,
                        seed=base.seed,
                        dt=base.dt,
                        qubit_cap=base.qubit_cap,
                    )
                    dist = localsearch.outcome_distribution(
                        prob, schedule, start, params
                    )
                    st = localsearch.distribution_stats(prob, start, dist)
                    rows.append(
                        (
                            name,
                            sp,
                            tau,
                            T,
                            st["mean_hamming"],
                            st["mean_energy"],
                            st["p_ground"],
                            st["p_start"],
                        )
                    )
    out = args.out or config.get("out", "sweep.csv")
    _write_csv(
        out,
        [
            "variant",
            "s_prime",
            "tau",
            "T",
            "mean_hamming",
            "mean_energy",
            "p_ground",
            "p_start",
        ],
        rows,
    )
    _write_sidecar(out, config, base.seed, time.monotonic() - t0)
    print(f"wrote {len(rows)} rows -> {out}")
    return 0


def _solve(problem, schedule, solver, seed_override, qubit_cap):
    algorithm = solver.get("algorithm")
    seed = int(solver.get("seed", 0) if seed_override is None else seed_override)
    sweeps = int(solver.get("sweeps", 1))
    if algorithm in ("qpa", "qpt"):
        ladder = efftemp.ladder(schedule, [float(s) for s in solver["ladder_s"]])
        move = _ls_params({"s_prime": 1.0, **solver.get("move", {})}, None, qubit_cap)
        config = hybrid.HybridConfig(
            ladder=tuple(ladder),
            population=int(solver.get("population", 32)),
            sweeps=sweeps,
            move=move,
            seed=seed,
            reweight_temperatures=(
                tuple(solver["reweight_temperatures"])
                if "reweight_temperatures" in solver
                else None
            ),
        )
        if algorithm == "qpa":
            return hybrid.q_population_annealing(problem, schedule, config)
        return hybrid.q_parallel_tempering(problem, schedule, config)
    if algorithm == "sa":
        return hybrid.classical_sa(problem, solver["temperatures"], sweeps, seed)
    if algorithm == "pt":
        return hybrid.classical_pt(problem, solver["temperatures"], sweeps, seed)
    raise ConfigError(f"unknown algorithm {algorithm!r} (qpa|qpt|sa|pt)")


def cmd_solve(args) -> int:
    t0 = time.monotonic()
    config = _load_config(args.config)
    _check_mode_block(config, "solver")
    problem = _resolve_problem(config["problem"])
    schedule = Schedule.from_dict(config.get("schedule", {}))
    result = _solve(
        problem, schedule, config["solver"], args.seed, args.max_qubits
    )
    out = args.out or config.get("out", "solve.csv")
    keys = sorted({k for row in result.stats for k in row})
    rows = [tuple(row.get(k, "") for k in keys) for row in result.stats]
    _write_csv(out, keys, rows)
    best = "".join("+" if s > 0 else "-" for s in result.best_state)
    _write_csv(
        out + ".best.csv",
        ["algorithm", "best_state", "best_energy", "move_budget"],
        [(result.algorithm, best, result.best_energy, result.move_budget)],
    )
    _write_sidecar(out, config, args.seed, time.monotonic() - t0)
    print(
        f"{result.algorithm}: best_energy={_fmt(result.best_energy)} "
        f"state={best} moves={result.move_budget}"
    )
    if args.verify:
        if problem.n > oracle.ENUMERATION_CAP:
            raise ConfigError("--verify requires n within the enumeration cap")
        spec = oracle.brute_force(problem)
        if abs(result.best_energy - spec.ground_energy) > 1e-9:
            print(
                f"VERIFY MISMATCH: found {result.best_energy}, "
                f"oracle ground {spec.ground_energy} "
                f"(gap {result.best_energy - spec.ground_energy})",
                file=sys.stderr,
            )
            return 3
        print("verify: ok")
    return 0


def _limit_threads(threads: int | None) -> None:
    if threads is None:
        return
    try:
        import threadpoolctl

        threadpoolctl.threadpool_limits(threads)
    except ImportError:
        os.environ["OMP_NUM_THREADS"] = str(threads)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qals", description="Reverse-anneal local search laboratory"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=False):
        p.add_argument("--config", required=needs_config, help="JSON config file")
        p.add_argument("--out", help="output path (overrides config)")
        p.add_argument("--seed", type=int, help="seed override")
        p.add_argument("--threads", type=int, help="BLAS thread cap")
        p.add_argument(
            "--max-qubits",
            type=int,
            default=_default_qubit_cap(),
            help="dense-simulation qubit cap (env QAL_MAX_QUBITS)",
        )

    g = sub.add_parser("generate", help="write a random problem instance")
    g.add_argument("--graph", required=True, help="path:N|ring:N|complete:N|king:RxC")
    g.add_argument("--dist", default="pm_one", choices=ising.DISTRIBUTIONS)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--threads", type=int)
    g.add_argument("--max-qubits", type=int, default=_default_qubit_cap())
    g.set_defaults(func=cmd_generate)

    ls = sub.add_parser("local-search", help="run one reverse-anneal cycle")
    common(ls, needs_config=True)
    ls.set_defaults(func=cmd_local_search)

    sw = sub.add_parser("sweep", help="grid sweep over s', tau, bath T")
    common(sw, needs_config=True)
    sw.set_defaults(func=cmd_sweep)

    so = sub.add_parser("solve", help="hybrid or classical ground-state search")
    common(so, needs_config=True)
    so.add_argument(
        "--verify", action="store_true", help="check best energy against brute force"
    )
    so.set_defaults(func=cmd_solve)

    sp = sub.add_parser("spectrum", help="gap-trace CSV of the lowest k levels")
    common(sp)
    sp.add_argument("--problem", help="problem file")
    sp.add_argument("--s-grid", help="lo:hi:count")
    sp.add_argument("--levels", type=int, help="number of levels k")
    sp.set_defaults(func=cmd_spectrum)

    orc = sub.add_parser("oracle", help="brute-force ground truth")
    orc.add_argument("--problem", required=True)
    orc.add_argument("--out", help="full spectrum CSV")
    orc.add_argument("--threads", type=int)
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    _limit_threads(getattr(args, "threads", None))
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except QalsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (KeyError, OSError) as exc:
        print(f"config error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
