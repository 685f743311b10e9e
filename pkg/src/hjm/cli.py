"""Command-line entry point.

Subcommands: verify, search (max | enumerate | pareto | count-stats |
heuristic), pareto4, construct, optimize (fujimura | moser-b | lp |
props-bound), bounds table, orbits classify.  Exit codes: 0 success and
claims verified, 1 claim mismatch, 2 usage error, 3 budget exceeded
(partial artifacts written).

Artifacts are byte-reproducible for a fixed configuration: certificates
and checkpoints are canonical JSON, tables are comma-separated with a
leading ``# seed=...`` comment line, a header row and LF endings, and
figures carry no timestamps.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__, construct, fourd, optimize, search, verify
from .cube import PointSet
from .verify import (
    Certificate,
    make_certificate,
    make_simplex_certificate,
    verify_certificate,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

#: Fixed conversion from --budget seconds to deterministic work quotas.
NODES_PER_SECOND = 200_000
STEPS_PER_SECOND = 150_000


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    k: int = 3
    predicate: str = "moser"
    shard: int | None = None
    budget: float | None = None  # wall-clock seconds, mapped to quotas
    seed: int = 0
    out_dir: Path = field(default_factory=lambda: Path("hjm-out"))
    fmt: str = "csv"
    verbosity: int = 0
    jobs: int = 1
    resume: bool = False

    def provenance(self, generator: str, **extra) -> dict:
        out = {"generator": generator, "seed": self.seed, "version": __version__}
        out.update(extra)
        return out


def _out_dir(args) -> Path:
    out = getattr(args, "out", None) or os.environ.get("HJM_DATA_DIR") or "hjm-out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write(path: Path, text: str, verbosity: int = 0):
    path.write_text(text)
    if verbosity:
        print(f"wrote {path}")


def _write_csv(path: Path, header: list[str], rows: list[list], seed: int,
               verbosity: int = 0):
    lines = [f"# seed={seed}", ",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    _write(path, "\n".join(lines) + "\n", verbosity)


def _config(args, command: str) -> RunConfig:
    return RunConfig(
        command=command,
        n=getattr(args, "n", None),
        k=getattr(args, "k", 3),
        predicate=getattr(args, "predicate", "moser"),
        shard=getattr(args, "shard", None),
        budget=getattr(args, "budget", None),
        seed=getattr(args, "seed", 0),
        out_dir=_out_dir(args),
        fmt=getattr(args, "format", "csv"),
        verbosity=getattr(args, "verbose", 0),
        jobs=getattr(args, "jobs", 1),
        resume=getattr(args, "resume", False),
    )


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    code = EXIT_OK
    for name in args.certificates:
        try:
            cert = Certificate.from_json(Path(name).read_text())
        except Exception as exc:  # malformed file
            print(f"{name}: malformed ({exc})")
            code = EXIT_MISMATCH
            continue
        report = verify_certificate(cert)
        if report.ok:
            print(f"{name}: PASS ({cert.kind}, n={cert.n}, k={cert.k})")
        else:
            print(f"{name}: FAIL")
            for f in report.failures:
                print(f"  - {f}")
            code = EXIT_MISMATCH
    return code


# ---------------------------------------------------------------------------
# search


def cmd_search(args) -> int:
    cfg = _config(args, f"search {args.what}")
    n, k, pred = args.n, args.k, args.predicate
    if args.what == "max":
        value, witnesses = search.max_set(n, k, pred)
        print(f"max {pred} size in [{k}]^{n}: {value} ({len(witnesses)} witnesses)")
        cert = make_certificate(
            witnesses[0], pred, provenance=cfg.provenance("search-max", n=n)
        )
        _write(cfg.out_dir / f"max_{pred}_n{n}.cert.json", cert.to_json(),
               cfg.verbosity)
        return EXIT_OK
    if args.what == "enumerate":
        count = search.enumerate_all(n, k, pred)
        print(f"{pred} subsets of [{k}]^{n}: {count}")
        _write_csv(cfg.out_dir / f"count_{pred}_n{n}.csv", ["n", "predicate", "count"],
                   [[n, pred, count]], cfg.seed, cfg.verbosity)
        return EXIT_OK
    if args.what == "pareto":
        frontier = search.pareto(n, k, pred) if n <= 3 else None
        if frontier is None:
            raise SystemExit("use pareto4 for the sharded 4D frontier")
        rows = []
        for s, w in frontier.entries:
            wname = f"frontier_{pred}_n{n}_" + "_".join(map(str, s)) + ".cert.json"
            cert = make_certificate(
                PointSet(n, 3, w), pred,
                provenance=cfg.provenance("search-pareto", n=n),
            )
            _write(cfg.out_dir / wname, cert.to_json())
            rows.append(list(s) + [wname])
        header = [f"a{i}" for i in range(n + 1)] + ["witness_file"]
        _write_csv(cfg.out_dir / f"pareto_{pred}_n{n}.csv", header, rows, cfg.seed,
                   cfg.verbosity)
        from .report import frontier_figure

        frontier_figure(frontier.vectors(),
                        cfg.out_dir / f"pareto_{pred}_n{n}.png",
                        meta={"seed": cfg.seed})
        print(f"frontier size {len(frontier.entries)}:")
        for s, _ in frontier.entries:
            print("  ", s)
        return EXIT_OK
    if args.what == "count-stats":
        target = tuple(int(x) for x in args.stats.split(","))
        count = search.count_by_statistics(n, target)
        print(f"sets with statistics {target}: {count}")
        _write_csv(cfg.out_dir / ("countstats_" + "_".join(map(str, target)) + ".csv"),
                   ["n"] + [f"a{i}" for i in range(len(target))] + ["count"],
                   [[n] + list(target) + [count]], cfg.seed, cfg.verbosity)
        return EXIT_OK
    if args.what == "heuristic":
        steps = args.budget_steps
        if steps is None:
            steps = int((args.budget or 1.0) * STEPS_PER_SECOND)
        A = search.heuristic_max(n, k, pred, budget_steps=steps, seed=args.seed)
        print(f"heuristic {pred} set in [{k}]^{n}: {A.size} points "
              f"(steps={steps}, seed={args.seed}; no optimality claim)")
        cert = make_certificate(
            A, pred,
            provenance=cfg.provenance("search-heuristic", n=n, steps=steps),
        )
        _write(cfg.out_dir / f"heuristic_{pred}_n{n}_s{args.seed}.cert.json",
               cert.to_json(), cfg.verbosity)
        return EXIT_OK
    raise SystemExit(f"unknown search action {args.what!r}")


# ---------------------------------------------------------------------------
# pareto4


def _run_shard(payload):
    shard, out_dir = payload
    path = Path(out_dir) / f"pareto4_shard{shard:04d}.checkpoint.json"
    run = fourd.shard_frontier(shard, checkpoint_path=path)
    return shard, run.frontier, run.pairs, run.memo_hits, run.memo_misses


def cmd_pareto4(args) -> int:
    cfg = _config(args, "pareto4")
    if args.shard is not None:
        run = fourd.shard_frontier(
            args.shard,
            checkpoint_path=cfg.out_dir / f"pareto4_shard{args.shard:04d}.checkpoint.json",
        )
        print(f"shard {args.shard}: |corner|={bin(run.pattern).count('1')} "
              f"frontier={len(run.frontier)} pairs={run.pairs} "
              f"memo {run.memo_hits}h/{run.memo_misses}m {run.seconds:.2f}s")
        rows = [list(s) + [w] for s, w in run.frontier]
        _write_csv(cfg.out_dir / f"pareto4_shard{args.shard:04d}.csv",
                   [f"a{i}" for i in range(5)] + ["witness_bits"], rows, cfg.seed,
                   cfg.verbosity)
        return EXIT_OK
    # full run over every shard, resumable
    shards = list(range(len(fourd.corner_shards())))
    done: dict[int, list] = {}
    if args.resume:
        for shard in shards:
            path = cfg.out_dir / f"pareto4_shard{shard:04d}.checkpoint.json"
            if path.exists():
                ck = search.SearchCheckpoint.from_json(path.read_text())
                if ck.completed:
                    done[shard] = [(tuple(s), w) for s, w in ck.frontier]
    todo = [s for s in shards if s not in done]
    t0 = time.time()
    budget = args.budget
    exceeded = False
    if cfg.jobs > 1 and todo:
        import multiprocessing as mp

        with mp.Pool(cfg.jobs) as pool:
            for shard, frontier, *_ in pool.imap_unordered(
                _run_shard, [(s, str(cfg.out_dir)) for s in todo]
            ):
                done[shard] = frontier
                if budget and time.time() - t0 > budget:
                    exceeded = True
                    pool.terminate()
                    break
    else:
        for shard in todo:
            _, frontier, *_ = _run_shard((shard, str(cfg.out_dir)))
            done[shard] = frontier
            if budget and time.time() - t0 > budget:
                exceeded = bool(set(shards) - set(done))
                break
    frontiers = [search.ParetoFrontier(4, rows) for _, rows in sorted(done.items())]
    merged = search.merge_frontiers(frontiers, 4)
    rows = [list(s) + [w] for s, w in merged.entries]
    _write_csv(cfg.out_dir / "pareto4_merged.csv",
               [f"a{i}" for i in range(5)] + ["witness_bits"], rows, cfg.seed,
               cfg.verbosity)
    complete = len(done) == len(shards)
    print(f"shards completed: {len(done)}/{len(shards)}; merged frontier "
          f"{len(merged.entries)} entries")
    if complete:
        problems = fourd.check_stat_clauses(merged.vectors())
        if problems:
            print("structural clause violations:")
            for p in problems:
                print("  -", p)
            return EXIT_MISMATCH
        from .tables import pareto4_reference

        ref = set(pareto4_reference())
        got = set(merged.vectors())
        for v in sorted(got - ref):
            print(f"note: frontier entry {v} not in the reference table")
        for v in sorted(ref - got):
            print(f"note: reference row {v} not reproduced")
    return EXIT_BUDGET if exceeded else EXIT_OK


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> int:
    cfg = _config(args, f"construct {args.name}")
    name = args.name
    params = args.params
    arts: list[tuple[str, Certificate]] = []

    def point_cert(A, kind, label, **extra):
        arts.append((
            label,
            make_certificate(A, kind, provenance=cfg.provenance(name, **extra)),
        ))

    if name == "dhj-cells":
        n = int(params[0])
        B = construct.dhj_cells(n)
        arts.append((f"dhj_cells_n{n}",
                     make_simplex_certificate(B, n, 3, "fujimura",
                                              provenance=cfg.provenance(name))))
        print(f"triangle-free cells for n={n}: weight {construct.simplex_weight(B)}")
    elif name == "medium":
        m = int(params[0])
        B = construct.medium_construction(m)
        d = construct.medium_density(m)
        arts.append((f"medium_n{3*m}",
                     make_simplex_certificate(B, 3 * m, 3, "fujimura",
                                              provenance=cfg.provenance(name))))
        print(f"n={3*m}: weight {construct.simplex_weight(B)}, density {d} "
              f"(~{float(d):.4f})")
    elif name == "e-sets":
        for label, A in construct.e_sets().items():
            point_cert(A, "line-free", f"eset_{label}")
        print("wrote E0, E1, E2 (52 points) and X (50 points)")
    elif name == "xyz":
        point_cert(construct.xyz_set(), "line-free", "xyz_n3")
        print("wrote the 18-point set")
    elif name == "semisphere":
        n = int(params[0])
        i = int(params[1]) if len(params) > 1 else construct.best_semisphere(n)[0]
        A = construct.semisphere_lb(n, i)
        point_cert(A, "moser", f"semisphere_n{n}_i{i}", i=i)
        print(f"semisphere n={n}, i={i}: {A.size} points")
    elif name == "sphere":
        n, i = int(params[0]), int(params[1])
        A = construct.sphere_lb(n, i)
        point_cert(A, "moser", f"sphere_n{n}_i{i}", i=i)
        print(f"sphere n={n}, i={i}: {A.size} points")
    elif name == "shell":
        n, i = int(params[0]), int(params[1])
        A = construct.sphere_shell_lb(n, i)
        point_cert(A, "moser", f"shell_n{n}_i{i}", i=i)
        print(f"shell n={n}, i={i}: {A.size} points")
    elif name == "coding":
        n = int(params[0])
        r = construct.coding_bound(n, want_witness=True)
        print(f"coding bound n={n}: {r['bound']} at k={r['k']}")
        if r.get("witness") is not None:
            point_cert(r["witness"], "moser", f"coding_n{n}", k=r["k"])
        else:
            print("no explicit code witness at this size")
    elif name == "moser-b":
        n = int(params[0])
        if n == 5:
            cells, extras = construct.N5_CELLS, construct.N5_EXTRAS
        elif n == 10:
            cells, extras = construct.N10_CELLS, construct.N10_EXTRAS
        else:
            raise SystemExit("bundled augmented sets exist for n = 5 and n = 10")
        A = construct.augment_ab(cells, extras, n)
        arts.append((f"moserb_n{n}",
                     make_simplex_certificate(cells, n, 3, "moser-b", extras=extras,
                                              provenance=cfg.provenance(name))))
        print(f"augmented cell union for n={n}: {A.size} points")
    elif name == "behrend":
        N, k = int(params[0]), int(params[1])
        S = construct.behrend_set(N, k)
        print(f"progression-free subset of [{N}] (k={k}): {len(S)} elements")
        _write_csv(cfg.out_dir / f"behrend_{N}_{k}.csv", ["value"],
                   [[v] for v in sorted(S)], cfg.seed, cfg.verbosity)
    elif name == "circulant":
        n, k = int(params[0]), int(params[1])
        B = construct.circulant_construction(n, k)
        arts.append((f"circulant_n{n}_k{k}",
                     make_simplex_certificate(B, n, k, "fujimura",
                                              provenance=cfg.provenance(name))))
        print(f"circulant cells for n={n}, k={k}: {len(B)} "
              f"(weight {construct.simplex_weight(B)})")
    elif name == "good-set":
        t = params[0]
        A = construct.good_set(*(int(c) for c in t))
        point_cert(A, "moser", f"goodset_{t}", type=t)
        print(f"good set of type {t}: statistics "
              f"{verify.statistics(A).entries}")
    elif name == "higher-k":
        n, k = int(params[0]), int(params[1])
        A = construct.higher_k(n, k)
        arts.append((f"higherk_n{n}_k{k}",
                     make_certificate(A, "moser",
                                      provenance=cfg.provenance(name, k=k))))
        print(f"alphabet-{k} set for n={n}: {A.size} points")
    else:
        raise SystemExit(f"unknown construction {name!r}")
    for label, cert in arts:
        _write(cfg.out_dir / f"{label}.cert.json", cert.to_json(), cfg.verbosity)
    return EXIT_OK


# ---------------------------------------------------------------------------
# optimize


def cmd_optimize(args) -> int:
    cfg = _config(args, f"optimize {args.what}")
    if args.what in ("fujimura", "moser-b"):
        n = args.n
        budget = None
        if args.budget is not None:
            budget = int(args.budget * NODES_PER_SECOND)
        if args.what == "fujimura":
            res = optimize.max_fujimura(n, node_budget=budget)
            kind = "fujimura"
        else:
            res = optimize.max_moser_b(n, node_budget=budget)
            kind = "moser-b"
        claim = {"bound": res.value, "exact": res.exact}
        if not res.exact:
            claim["bound_gap"] = res.bound_gap
        cert = make_simplex_certificate(
            res.cells, n, 3, kind, claim=claim,
            provenance=cfg.provenance(f"optimize-{kind}", nodes=res.nodes),
        )
        _write(cfg.out_dir / f"{kind}_n{n}.cert.json", cert.to_json(), cfg.verbosity)
        status = "exact" if res.exact else f"best known (gap <= {res.bound_gap})"
        print(f"{kind} n={n}: {res.value} ({status}, {res.nodes} nodes)")
        return EXIT_OK if res.exact else EXIT_BUDGET
    if args.what == "props-bound":
        value = optimize.props_upper_bound(args.n)
        print(f"diagonal relaxation bound n={args.n}: {value}")
        return EXIT_OK
    if args.what == "lp":
        from .tables import pareto4_reference

        if args.frontier_csv:
            rows = []
            for line in Path(args.frontier_csv).read_text().splitlines():
                if line.startswith("#") or line.startswith("a0"):
                    continue
                parts = line.split(",")
                rows.append(tuple(int(x) for x in parts[:5]))
            points = rows
            source = args.frontier_csv
        else:
            points = pareto4_reference()
            source = "reference-table"
        objective = [4, 6, 10, 20, 60]
        cons = [
            ([0, 0, 1, 0, 0], 12),
            ([0, 0, 0, 1, 0], 4),
            ([0, 0, 0, 0, 1], Fraction(1, 2)),
            ([0, 0, Fraction(7, 24), Fraction(3, 8), 3], 6),
        ]
        r = optimize.lp_max(points, objective, cons, hull=args.hull)
        print(f"LP maximum over {source}: {r['value']} "
              f"(~{float(r['value']):.4f}) at {tuple(str(x) for x in r['witness'])}")
        import json

        _write(cfg.out_dir / "lp_bound.json", json.dumps({
            "value": str(r["value"]),
            "witness": [str(x) for x in r["witness"]],
            "source": str(source),
            "hull": args.hull,
            "seed": cfg.seed,
        }, indent=2, sort_keys=True) + "\n", cfg.verbosity)
        return EXIT_OK
    raise SystemExit(f"unknown optimize action {args.what!r}")


# ---------------------------------------------------------------------------
# bounds table


def cmd_bounds(args) -> int:
    cfg = _config(args, "bounds table")
    kind = args.kind
    rows = []
    budget = int(args.budget * NODES_PER_SECOND) if args.budget else None
    for n in range(1, args.max_n + 1):
        if kind == "dhj":
            res = optimize.max_fujimura(n, node_budget=budget)
            witness_file = f"fujimura_n{n}.cert.json"
            cert = make_simplex_certificate(
                res.cells, n, 3, "fujimura",
                claim={"bound": res.value, "exact": res.exact},
                provenance=cfg.provenance("bounds-table"),
            )
            _write(cfg.out_dir / witness_file, cert.to_json())
            rows.append({"n": n, "bound": res.value, "exact": res.exact,
                         "witness": witness_file})
        elif kind == "moser":
            res = optimize.max_moser_b(n, node_budget=budget)
            witness_file = f"moser-b_n{n}.cert.json"
            cert = make_simplex_certificate(
                res.cells, n, 3, "moser-b",
                claim={"bound": res.value, "exact": res.exact},
                provenance=cfg.provenance("bounds-table"),
            )
            _write(cfg.out_dir / witness_file, cert.to_json())
            rows.append({"n": n, "bound": res.value, "exact": res.exact,
                         "witness": witness_file})
        elif kind == "coding":
            if n < 4:
                continue
            try:
                r = construct.coding_bound(n)
            except (KeyError, ValueError):
                continue
            rows.append({"n": n, "bound": r["bound"], "exact": True,
                         "witness": f"k={r['k']}"})
        elif kind == "semisphere":
            if n < 2:
                continue
            i, size = construct.best_semisphere(n)
            rows.append({"n": n, "bound": size, "exact": True, "witness": f"i={i}"})
        else:
            raise SystemExit(f"unknown bounds kind {kind!r}")
    _write_csv(cfg.out_dir / f"bounds_{kind}.csv",
               ["n", "bound", "exact", "witness"],
               [[r["n"], r["bound"], r["exact"], r["witness"]] for r in rows],
               cfg.seed, cfg.verbosity)
    from .report import bounds_figure

    bounds_figure(rows, kind, cfg.out_dir / f"bounds_{kind}.png",
                  meta={"seed": cfg.seed})
    print(",".join(str(r["bound"]) for r in rows))
    if any(not r["exact"] for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# orbits


def cmd_orbits(args) -> int:
    cfg = _config(args, "orbits classify")
    n, pred = args.n, args.predicate
    from .symmetry import classify_orbits

    if n > 3:
        raise SystemExit("orbit classification is exhaustive only for n <= 3")
    if n == 3:
        masks = search.cube3_tables(pred).masks
    else:
        import numpy as np

        masks = np.array(search.masks_upto2(n, pred), dtype=np.int64)
    census = classify_orbits(masks, n, 3, args.group)
    if not census.check():
        print("internal census inconsistency")
        return EXIT_MISMATCH
    print(f"{census.total} sets in {census.classes} classes")
    decomposition = census.decomposition()
    print(" + ".join(f"{m}x{s}" for s, m in decomposition))
    _write_csv(cfg.out_dir / f"orbits_{pred}_n{n}.csv",
               ["orbit_size", "multiplicity"],
               [[s, m] for s, m in decomposition], cfg.seed, cfg.verbosity)
    from .report import census_figure

    census_figure(census.histogram, cfg.out_dir / f"orbits_{pred}_n{n}.png",
                  meta={"seed": cfg.seed})
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hjm",
        description="Exact searches, optimisers and certificates for "
                    "line-free and geometric-line-free sets in [k]^n.",
    )
    p.add_argument("--version", action="version", version=f"hjm {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_required=True):
        sp.add_argument("-n", type=int, required=n_required)
        sp.add_argument("-k", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("-v", "--verbose", action="count", default=0)

    sp = sub.add_parser("verify", help="re-check certificate files")
    sp.add_argument("certificates", nargs="+")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", help="exhaustive and heuristic searches")
    sp.add_argument("what", choices=("max", "enumerate", "pareto", "count-stats",
                                     "heuristic"))
    common(sp)
    sp.add_argument("--predicate", choices=search.PREDICATES, default="moser")
    sp.add_argument("--stats", help="target statistics a0,a1,... for count-stats")
    sp.add_argument("--budget", type=float, help="seconds (mapped to a step quota)")
    sp.add_argument("--budget-steps", type=int)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("pareto4", help="sharded 4D frontier engine")
    sp.add_argument("--shard", type=int)
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget", type=float)
    sp.add_argument("--resume", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("-v", "--verbose", action="count", default=0)
    sp.set_defaults(func=cmd_pareto4)

    sp = sub.add_parser("construct", help="lower-bound generators")
    sp.add_argument("name")
    sp.add_argument("params", nargs="*")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("-v", "--verbose", action="count", default=0)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("optimize", help="exact simplex-grid optimisers and the LP")
    sp.add_argument("what", choices=("fujimura", "moser-b", "lp", "props-bound"))
    sp.add_argument("-n", type=int)
    sp.add_argument("--budget", type=float, help="seconds (mapped to a node quota)")
    sp.add_argument("--hull", choices=("convex", "dominated"), default="dominated")
    sp.add_argument("--frontier-csv", help="use a merged 4D frontier as LP input")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("-v", "--verbose", action="count", default=0)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("bounds", help="bound tables with charts")
    sp.add_argument("what", choices=("table",))
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--kind", choices=("dhj", "moser", "coding", "semisphere"),
                    default="moser")
    sp.add_argument("--budget", type=float)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("-v", "--verbose", action="count", default=0)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("orbits", help="orbit census of exhaustive families")
    sp.add_argument("what", choices=("classify",))
    common(sp)
    sp.add_argument("--predicate", choices=("line-free", "moser"), default="moser")
    sp.add_argument("--group", choices=("combinatorial", "geometric"),
                    default="geometric")
    sp.set_defaults(func=cmd_orbits)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "pareto4" and args.shard is None and not args.all:
        parser.error("pareto4 needs --shard I or --all")
    if args.command == "search" and args.what == "count-stats" and not args.stats:
        parser.error("count-stats needs --stats a0,a1,...")
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
