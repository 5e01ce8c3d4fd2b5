"""Batch front-end: assemble a model from a JSON config, run the full
verification battery, and emit a deterministic report.

Subcommands:

* ``run`` / ``report``: run the battery, write JSON or text.
* ``check <name>``: run a single named check.
* ``ktheory <graph.json>``: K-theory of a discrete graph.
* ``snf <matrix.json>``: Smith normal form with transforms.
* ``converge <sequence.json>``: the boundary convergence oracle.

Exit status is non-zero exactly when a gating check fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .qphi import QPhi
from .boundary import (
    ApproachPointRule,
    BasePointTail,
    ConstantPointRule,
    ConstantTail,
    EscapingTail,
    EvPeriodic,
    HeadOnlyTail,
    SequenceDescription,
    converges,
    path_from_line,
    point_from_token,
)
from .graphs import (
    Arc,
    DiscreteGraph,
    OneVertexLoopGraph,
    build_model_graph,
    find_contracting_witness,
    orbit_plus,
    verify_contracting_witness,
)
from .groupoid import DRGroupoid, axiom_sample, principality_sample
from .ktheory import (
    DimBudget,
    KTheoryError,
    dim_bound,
    graph_ktheory,
    model_ktheory,
    snf,
    validate_matrix,
    z_factor_ktheory,
)
from .reports import PLUMBING, CheckRecord, Report
from .spaces import (
    CantorBackend,
    CantorBox,
    CircleBackend,
    CircleBox,
    FiniteBackend,
    FiniteBox,
    box_contains,
    eps_dense,
    finite_cyclic,
    freeness_check,
    golden_rotation,
    odometer,
    point_backend,
)


class ConfigError(ValueError):
    pass


DEFAULT_BOUNDS = {
    "isotropy_bound": 20,
    "samples": 500,
    "density_depth": 64,
    "witness_cap": 200,
    "axiom_trials": 1000,
}


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")


def parse_config(obj: dict) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError("config: expected a JSON object")
    cfg = {}
    z = obj.get("z_backend", "odometer")
    if z in ("odometer", "golden-rotation"):
        cfg["z_backend"] = z
    elif isinstance(z, dict) and z.get("kind") == "finite-cyclic":
        order = z.get("order")
        if not isinstance(order, int) or order < 1:
            raise ConfigError("config.z_backend.order: expected a positive integer")
        cfg["z_backend"] = ("finite-cyclic", order)
    else:
        raise ConfigError(
            "config.z_backend: expected 'odometer', 'golden-rotation' "
            "or {'kind': 'finite-cyclic', 'order': n}"
        )
    x = obj.get("x_backend", "point")
    if x in ("point", "cantor", "circle"):
        cfg["x_backend"] = x
    elif isinstance(x, dict) and x.get("kind") == "finite":
        size = x.get("size")
        if not isinstance(size, int) or size < 1:
            raise ConfigError("config.x_backend.size: expected a positive integer")
        cfg["x_backend"] = ("finite", size)
    else:
        raise ConfigError(
            "config.x_backend: expected 'point', 'cantor', 'circle' "
            "or {'kind': 'finite', 'size': n}"
        )
    seeds = obj.get("seeds", [7])
    if not isinstance(seeds, list) or not seeds or not all(isinstance(s, int) for s in seeds):
        raise ConfigError("config.seeds: expected a non-empty list of integers")
    cfg["seeds"] = seeds
    bounds = dict(DEFAULT_BOUNDS)
    for key, value in obj.get("bounds", {}).items():
        if key not in DEFAULT_BOUNDS:
            raise ConfigError(f"config.bounds.{key}: unknown bound")
        if not isinstance(value, int) or value < 1:
            raise ConfigError(f"config.bounds.{key}: expected a positive integer")
        bounds[key] = value
    cfg["bounds"] = bounds
    return cfg


def build_system(cfg):
    z = cfg["z_backend"]
    if z == "odometer":
        return odometer()
    if z == "golden-rotation":
        return golden_rotation()
    return finite_cyclic(z[1])


def build_x_backend(cfg):
    x = cfg["x_backend"]
    if x == "point":
        return point_backend()
    if x == "cantor":
        return CantorBackend()
    if x == "circle":
        return CircleBackend()
    return FiniteBackend(x[1])


def _config_echo(cfg) -> dict:
    z = cfg["z_backend"]
    x = cfg["x_backend"]
    return {
        "z_backend": z if isinstance(z, str) else {"kind": z[0], "order": z[1]},
        "x_backend": x if isinstance(x, str) else {"kind": x[0], "size": x[1]},
        "seeds": cfg["seeds"],
        "bounds": cfg["bounds"],
    }


# ---------------------------------------------------------------------------
# the battery
# ---------------------------------------------------------------------------


def _density_resolution(x_backend, depth: int):
    """(eps, depth) for the vertex-space density check: full resolution
    over discrete X, coarser when the dense sequence needs a long run-up
    to fill the X factor."""
    if isinstance(x_backend, FiniteBackend) and x_backend.size <= depth:
        return Fraction(1, depth), depth
    if isinstance(x_backend, CantorBackend):
        return Fraction(1, 4), depth
    if isinstance(x_backend, CircleBackend):
        return Fraction(1, 4), min(depth, 16)
    return Fraction(1, depth), depth


def check_backends(cfg, graph, report):
    system = graph.z_system
    rng = random.Random(cfg["seeds"][0])
    samples = 50
    ok = True
    for _ in range(samples):
        p = system.backend.random_point(rng)
        if system.backward(system.forward(p)) != p or system.forward(system.backward(p)) != p:
            ok = False
    report.add(
        CheckRecord(
            "backends",
            PLUMBING,
            {"samples": samples},
            ok,
            {"system": system.name},
            cfg["seeds"][0],
        )
    )


def check_minimality(cfg, graph, report):
    depth = cfg["bounds"]["density_depth"]
    eps, depth = _density_resolution(graph.x_backend, depth)
    ok = True
    tried = 0
    for seed in cfg["seeds"]:
        rng = random.Random(seed)
        for _ in range(10):
            v = graph.vertex_backend.random_point(rng)
            pts = orbit_plus(graph, v, depth)
            tried += 1
            if not eps_dense(graph.vertex_backend, pts, eps):
                ok = False
    report.add(
        CheckRecord(
            "minimality",
            "forward orbits in the graph are eps-dense in the vertex space",
            {"eps": str(eps), "depth": depth, "base_points": tried},
            ok,
            {},
            cfg["seeds"][0],
        )
    )


def check_freeness(cfg, graph, report):
    system = graph.z_system
    bound = cfg["bounds"]["isotropy_bound"]
    periods = []
    for seed in cfg["seeds"]:
        rng = random.Random(seed)
        for _ in range(20):
            z = system.backend.random_point(rng)
            periods.extend(freeness_check(system, z, bound))
    report.add(
        CheckRecord(
            "freeness",
            "the Z factor acts freely: no sampled point has a period",
            {"bound": bound, "points": 20 * len(cfg["seeds"])},
            not periods,
            {"periods_found": sorted(set(periods))[:8]},
            cfg["seeds"][0],
        )
    )


def check_singular(cfg, graph, report):
    """Every vertex is singular: each basic open vertex box pulls back to
    edges with unboundedly many indices, so no preimage is compact."""
    ok = True
    witnesses = {}
    for b in range(4):
        xbox = graph.x_backend.basic_open(b % (graph.x_backend.basic_count or 4))
        hits = []
        m = 1
        while len(hits) < 3 and m < 10_000:
            if box_contains(xbox, graph.x_point(m)):
                hits.append(m)
            m += 1
        if len(hits) < 3:
            ok = False
        witnesses[f"box_{b}"] = hits
    report.add(
        CheckRecord(
            "singular",
            "no vertex is regular: edge indices into any basic open are unbounded",
            {"boxes": 4},
            ok,
            {"index_witnesses": witnesses},
        )
    )


def check_axioms(cfg, graph, report):
    trials = cfg["bounds"]["axiom_trials"]
    ok = True
    fails = []
    for seed in cfg["seeds"]:
        rep = axiom_sample(DRGroupoid(graph), trials, seed)
        if not rep.ok:
            ok = False
            fails.extend(rep.failures[:4])
    report.add(
        CheckRecord(
            "axioms",
            "sampled composable triples satisfy the groupoid laws",
            {"trials": trials, "seeds": cfg["seeds"]},
            ok,
            {"failures": fails[:8]},
            cfg["seeds"][0],
        )
    )


def _random_u_box(system, rng):
    if isinstance(system.backend, CircleBackend):
        start = QPhi(Fraction(rng.randrange(32), 32))
        length = QPhi(Fraction(rng.choice([4, 6, 8]), 32))
        return CircleBox((Arc(start, length),))
    if isinstance(system.backend, CantorBackend):
        depth = rng.randrange(1, 4)
        word = tuple(rng.randrange(2) for _ in range(depth))
        return CantorBox((word,))
    if isinstance(system.backend, FiniteBackend):
        n = system.backend.size
        keep = frozenset(i for i in range(n) if rng.randrange(2)) or frozenset({0})
        if len(keep) == n:
            keep = frozenset(list(keep)[:-1]) or frozenset({0})
        return FiniteBox(keep, n)
    raise ConfigError(f"no contracting sampler for {system.backend!r}")


def _random_vx_box(graph, rng):
    backend = graph.x_backend
    x1 = graph.x_point(1)
    if isinstance(backend, FiniteBackend):
        return backend.full_box()
    if isinstance(backend, CantorBackend):
        depth = rng.randrange(0, 3)
        return CantorBox((x1.bits(depth),))
    if isinstance(backend, CircleBackend):
        length = QPhi(Fraction(1, rng.choice([4, 8])))
        start = (x1.value - length / 2).mod1()
        return CircleBox((Arc(start, length),))
    raise ConfigError(f"no contracting sampler for {backend!r}")


def check_contracting(cfg, graph, report):
    cap = cfg["bounds"]["witness_cap"]
    ok = True
    ns = []
    details = []
    for seed in cfg["seeds"]:
        rng = random.Random(seed)
        for _ in range(3):
            u = _random_u_box(graph.z_system, rng)
            vx = _random_vx_box(graph, rng)
            try:
                witness = find_contracting_witness(graph, u, vx, cap)
            except Exception as exc:
                ok = False
                details.append(str(exc))
                continue
            ns.append(witness.n)
            verdict = verify_contracting_witness(witness)
            if not verdict.ok:
                ok = False
                details.extend(verdict.details)
    report.add(
        CheckRecord(
            "contracting",
            "random vertex boxes admit verified contracting witnesses",
            {"pairs_per_seed": 3, "cap": cap},
            ok,
            {"translate_counts": ns[:12], "details": details[:6]},
            cfg["seeds"][0],
        )
    )


def check_principality(cfg, graph, report):
    samples = cfg["bounds"]["samples"]
    bound = cfg["bounds"]["isotropy_bound"]
    ok = True
    found = []
    for seed in cfg["seeds"]:
        rep = principality_sample(graph, samples, bound, seed)
        if not rep.ok:
            ok = False
            found.extend(
                f"seed {seed}: isotropy pairs {pairs}" for _mu, pairs in rep.isotropy[:2]
            )
            if not rep.reductions_ok:
                found.append(f"seed {seed}: the freeness reduction fails")
    report.add(
        CheckRecord(
            "principality",
            "no sampled boundary path has nontrivial isotropy, and the exact "
            "reduction to freeness of the base dynamics passes",
            {"samples": samples, "bound": bound, "seeds": cfg["seeds"]},
            ok,
            {"violations": found[:8]},
            cfg["seeds"][0],
        )
    )


def check_ktheory(cfg, graph, report):
    try:
        zmeta = z_factor_ktheory(graph.z_system)
        k0, k1 = model_ktheory(graph.x_backend, zmeta)
        ok = True
        evidence = {"K0": str(k0), "K1": str(k1), "provenance": "declared backend metadata"}
    except KTheoryError as exc:
        ok = False
        evidence = {"error": str(exc)}
    report.add(
        CheckRecord(
            "ktheory",
            "the algebra of the model graph has the declared K-theory of the X factor, "
            "unit class preserved for compact X",
            {},
            ok,
            evidence,
        )
    )


def check_dimension(cfg, graph, report):
    x_dim = graph.x_backend.dim
    x_is_point = graph.x_is_point()
    rows = {}
    for dz in (2, 3):
        res = dim_bound(DimBudget(dz, x_dim, x_is_point=x_is_point, dps_declared=True))
        rows[f"dim_z_{dz}"] = {
            "bound": res.bound,
            "refined": res.refined,
        }
    report.add(
        CheckRecord(
            "dimension",
            "the boundary-space dimension bound 2*dimZ + dimX + 1 (exact value dimZ "
            "over a one-point X)",
            {"dim_x": x_dim, "x_is_point": x_is_point},
            True,
            rows,
        )
    )


def add_classification_note(report):
    report.add(
        CheckRecord(
            "classification",
            "identifying the algebra from its K-theory uses the classification of "
            "simple purely infinite algebras: cited, not mechanized here",
            {},
            True,
            {},
            informational=True,
        )
    )


CHECKS = {
    "backends": check_backends,
    "minimality": check_minimality,
    "freeness": check_freeness,
    "singular": check_singular,
    "axioms": check_axioms,
    "contracting": check_contracting,
    "principality": check_principality,
    "ktheory": check_ktheory,
    "dimension": check_dimension,
}


def run_battery(cfg, only: str | None = None) -> Report:
    graph = build_model_graph(build_system(cfg), build_x_backend(cfg))
    report = Report(_config_echo(cfg))
    names = [only] if only else list(CHECKS)
    for name in names:
        CHECKS[name](cfg, graph, report)
    if only is None:
        add_classification_note(report)
    return report


# ---------------------------------------------------------------------------
# sequence descriptions from JSON
# ---------------------------------------------------------------------------


def _point_rule_from_obj(obj) -> ConstantPointRule | ApproachPointRule:
    kind = obj.get("kind")
    if kind == "constant":
        return ConstantPointRule(point_from_token(obj["point"]))
    if kind == "approach":
        return ApproachPointRule(point_from_token(obj["point"]))
    raise ConfigError(f"sequence.z_rule.kind: unknown kind {kind!r}")


def _ev_from_str(s: str) -> EvPeriodic:
    head, _, cycle = s.partition("|")
    return EvPeriodic(
        tuple(int(v) for v in head.split(",") if v),
        tuple(int(v) for v in cycle.split(",") if v),
    )


def parse_sequence_doc(obj) -> tuple[SequenceDescription, object]:
    if not isinstance(obj, dict):
        raise ConfigError("sequence: expected a JSON object")
    model = obj.get("model", {})
    cfg = parse_config(
        {"z_backend": model.get("z_backend", "odometer"), "x_backend": model.get("x_backend", "point")}
    )
    graph = build_model_graph(build_system(cfg), build_x_backend(cfg))
    head = tuple(path_from_line(line, graph) for line in obj.get("head", []))
    tail_obj = obj.get("tail")
    if not isinstance(tail_obj, dict) or "kind" not in tail_obj:
        raise ConfigError("sequence.tail: expected an object with a 'kind'")
    kind = tail_obj["kind"]
    if kind == "constant":
        tail = ConstantTail(path_from_line(tail_obj["path"], graph))
    elif kind == "escaping":
        tail = EscapingTail(
            path_from_line(tail_obj["prefix"], graph),
            point_from_token(tail_obj["x_last"]),
            tail_obj.get("x_box", 0),
            tail_obj.get("rep_start", 0),
        )
    elif kind == "base-point":
        idx_raw = tail_obj["idx"]
        idx = _ev_from_str(idx_raw) if "|" in idx_raw else tuple(int(v) for v in idx_raw.split(",") if v)
        x_last = point_from_token(tail_obj["x_last"]) if "x_last" in tail_obj else None
        tail = BasePointTail(graph, _point_rule_from_obj(tail_obj["z_rule"]), idx, x_last)
    elif kind == "head-only":
        tail = HeadOnlyTail()
    else:
        raise ConfigError(f"sequence.tail.kind: unknown kind {kind!r}")
    if "limit" not in obj:
        raise ConfigError("sequence.limit: missing candidate limit path")
    limit = path_from_line(obj["limit"], graph)
    return SequenceDescription(head, tail), limit


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(args) -> dict:
    obj = load_json(args.config) if args.config else {}
    cfg = parse_config(obj)
    if args.seed is not None:
        cfg["seeds"] = [args.seed]
    if args.samples is not None:
        cfg["bounds"]["samples"] = args.samples
    if args.bound is not None:
        cfg["bounds"]["isotropy_bound"] = args.bound
    return cfg


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a JSON config")
    common.add_argument("--seed", type=int, help="replace the config seed list")
    common.add_argument("--samples", type=int, help="override the sample count")
    common.add_argument("--bound", type=int, help="override the isotropy bound")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", help="write the report to a file")
    parser = argparse.ArgumentParser(
        prog="groupoidlab",
        description="exact verification battery for groupoid models of graph algebras",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("run", help="run the full battery (default)", parents=[common])
    sub.add_parser("report", help="alias for run", parents=[common])
    p_check = sub.add_parser("check", help="run a single check", parents=[common])
    p_check.add_argument("name")
    p_kt = sub.add_parser("ktheory", help="K-theory of a discrete graph from JSON", parents=[common])
    p_kt.add_argument("graph")
    p_snf = sub.add_parser("snf", help="Smith normal form of an integer matrix from JSON", parents=[common])
    p_snf.add_argument("matrix")
    p_conv = sub.add_parser(
        "converge", help="run the convergence oracle on a sequence document", parents=[common]
    )
    p_conv.add_argument("sequence")
    args = parser.parse_args(argv)

    try:
        if args.command in (None, "run", "report"):
            cfg = _load_config(args)
            report = run_battery(cfg)
            _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
            return 0 if report.overall else 1
        if args.command == "check":
            if args.name not in CHECKS:
                sys.stderr.write(
                    f"unknown check {args.name!r}; available: {', '.join(sorted(CHECKS))}\n"
                )
                return 2
            cfg = _load_config(args)
            report = run_battery(cfg, only=args.name)
            _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
            return 0 if report.overall else 1
        if args.command == "ktheory":
            obj = load_json(args.graph)
            graph = discrete_graph_from_obj(obj)
            k0, k1 = graph_ktheory(graph)
            out = {
                "K0": {"rank": k0.rank, "torsion": list(k0.torsion),
                       "unit": list(k0.unit_class) if k0.unit_class is not None else None},
                "K1": {"rank": k1.rank, "torsion": list(k1.torsion), "unit": None},
            }
            _emit(json.dumps(out, sort_keys=True, indent=2) + "\n", args.out)
            return 0
        if args.command == "snf":
            entries = load_json(args.matrix)
            if isinstance(entries, dict):
                entries = entries.get("entries")
            matrix = validate_matrix(entries)
            d, p, q = snf(matrix)
            _emit(json.dumps({"D": d, "P": p, "Q": q}, sort_keys=True, indent=2) + "\n", args.out)
            return 0
        if args.command == "converge":
            desc, limit = parse_sequence_doc(load_json(args.sequence))
            rep = converges(desc, limit)
            out = {
                "ranges": rep.ranges,
                "prefixes": rep.prefixes,
                "escape": rep.escape,
                "verdict": rep.verdict,
                "notes": list(rep.notes),
            }
            _emit(json.dumps(out, sort_keys=True, indent=2) + "\n", args.out)
            return 0
    except (ConfigError, KTheoryError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


def discrete_graph_from_obj(obj) -> DiscreteGraph | OneVertexLoopGraph:
    if not isinstance(obj, dict):
        raise ConfigError("graph: expected a JSON object")
    if obj.get("kind") == "one-vertex-loops":
        return OneVertexLoopGraph()
    vertices = obj.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ConfigError("graph.vertices: expected a list of strings")
    edges_raw = obj.get("edges", [])
    edges = []
    for i, e in enumerate(edges_raw):
        if not isinstance(e, list) or len(e) != 3:
            raise ConfigError(f"graph.edges[{i}]: expected [source, target, label]")
        edges.append(tuple(e))
    singular = obj.get("singular", [])
    if not isinstance(singular, list):
        raise ConfigError("graph.singular: expected a list of vertex names")
    try:
        return DiscreteGraph(vertices, edges, singular)
    except Exception as exc:
        raise ConfigError(f"graph: {exc}")


if __name__ == "__main__":
    raise SystemExit(main())
