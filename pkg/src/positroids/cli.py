"""Command-line surface.

Subcommands: necklace | positroid | plabic | seeds | verify | sample.  Every
command takes a permutation spec, either cycle notation with an optional
fixed-point color suffix ("(135)(264)", "id:+,-,+") or the JSON encoding
{"image": [...], "colors": {...}}.  All sampling is driven by --rng-seed, so
output is reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import cm, numeric
from .cluster import Seed, initial_seed, mutation_class
from .combinatorics import (
    DecoratedPermutation,
    DimensionError,
    SizeCapError,
    ValidationError,
    alignments,
    connected_components,
    necklace_from_permutation,
    positroid_members,
)
from .plabic import (
    ReducednessError,
    bridge_graph_from_permutation,
    face_labels,
    quiver_from_graph,
    trips,
)

USAGE_ERRORS = (
    ValidationError,
    DimensionError,
    SizeCapError,
    ReducednessError,
    numeric.ConstructionError,
)


@dataclass
class Config:
    n_cap: int = 12
    rng_seed: int = 0
    fmt: str = "table"
    limit: int | None = None
    points: int = 50
    out: str | None = None
    corrupt: bool = False


def parse_permutation(spec: str) -> DecoratedPermutation:
    spec = spec.strip()
    if spec.startswith("{"):
        try:
            return DecoratedPermutation.from_json(json.loads(spec))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValidationError(f"bad permutation JSON: {exc}") from exc
    return DecoratedPermutation.from_cycle_string(spec)


def emit(text: str, cfg: Config) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render_json(data) -> str:
    return json.dumps(data, indent=2)


def pretty_variable(seed: Seed, vid: int) -> str:
    label = seed.quiver.vertex(vid).label
    if label is not None:
        return f"D{label.label()}"
    return str(seed.variable(vid)).replace("[", "D").replace("]", "")


def cmd_necklace(sigma: DecoratedPermutation, cfg: Config) -> int:
    necklace = necklace_from_permutation(sigma)
    positroid = positroid_members(necklace, cfg.n_cap)
    labeling = face_labels(bridge_graph_from_permutation(sigma))
    data = {
        "permutation": sigma.to_json(),
        "n": sigma.n,
        "k": sigma.k,
        "necklace": necklace.to_json(),
        "positroid_size": len(positroid.members),
        "complement": sorted(s.to_json() for s in positroid.complement()),
        "components": len(connected_components(necklace)),
        "alignments": alignments(sigma),
        "faces": len(labeling.faces),
    }
    if cfg.fmt == "json":
        emit(render_json(data), cfg)
        return 0
    lines = [
        f"permutation   {sigma.to_cycle_string()}   (k={sigma.k}, n={sigma.n})",
        "necklace      " + " ".join(s.label() for s in necklace),
        f"positroid     {data['positroid_size']} members, "
        f"complement {{{', '.join(''.join(map(str, s)) for s in data['complement'])}}}",
        f"components    {data['components']}",
        f"alignments    {data['alignments']}",
        f"faces         {data['faces']}  (= k(n-k) - alignments + 1)",
    ]
    emit("\n".join(lines), cfg)
    return 0


def cmd_positroid(sigma: DecoratedPermutation, cfg: Config) -> int:
    necklace = necklace_from_permutation(sigma)
    import itertools

    n, k = sigma.n, sigma.k
    if n > cfg.n_cap:
        raise SizeCapError(f"n={n} exceeds --n-cap {cfg.n_cap}")
    from .combinatorics import KSet

    rows = []
    for combo in itertools.combinations(range(1, n + 1), k):
        lab = KSet(combo, n)
        in_p = cm.in_cm_b(lab, necklace)
        rows.append(
            {
                "set": lab.to_json(),
                "inP": in_p,
                "inCMB": in_p,
                "inGPB": cm.in_gp_b(lab, necklace),
            }
        )
    if cfg.fmt == "json":
        emit(render_json(rows), cfg)
        return 0
    lines = [f"{'set':<12} {'inP':<6} {'inCMB':<6} {'inGPB':<6}"]
    for row in rows:
        lab = "".join(map(str, row["set"])) if n <= 9 else ",".join(map(str, row["set"]))
        lines.append(
            f"{lab:<12} {str(row['inP']).lower():<6} "
            f"{str(row['inCMB']).lower():<6} {str(row['inGPB']).lower():<6}"
        )
    emit("\n".join(lines), cfg)
    return 0


def cmd_plabic(sigma: DecoratedPermutation, cfg: Config) -> int:
    graph = bridge_graph_from_permutation(sigma)
    if cfg.fmt == "json":
        emit(render_json(graph.to_json()), cfg)
        return 0
    labeling = face_labels(graph)
    if cfg.fmt == "dot":
        emit(graph.to_dot(labeling), cfg)
        return 0
    lines = [
        f"plabic graph for {sigma.to_cycle_string()}: "
        f"{len(graph.colors)} internal vertices, {len(graph.edges)} edges",
        "trips:  " + "  ".join(f"{t.source}->{t.target}" for t in trips(graph)),
        "faces:",
    ]
    for face in labeling.faces:
        marks = f" boundary at {list(face.boundary_marks)}" if face.frozen else ""
        lines.append(f"  {face.label.label()}{marks}")
    emit("\n".join(lines), cfg)
    return 0


def cmd_seeds(sigma: DecoratedPermutation, cfg: Config) -> int:
    graph = bridge_graph_from_permutation(sigma)
    seed = initial_seed(quiver_from_graph(graph))
    if cfg.fmt == "dot":
        emit(seed.quiver.to_dot(), cfg)
        return 0
    seeds, complete = mutation_class(seed, limit=cfg.limit)
    if cfg.fmt == "json":
        data = {
            "complete": complete,
            "count": len(seeds),
            "seeds": [
                {
                    "pure": member.is_pure_pluecker(),
                    "cluster": [
                        pretty_variable(member, v.id) for v in member.quiver.vertices
                    ],
                    "seed": member.to_json(),
                }
                for member in seeds
            ],
        }
        emit(render_json(data), cfg)
        return 0
    lines = [f"{len(seeds)} seeds" + ("" if complete else " (partial: --limit reached)")]
    for idx, member in enumerate(seeds):
        tag = "pure" if member.is_pure_pluecker() else "mixed"
        cluster = "  ".join(pretty_variable(member, v.id) for v in member.quiver.vertices)
        lines.append(f"seed {idx} [{tag}]  {cluster}")
    emit("\n".join(lines), cfg)
    return 0


def cmd_verify(sigma: DecoratedPermutation, cfg: Config) -> int:
    necklace = necklace_from_permutation(sigma)
    graph = bridge_graph_from_permutation(sigma)
    seed = initial_seed(quiver_from_graph(graph))
    rng = random.Random(cfg.rng_seed)
    points = [
        numeric.sample_cell_point(graph, rng_seed=rng.randrange(2**63), n_cap=cfg.n_cap)
        for _ in range(cfg.points)
    ]
    generic = [
        numeric.sample_generic_matrix(sigma.k, sigma.n, rng)
        for _ in range(max(2, min(20, cfg.points // 5)))
    ]
    report = numeric.verify_identities(
        necklace, seed, points, generic, corrupt=cfg.corrupt, n_cap=cfg.n_cap
    )
    emit(render_json(report), cfg)
    return 0 if report["passed"] else 1


def cmd_sample(sigma: DecoratedPermutation, cfg: Config) -> int:
    graph = bridge_graph_from_permutation(sigma)
    rng = random.Random(cfg.rng_seed)
    points = [
        numeric.sample_cell_point(graph, rng_seed=rng.randrange(2**63), n_cap=cfg.n_cap)
        for _ in range(cfg.points)
    ]
    if cfg.fmt == "json":
        emit(render_json([p.to_json() for p in points]), cfg)
        return 0
    lines = []
    for idx, point in enumerate(points):
        lines.append(f"point {idx}  sources {point.sources.label()}")
        for row in point.matrix.rows:
            lines.append("  [" + "  ".join(str(x) for x in row) + "]")
    emit("\n".join(lines), cfg)
    return 0


HANDLERS = {
    "necklace": cmd_necklace,
    "positroid": cmd_positroid,
    "plabic": cmd_plabic,
    "seeds": cmd_seeds,
    "verify": cmd_verify,
    "sample": cmd_sample,
}

POINT_DEFAULTS = {"verify": 50, "sample": 1}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="positroids",
        description="Positroid combinatorics: necklaces, plabic graphs, seeds, cell points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in [
        ("necklace", "necklace, complement, connectivity and dimension data"),
        ("positroid", "per k-set membership flags (positroid / CM / GP)"),
        ("plabic", "bridge-decomposition plabic graph"),
        ("seeds", "mutation class of the graph's seed"),
        ("verify", "exact identity verification on sampled points"),
        ("sample", "sample boundary-measurement cell points"),
    ]:
        p = sub.add_parser(name, help=doc)
        p.add_argument("permutation", help='cycle notation, "id:+,-" style, or JSON')
        p.add_argument("--n-cap", type=int, default=12, dest="n_cap")
        p.add_argument("--rng-seed", type=int, default=0, dest="rng_seed")
        p.add_argument(
            "--format",
            choices=["json", "dot", "table"],
            default="table",
            dest="fmt",
        )
        p.add_argument("--out", default=None, metavar="FILE")
        if name == "seeds":
            p.add_argument("--limit", type=int, default=None)
        if name in POINT_DEFAULTS:
            p.add_argument("--points", type=int, default=POINT_DEFAULTS[name])
        if name == "verify":
            p.add_argument(
                "--corrupt-seed",
                action="store_true",
                dest="corrupt",
                help=argparse.SUPPRESS,
            )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = Config(
        n_cap=args.n_cap,
        rng_seed=args.rng_seed,
        fmt=args.fmt,
        limit=getattr(args, "limit", None),
        points=getattr(args, "points", 50),
        out=args.out,
        corrupt=getattr(args, "corrupt", False),
    )
    if args.command == "verify" and cfg.fmt == "dot":
        print("error: verify has no dot output", file=sys.stderr)
        return 2
    try:
        sigma = parse_permutation(args.permutation)
        return HANDLERS[args.command](sigma, cfg)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
