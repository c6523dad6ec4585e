"""Command-line interface.

Exit codes: 0 success, 2 usage/config error (including unreadable inputs),
3 data error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .centrality import MEASURES
from .dictionary import CENTERINGS, build_ensemble_matrix, classify_coefficients, ksvd_train
from .exceptions import ConfigError, GraphError, MCGraphError, NumericalError
from .features import FeatureSpec, assemble
from .graph import METRICS, Graph, read_edge_list
from .io import atomic_write, render_table
from .spectral import REDUCERS, graph_sds_statistic, mc_gpca, sds

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_feature_args(p: argparse.ArgumentParser, multi: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=not multi)
    if multi:
        src.add_argument("--input", action="append", default=[], help="edge-list file (repeatable)")
    src.add_argument("--input-dir", help="directory of edge-list files, processed in filename order")
    p.add_argument("--directed", action="store_true", help="treat edges as directed")
    p.add_argument("--max-hops", type=int, default=20)
    p.add_argument("--centralities", default=",".join(MEASURES),
                   help="comma list of centralities, or 'none'")
    p.add_argument("--refs", type=int, default=10, help="number of max-degree reference nodes")
    p.add_argument("--metric", choices=METRICS, default="hop", help="metric for reference distances")
    p.add_argument("--strict", action="store_true", help="drop features infeasible for the graph type")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mcgraph", description="Multi-centrality graph spectral analysis")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("features", help="write the normalized, centered feature matrix per graph")
    _add_feature_args(f)

    g = sub.add_parser("gpca", help="node coordinates and structural difference scores per graph")
    _add_feature_args(g)
    g.add_argument("--q", type=int, default=2, help="number of principal components")
    g.add_argument("--reducer", choices=REDUCERS, default="mean")
    g.add_argument("--top-k", type=int, default=None)

    d = sub.add_parser("gdl", help="dictionary learning and clustering over a directory of graphs")
    _add_feature_args(d, multi=False)
    d.add_argument("--q", type=int, default=2)
    d.add_argument("--z", type=int, default=300, help="top SDS values kept per graph")
    d.add_argument("--atoms", type=int, default=2)
    d.add_argument("--sparsity", type=int, default=2)
    d.add_argument("--iters", type=int, default=20)
    d.add_argument("--clusters", type=int, default=2)
    d.add_argument("--centering", choices=CENTERINGS, default="mean_column")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--reducer", choices=REDUCERS, default="mean")
    d.add_argument("--top-k", type=int, default=None)

    sub.add_parser("demo", help="print the symmetric-graph sensitivity walkthrough")
    return parser


@dataclass
class Loaded:
    names: list[str]
    graphs: list[Graph]
    spec: FeatureSpec


def _spec_from_args(args) -> FeatureSpec:
    raw = args.centralities.strip()
    cents = () if raw in ("", "none") else tuple(c.strip() for c in raw.split(","))
    return FeatureSpec(
        max_hops=args.max_hops,
        centralities=cents,
        reference_count=args.refs,
        distance_metric=args.metric,
        strict=args.strict,
    )


def _positive(args, *names):
    for name in names:
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise ConfigError(f"--{name.replace('_', '-')} must be >= 1, got {value}")


def _input_paths(args) -> list[Path]:
    if getattr(args, "input_dir", None):
        d = Path(args.input_dir)
        if not d.is_dir():
            raise ConfigError(f"input directory not found: {d}")
        paths = sorted(p for p in d.iterdir() if p.is_file() and not p.name.startswith("."))
        if not paths:
            raise ConfigError(f"no edge-list files in {d}")
        return paths
    paths = [Path(p) for p in getattr(args, "input", [])]
    if not paths:
        raise ConfigError("provide --input or --input-dir")
    for p in paths:
        if not p.is_file():
            raise ConfigError(f"input file not found: {p}")
    return paths


def _load(args) -> Loaded:
    """Validate the whole configuration and parse every input before computing anything."""
    spec = _spec_from_args(args)
    _positive(args, "q", "z", "atoms", "sparsity", "iters", "clusters", "top_k")
    if getattr(args, "q", None) is not None and args.q > spec.n_features:
        raise ConfigError(f"DimensionError: q={args.q} exceeds the number of features p={spec.n_features}")
    if getattr(args, "atoms", None) is not None and args.sparsity > args.atoms:
        raise ConfigError(f"--sparsity {args.sparsity} exceeds --atoms {args.atoms}")
    if getattr(args, "reducer", None) == "top_k_mean" and args.top_k is None:
        raise ConfigError("--reducer top_k_mean needs --top-k")
    paths = _input_paths(args)
    graphs = []
    for p in paths:
        try:
            g = read_edge_list(p, directed=args.directed)
        except (GraphError, UnicodeDecodeError) as exc:
            raise ConfigError(f"cannot parse {p}: {exc}") from None
        if spec.n_references > g.node_count:
            raise ConfigError(f"{p}: --refs {spec.n_references} exceeds its {g.node_count} nodes")
        graphs.append(g)
    if getattr(args, "clusters", None) is not None and args.clusters > len(graphs):
        raise ConfigError(f"--clusters {args.clusters} exceeds the {len(graphs)} graphs given")
    return Loaded([p.stem for p in paths], graphs, spec)


def _ext(fmt: str) -> str:
    return "csv" if fmt == "csv" else "json"


def cmd_features(args) -> dict[Path, str]:
    job = _load(args)
    out = Path(args.out)
    files = {}
    for name, g in zip(job.names, job.graphs):
        fm = assemble(g, job.spec)
        rows = [[label, *map(float, row)] for label, row in zip(fm.node_labels, fm.matrix)]
        files[out / f"{name}.features.{_ext(args.format)}"] = render_table(
            ["node", *fm.column_names], rows, args.format)
    return files


def _score(g: Graph, spec: FeatureSpec, q: int):
    fm = assemble(g, spec)
    if q > fm.shape[1]:
        raise ConfigError(f"DimensionError: q={q} exceeds the number of features p={fm.shape[1]}")
    pca = mc_gpca(fm, q)
    return pca, sds(g, pca)


def cmd_gpca(args) -> dict[Path, str]:
    job = _load(args)
    out = Path(args.out)
    ext = _ext(args.format)
    files = {}
    summary = []
    for name, g in zip(job.names, job.graphs):
        pca, scores = _score(g, job.spec, args.q)
        header = ["node", *(f"pc{k + 1}" for k in range(args.q)), "sds"]
        rows = [[label, *map(float, coords), float(s)]
                for label, coords, s in zip(g.labels, pca.coordinates, scores)]
        files[out / f"{name}.gpca.{ext}"] = render_table(header, rows, args.format)
        stat = graph_sds_statistic(scores, args.reducer, args.top_k) if g.node_count else 0.0
        ratio = [float(r) for r in pca.explained_variance_ratio]
        summary.append([name, g.node_count, g.edge_count, stat, *ratio])
    header = ["graph", "nodes", "edges", f"sds_{args.reducer}",
              *(f"explained_pc{k + 1}" for k in range(args.q))]
    files[out / f"summary.{ext}"] = render_table(header, summary, args.format)
    return files


def cmd_gdl(args) -> dict[Path, str]:
    job = _load(args)
    out = Path(args.out)
    ext = _ext(args.format)
    all_scores = [_score(g, job.spec, args.q)[1] for g in job.graphs]
    zmat = build_ensemble_matrix(all_scores, args.z, args.centering)
    model = ksvd_train(zmat, args.atoms, args.sparsity, args.iters, args.seed)
    labels = classify_coefficients(model.coefficients, args.clusters, args.seed)
    model.metadata["graphs"] = job.names
    model.metadata["centering"] = args.centering
    header = ["graph", "label", f"sds_{args.reducer}", *(f"coef{k + 1}" for k in range(args.atoms))]
    rows = []
    for j, name in enumerate(job.names):
        stat = graph_sds_statistic(all_scores[j], args.reducer, args.top_k) if all_scores[j].size else 0.0
        rows.append([name, int(labels[j]), stat, *map(float, model.coefficients[:, j])])
    log_rows = [[i + 1, e] for i, e in enumerate(model.training_log)]
    return {
        out / "model.json": model.to_json() + "\n",
        out / f"labels.{ext}": render_table(header, rows, args.format),
        out / f"training_log.{ext}": render_table(["sweep", "error"], log_rows, args.format),
    }


def cmd_demo(args) -> dict[Path, str]:
    from .demo import run_demo

    run_demo()
    return {}


COMMANDS = {"features": cmd_features, "gpca": cmd_gpca, "gdl": cmd_gdl, "demo": cmd_demo}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        files = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"mcgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"mcgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"mcgraph: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"mcgraph: numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except MCGraphError as exc:
        print(f"mcgraph: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    # everything is computed before the first file is written
    for path, text in files.items():
        atomic_write(path, text)
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
