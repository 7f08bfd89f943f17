"""Command-line interface.

Exit codes: 0 success, 1 input or validation error, 2 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import graphalg
from .config import PipelineConfig, load_config
from .distance import distance_matrix, normalize_matrix
from .errors import InputError, InvariantError, PipelineError
from .export import FORMATS, export_network, read_edgelist
from .io import (
    apply_exclusions,
    parse_landings_csv,
    read_series_csv,
    summary_tables,
    write_distance_csv,
    write_landings_csv,
    write_series_csv,
    write_summary_csv,
)
from .netbuild import Network
from .pipeline import (
    AnalysisReport,
    analyze_networks,
    dumps_report,
    prepare_series,
    report_json,
    run_pipeline,
    sweep_rows,
    write_sweep_csv,
)
from .temporal import MethodSpec, edge_diff, method_selection_report, yearly_networks
from .tseries import normalize_set, slice_year

log = logging.getLogger("tsnet")


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _years(text: str) -> tuple[int, int]:
    a, _, b = text.partition("..")
    return int(a), int(b or a)


def _config(args) -> PipelineConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else PipelineConfig()
    over = {}
    if getattr(args, "input", None):
        over["input"] = Path(args.input)
    if getattr(args, "output_dir", None):
        over["output_dir"] = Path(args.output_dir)
    if getattr(args, "years", None):
        over["year_start"], over["year_end"] = _years(args.years)
    if getattr(args, "method", None):
        param = args.param
        if param is None and args.method == cfg.method.method:
            param = cfg.method.param
        over["method"] = MethodSpec(args.method, param, getattr(args, "bonferroni", False))
    elif getattr(args, "param", None) is not None:
        over["method"] = MethodSpec(cfg.method.method, args.param, cfg.method.bonferroni)
    if getattr(args, "formats", None):
        over["formats"] = tuple(args.formats.split(","))
    if getattr(args, "walk_length", None):
        over["walk_length"] = args.walk_length
    if getattr(args, "zero_fill", False):
        over["zero_fill"] = True
    return cfg.with_overrides(**over)


def _series(args, cfg: PipelineConfig):
    if getattr(args, "series", None):
        return read_series_csv(args.series)
    return prepare_series(cfg)


def cmd_synth(args):
    from .synth import generate_landings

    data = generate_landings(seed=args.seed, noise=args.noise)
    write_landings_csv(data.records, args.output)
    print(f"wrote {len(data.records)} landings to {args.output}")


def cmd_summary(args):
    cfg = _config(args)
    if cfg.input is None:
        raise InputError("no input file: pass --input or a config with 'input'")
    records = parse_landings_csv(cfg.input)
    if args.exclude:
        records = apply_exclusions(records, cfg.exclusions)
    tables = summary_tables(records)
    if args.output:
        write_summary_csv(tables, args.output)
    for kind, rows in tables.items():
        print(f"{kind}:")
        for label, count, weight in rows:
            print(f"  {label:<40s} {count:>8d} {weight:>16.3f}")


def cmd_prepare(args):
    cfg = _config(args)
    series = prepare_series(cfg)
    write_series_csv(series, args.output)
    print(f"wrote {len(series)} series x {series.length} months to {args.output}")


def cmd_distances(args):
    cfg = _config(args)
    series = _series(args, cfg)
    ys = normalize_set(slice_year(series, args.year)) if cfg.renormalize else slice_year(normalize_set(series), args.year)
    D = distance_matrix(ys)
    if args.normalize:
        D = normalize_matrix(D)
    write_distance_csv(D, args.output)
    print(f"wrote {len(D)}x{len(D)} distance matrix for {args.year} to {args.output}")


def _networks(args, cfg):
    series = _series(args, cfg)
    return yearly_networks(series, cfg.method, cfg.year_list, cfg.renormalize)


def cmd_build(args):
    cfg = _config(args)
    nets = _networks(args, cfg)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    prev = None
    for y, net in nets.items():
        diff = edge_diff(prev, net) if prev is not None else None
        part = graphalg.detect_communities(net, cfg.walk_length)
        for f in cfg.formats:
            export_network(net, f, out / f"{y}.{FORMATS[f]}", diff, part)
        prev = net
    print(f"wrote {len(nets)} networks ({cfg.method}) to {out}")


def cmd_analyze(args):
    cfg = _config(args)
    nets = _networks(args, cfg)
    years, diffs = analyze_networks(nets, cfg.walk_length, cfg.top_count)
    report = AnalysisReport(years, diffs, None, {"config": cfg.summary()})
    report_json(report, args.output)
    for yr in years:
        top = ", ".join(f"{lab} ({d})" for lab, d in yr.top)
        q = "undefined" if yr.modularity is None else f"{yr.modularity:.4f}"
        print(f"{yr.year}: density {yr.density:.4f}, modularity {q}, top degree: {top}")


def cmd_sweep(args):
    cfg = _config(args)
    series = _series(args, cfg)
    k_values = _ints(args.k) if args.k is not None else (cfg.sweep.k_values if cfg.sweep else (2, 3, 5, 7, 10))
    eps_values = _floats(args.eps) if args.eps is not None else (
        cfg.sweep.eps_values if cfg.sweep else (0.3, 0.5, 0.7, 0.9)
    )
    alpha = args.alpha if args.alpha is not None else (cfg.sweep.alpha if cfg.sweep else 0.05)
    report = method_selection_report(
        series, k_values, eps_values, alpha, not args.no_weighted, cfg.walk_length, cfg.year_list, cfg.renormalize
    )
    write_sweep_csv(report, args.output)
    if args.json:
        Path(args.json).write_text(dumps_report(sweep_rows(report)), encoding="utf-8")
    for r in report.rows:
        q = "undefined" if r.mean_modularity is None else f"{r.mean_modularity:.6f}"
        p = "" if r.param is None else f"{r.param:g}"
        print(f"{r.method:<12s} {p:>6s}  modularity {q:>10s}  density {r.mean_density:.6f}")


def cmd_diff(args):
    prev_rows, curr_rows = read_edgelist(args.prev), read_edgelist(args.curr)
    names = set(args.nodes.split(",")) if args.nodes else set()
    for a, b, _ in prev_rows + curr_rows:
        names.update((a, b))
    names = sorted(names)
    # edge lists carry no node kinds; the diff only compares labels
    prev = Network.from_label_edges(names, [""] * len(names), [(a, b) for a, b, _ in prev_rows])
    curr = Network.from_label_edges(names, [""] * len(names), [(a, b) for a, b, _ in curr_rows])
    text = dumps_report(edge_diff(prev, curr).as_dict())
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_pipeline(args):
    cfg = _config(args)
    if args.sweep:
        from .config import SweepSpec

        cfg = cfg.with_overrides(sweep=cfg.sweep or SweepSpec())
    report, files = run_pipeline(cfg)
    for yr in report.years:
        q = "undefined" if yr.modularity is None else f"{yr.modularity:.4f}"
        print(f"{yr.year}: {yr.network.m} edges, density {yr.density:.4f}, modularity {q}")
    print(f"wrote {len(files)} files to {cfg.output_dir}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tsnet", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_config(sp, series=True, method=False):
        sp.add_argument("--config", help="YAML pipeline config")
        sp.add_argument("--input", help="landings CSV (overrides config)")
        if series:
            sp.add_argument("--series", help="series CSV from 'prepare' instead of landings input")
        sp.add_argument("--years", help="year range, e.g. 2010..2017")
        sp.add_argument("--zero-fill", action="store_true", help="fill missing months with 0")
        if method:
            sp.add_argument("--method", choices=["knn", "eps", "weighted", "significant"])
            sp.add_argument("--param", type=float, help="k, eps or alpha")
            sp.add_argument("--bonferroni", action="store_true")
            sp.add_argument("--walk-length", type=int)

    sp = sub.add_parser("synth", help="write a synthetic landings CSV")
    sp.add_argument("--output", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--noise", type=float, default=0.05)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("summary", help="landings count and weight per classification and metier")
    sp.add_argument("--config", help="YAML pipeline config")
    sp.add_argument("--input", help="landings CSV (overrides config)")
    sp.add_argument("--exclude", action="store_true", help="apply the configured exclusions first")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_summary)

    sp = sub.add_parser("prepare", help="parse, exclude, aggregate and impute into a series CSV")
    with_config(sp, series=False)
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=cmd_prepare)

    sp = sub.add_parser("distances", help="DTW distance matrix for one year")
    with_config(sp)
    sp.add_argument("--year", type=int, required=True)
    sp.add_argument("--normalize", action="store_true", help="divide by the largest distance")
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=cmd_distances)

    sp = sub.add_parser("build", help="export yearly networks")
    with_config(sp, method=True)
    sp.add_argument("--formats", help="comma list of edgelist-csv, graphml, dot")
    sp.add_argument("--output-dir")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("analyze", help="metrics, communities and diffs as a JSON report")
    with_config(sp, method=True)
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("sweep", help="method-selection report over k and eps candidates")
    with_config(sp)
    sp.add_argument("--walk-length", type=int)
    sp.add_argument("--k", help="comma list, default 2,3,5,7,10")
    sp.add_argument("--eps", help="comma list, default 0.3,0.5,0.7,0.9")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--no-weighted", action="store_true")
    sp.add_argument("--output", required=True, help="CSV output")
    sp.add_argument("--json", help="also write the rows as JSON")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("diff", help="new/retained/dropped edges between two edge lists")
    sp.add_argument("--config", help="accepted for symmetry; unused")
    sp.add_argument("--prev", required=True)
    sp.add_argument("--curr", required=True)
    sp.add_argument("--nodes", help="comma list of node labels, for isolated nodes")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("pipeline", help="run everything and write report and networks")
    with_config(sp, series=False, method=True)
    sp.add_argument("--formats")
    sp.add_argument("--output-dir")
    sp.add_argument("--sweep", action="store_true", help="include the method-selection sweep")
    sp.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.func(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1 if isinstance(exc.cause, (InputError, OSError)) else 2
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
