"""End-to-end orchestration: landings CSV to yearly networks, metrics and files."""
from __future__ import annotations

import contextlib
import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import graphalg
from .config import PipelineConfig
from .errors import InputError, InvariantError, PipelineError
from .export import FORMATS, export_network
from .io import apply_exclusions, fmt, parse_landings_csv, write_series_csv
from .netbuild import Network
from .temporal import (
    EdgeDiff,
    MethodReport,
    YearlyNetworks,
    edge_diff,
    method_selection_report,
    top_degree_nodes,
    yearly_networks,
)
from .tseries import (
    KINDS,
    SeriesSet,
    aggregate_monthly,
    format_month,
    impute_gap,
    missing_months,
    scaling_factor,
    zero_fill,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class YearResult:
    year: int
    network: Network
    partition: graphalg.Partition
    density: float
    degrees: tuple[int, ...]
    clustering: tuple[float, ...]
    top: list[tuple[str, int]]

    @property
    def modularity(self) -> Optional[float]:
        return self.partition.modularity


@dataclass
class AnalysisReport:
    years: list[YearResult]
    diffs: list[tuple[int, int, EdgeDiff]]
    sweep: Optional[MethodReport] = None
    meta: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        first = self.years[0].network
        return {
            "meta": self.meta,
            "nodes": [{"label": lab, "kind": k} for lab, k in zip(first.labels, first.kinds)],
            "years": [
                {
                    "year": yr.year,
                    "n_edges": yr.network.m,
                    "density": yr.density,
                    "modularity": yr.modularity,
                    "n_communities": yr.partition.n_communities,
                    "nodes": [
                        {
                            "label": lab,
                            "degree": d,
                            "clustering": c,
                            "community": comm,
                        }
                        for lab, d, c, comm in zip(
                            yr.network.labels, yr.degrees, yr.clustering, yr.partition.membership
                        )
                    ],
                    "top_degree": [{"label": lab, "degree": d} for lab, d in yr.top],
                }
                for yr in self.years
            ],
            "diffs": [
                {"from": a, "to": b, **diff.as_dict()} for a, b, diff in self.diffs
            ],
            "sweep": None if self.sweep is None else sweep_rows(self.sweep),
        }


def sweep_rows(report: MethodReport) -> list[dict[str, Any]]:
    return [
        {
            "method": r.method,
            "param": r.param,
            "mean_modularity": r.mean_modularity,
            "mean_density": r.mean_density,
        }
        for r in report.rows
    ]


def analyze_networks(nets: YearlyNetworks, walk_length: int = 4, top_count: int = 3):
    """Per-year metrics and consecutive-year edge diffs."""
    years = []
    for y, net in nets.items():
        years.append(
            YearResult(
                year=y,
                network=net,
                partition=graphalg.detect_communities(net, walk_length),
                density=graphalg.density(net),
                degrees=tuple(graphalg.degrees(net).tolist()),
                clustering=tuple(graphalg.local_clusterings(net).tolist()),
                top=top_degree_nodes(net, top_count),
            )
        )
    ys = nets.years
    diffs = [(a, b, edge_diff(nets[a], nets[b])) for a, b in zip(ys, ys[1:])]
    return years, diffs


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise InvariantError(f"non-finite number {obj} in report")
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(obj[k], indent, level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(v is None or isinstance(v, (str, int, float)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(data: Any, indent: int = 2) -> str:
    """JSON with sorted keys and every float written with 9 decimals."""
    return _encode(data, indent, 0) + "\n"


def report_json(report: AnalysisReport, path) -> Path:
    path = Path(path)
    path.write_text(dumps_report(report.to_dict()), encoding="utf-8")
    return path


def write_sweep_csv(report: MethodReport, path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "param", "mean_modularity", "mean_density"])
        for r in report.rows:
            param = "" if r.param is None else (str(r.param) if isinstance(r.param, int) else fmt(r.param))
            w.writerow([r.method, param, fmt(r.mean_modularity), fmt(r.mean_density)])
    return path


@contextlib.contextmanager
def _stage(name: str):
    log.info("stage %s", name)
    try:
        yield
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(name, exc) from exc


def prepare_series(config: PipelineConfig, meta: Optional[dict] = None) -> SeriesSet:
    """Parse, exclude, aggregate and impute: the series behind every network."""
    meta = meta if meta is not None else {}
    if config.input is None:
        raise PipelineError("parse", InputError("no input file configured"))
    with _stage("parse"):
        records = parse_landings_csv(config.input)
    with _stage("exclude"):
        counts: dict = {}
        kept = apply_exclusions(records, config.exclusions, counts)
        meta["records"] = {"input": len(records), "kept": len(kept), "excluded": counts}
        for reason, n in sorted(counts.items()):
            log.info("excluded %d records by %s", n, reason)
        if len(records) != len(kept) + sum(counts.values()):
            raise InvariantError("exclusion counts do not add up")
    with _stage("aggregate"):
        sets = [aggregate_monthly(kept, k, config.window_start, config.window_end) for k in KINDS]
    with _stage("impute"):
        imp = config.imputation
        factors = {}
        if imp is not None:
            out = []
            for kind, s in zip(KINDS, sets):
                factors[kind] = scaling_factor(s, imp.gap, imp.donor, imp.basis)
                out.append(impute_gap(s, imp.gap, imp.donor, imp.basis))
            sets = out
        meta["imputation_factors"] = factors
    with _stage("validate"):
        series = sets[0].merge(*sets[1:])
        missing = missing_months(series)
        if missing:
            if not config.zero_fill:
                first = next(iter(missing))
                raise InputError(
                    f"{len(missing)} series have missing months (e.g. {first!r} at "
                    f"{', '.join(format_month(m) for m in missing[first][:3])}); "
                    "configure an imputation gap or set zero_fill"
                )
            log.warning("zero-filling missing months in %d series", len(missing))
            series = zero_fill(series)
    return series


def run_pipeline(config: PipelineConfig) -> tuple[AnalysisReport, list[Path]]:
    """Run every stage and write the report and per-year network files."""
    meta: dict[str, Any] = {"config": config.summary()}
    series = prepare_series(config, meta)
    with _stage("networks"):
        nets = yearly_networks(series, config.method, config.year_list, config.renormalize)
    with _stage("analyze"):
        years, diffs = analyze_networks(nets, config.walk_length, config.top_count)
    sweep = None
    if config.sweep is not None:
        with _stage("sweep"):
            s = config.sweep
            sweep = method_selection_report(
                series,
                s.k_values,
                s.eps_values,
                s.alpha,
                s.weighted,
                config.walk_length,
                config.year_list,
                config.renormalize,
            )
    report = AnalysisReport(years, diffs, sweep, meta)
    files = []
    with _stage("export"):
        out = Path(config.output_dir)
        netdir = out / "networks"
        netdir.mkdir(parents=True, exist_ok=True)
        write_series_csv(series, out / "series.csv")
        files.append(out / "series.csv")
        diff_into = {b: d for _, b, d in diffs}
        for yr in years:
            for f in config.formats:
                path = netdir / f"{yr.year}.{FORMATS[f]}"
                files.append(export_network(yr.network, f, path, diff_into.get(yr.year), yr.partition))
        if sweep is not None:
            files.append(write_sweep_csv(sweep, out / "sweep.csv"))
        files.append(report_json(report, out / "report.json"))
    return report, files
