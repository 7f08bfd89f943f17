"""Landings CSV ingestion, exclusions, summary tables and tabular outputs."""
from __future__ import annotations

import csv
import datetime as dt
import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .distance import DistanceMatrix
from .errors import InputError
from .tseries import (
    LandingRecord,
    SeriesSet,
    TimeSeries,
    format_month,
    index_month,
    month_index,
    parse_month,
)

log = logging.getLogger(__name__)

LANDINGS_COLUMNS = ("id", "date", "island", "harbor", "classification", "metier", "weight_kg")
DECIMALS = 9


def fmt(x) -> str:
    """Fixed 9-decimal rendering; NaN and None become the empty string."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{float(x):.{DECIMALS}f}"


def parse_landings_csv(path) -> list[LandingRecord]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise InputError(f"{path}: file is empty, expected header {','.join(LANDINGS_COLUMNS)}") from None
        for col in LANDINGS_COLUMNS:
            if col not in header:
                raise InputError(f"{path}: missing column '{col}'")
        extra = [h for h in header if h not in LANDINGS_COLUMNS]
        if extra:
            log.warning("%s: ignoring extra columns %s", path, extra)
        pos = {col: header.index(col) for col in LANDINGS_COLUMNS}
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < len(header):
                raise InputError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            get = lambda col: row[pos[col]].strip()  # noqa: E731
            try:
                date = dt.date.fromisoformat(get("date"))
            except ValueError:
                raise InputError(f"{path}:{lineno}: unparsable date {get('date')!r}") from None
            try:
                weight = float(get("weight_kg"))
            except ValueError:
                raise InputError(f"{path}:{lineno}: unparsable weight {get('weight_kg')!r}") from None
            if not (math.isfinite(weight) and weight >= 0):
                raise InputError(f"{path}:{lineno}: weight must be non-negative, got {get('weight_kg')}")
            records.append(
                LandingRecord(
                    id=get("id"),
                    date=date,
                    island=get("island"),
                    harbor=get("harbor"),
                    classification=get("classification"),
                    metier=get("metier"),
                    weight=weight,
                )
            )
    return records


def write_landings_csv(records: Iterable[LandingRecord], path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LANDINGS_COLUMNS)
        for r in records:
            w.writerow([r.id, r.date.isoformat(), r.island, r.harbor, r.classification, r.metier, f"{r.weight:.3f}"])


@dataclass(frozen=True)
class Exclusions:
    harbors: tuple[str, ...] = ()
    classifications: tuple[str, ...] = ()
    metiers: tuple[str, ...] = ()


DEFAULT_EXCLUSIONS = Exclusions(
    harbors=("Angra do Heroísmo", "Povoação"),
    classifications=("Crustaceans", "Other Spp"),
    metiers=("FPO-CRU", "NEI"),
)


def apply_exclusions(
    records: Iterable[LandingRecord],
    exclusions: Exclusions = DEFAULT_EXCLUSIONS,
    counts: Optional[dict] = None,
) -> list[LandingRecord]:
    """Drop records from excluded harbors, classifications or metiers.

    If ``counts`` is given it receives the number of dropped records per
    reason; a record is charged to the first matching reason in the order
    harbor, classification, metier.
    """
    harbors = set(exclusions.harbors)
    classes = set(exclusions.classifications)
    metiers = set(exclusions.metiers)
    tally = Counter()
    kept = []
    for r in records:
        if r.harbor in harbors:
            tally["harbor"] += 1
        elif r.classification in classes:
            tally["classification"] += 1
        elif r.metier in metiers:
            tally["metier"] += 1
        else:
            kept.append(r)
    for reason in ("harbor", "classification", "metier"):
        if tally[reason]:
            log.info("excluded %d records by %s", tally[reason], reason)
    if counts is not None:
        for reason in ("harbor", "classification", "metier"):
            counts[reason] = tally[reason]
    return kept


def summary_tables(records: Iterable[LandingRecord]) -> dict[str, list[tuple[str, int, float]]]:
    """Landings count and total weight per classification and per metier.

    Rows are sorted by total weight, heaviest first.
    """
    records = list(records)
    if not records:
        raise InputError("summary tables need at least one record")
    out = {}
    for kind in ("classification", "metier"):
        n: Counter = Counter()
        w: dict[str, float] = defaultdict(float)
        for r in records:
            key = getattr(r, kind)
            n[key] += 1
            w[key] += r.weight
        out[kind] = sorted(((k, n[k], w[k]) for k in n), key=lambda t: (-t[2], t[0]))
    return out


def write_summary_csv(tables, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["table", "label", "landings", "total_weight_kg"])
        for kind, rows in tables.items():
            for label, count, weight in rows:
                w.writerow([kind, label, count, fmt(weight)])


def write_series_csv(set_: SeriesSet, path) -> None:
    base = month_index(set_.start)
    months = [format_month(index_month(base + i)) for i in range(set_.length)]
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "kind", *months])
        for s in set_:
            w.writerow([s.label, s.kind, *(fmt(v) for v in s.values)])


def read_series_csv(path) -> SeriesSet:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[:2] != ["label", "kind"] or len(header) < 3:
            raise InputError(f"{path}: expected header 'label,kind,YYYY-MM,...'")
        months = [parse_month(h) for h in header[2:]]
        start = months[0]
        for i, m in enumerate(months):
            if month_index(m) != month_index(start) + i:
                raise InputError(f"{path}: month columns are not consecutive at {format_month(m)}")
        series = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise InputError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                vals = [float(v) if v.strip() else math.nan for v in row[2:]]
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
            series.append(TimeSeries(row[0], row[1], start, vals))
    return SeriesSet(tuple(series))


def write_distance_csv(D: DistanceMatrix, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", *D.labels])
        for lab, row in zip(D.labels, D.values):
            w.writerow([lab, *(fmt(v) for v in row)])


def read_distance_csv(path, kinds: Iterable[str]) -> DistanceMatrix:
    """Read a distance CSV; the file has no kind column, so kinds are supplied."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    labels = rows[0][1:]
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return DistanceMatrix(tuple(labels), tuple(kinds), values)
