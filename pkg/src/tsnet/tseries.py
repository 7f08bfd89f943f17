"""Monthly time series built from landing records.

Series are indexed by calendar month. A month is carried around either as a
``(year, month)`` tuple or as an absolute month index ``year * 12 + month - 1``.
"""
from __future__ import annotations

import datetime as dt
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import InputError

KINDS = ("island", "metier", "classification")

Month = tuple[int, int]


def month_index(month: Month) -> int:
    year, m = month
    if not 1 <= m <= 12:
        raise InputError(f"month out of range: {month!r}")
    return year * 12 + m - 1


def index_month(idx: int) -> Month:
    return idx // 12, idx % 12 + 1


def parse_month(text: str) -> Month:
    """Parse ``YYYY-MM`` into a ``(year, month)`` tuple."""
    try:
        y, m = text.strip().split("-")
        out = int(y), int(m)
    except ValueError:
        raise InputError(f"bad month {text!r}, expected YYYY-MM") from None
    month_index(out)
    return out


def format_month(month: Month) -> str:
    return f"{month[0]:04d}-{month[1]:02d}"


@dataclass(frozen=True)
class MonthRange:
    """Inclusive range of calendar months."""

    start: Month
    end: Month

    def __post_init__(self):
        if month_index(self.end) < month_index(self.start):
            raise InputError(f"empty month range {self}")

    @classmethod
    def parse(cls, text: str) -> "MonthRange":
        a, _, b = text.partition("..")
        return cls(parse_month(a), parse_month(b or a))

    def __len__(self) -> int:
        return month_index(self.end) - month_index(self.start) + 1

    def __str__(self) -> str:
        return f"{format_month(self.start)}..{format_month(self.end)}"

    def shifted(self, months: int) -> "MonthRange":
        return MonthRange(
            index_month(month_index(self.start) + months),
            index_month(month_index(self.end) + months),
        )

    def overlaps(self, other: "MonthRange") -> bool:
        return not (
            month_index(self.end) < month_index(other.start)
            or month_index(other.end) < month_index(self.start)
        )


@dataclass(frozen=True)
class LandingRecord:
    id: str
    date: dt.date
    island: str
    harbor: str
    classification: str
    metier: str
    weight: float

    def __post_init__(self):
        if not (self.weight >= 0 and math.isfinite(self.weight)):
            raise InputError(f"landing {self.id}: weight must be a finite non-negative number")

    @property
    def month(self) -> Month:
        return self.date.year, self.date.month


@dataclass(frozen=True)
class TimeSeries:
    label: str
    kind: str
    start: Month
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown kind {self.kind!r}")
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise InputError("series values must be one-dimensional")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def span(self) -> MonthRange:
        return MonthRange(self.start, index_month(month_index(self.start) + len(self) - 1))

    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())

    def with_values(self, values) -> "TimeSeries":
        return TimeSeries(self.label, self.kind, self.start, values)


@dataclass(frozen=True)
class SeriesSet:
    """Labelled series sharing one month span."""

    series: tuple[TimeSeries, ...]

    def __post_init__(self):
        series = tuple(self.series)
        object.__setattr__(self, "series", series)
        if not series:
            return
        first = series[0]
        labels = set()
        for s in series:
            if s.start != first.start or len(s) != len(first):
                raise InputError(f"series {s.label!r} does not share the set's month span")
            if s.label in labels:
                raise InputError(f"duplicate series label {s.label!r}")
            labels.add(s.label)

    def __len__(self) -> int:
        return len(self.series)

    def __iter__(self):
        return iter(self.series)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.series)

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(s.kind for s in self.series)

    @property
    def start(self) -> Month:
        return self.series[0].start

    @property
    def length(self) -> int:
        return len(self.series[0]) if self.series else 0

    @property
    def span(self) -> MonthRange:
        return self.series[0].span

    def matrix(self) -> np.ndarray:
        """Values as an ``(n_series, n_months)`` array."""
        if not self.series:
            return np.empty((0, 0))
        return np.vstack([s.values for s in self.series])

    def merge(self, *others: "SeriesSet") -> "SeriesSet":
        return SeriesSet(self.series + tuple(s for o in others for s in o.series))

    def years(self) -> list[int]:
        return sorted({index_month(month_index(self.start) + i)[0] for i in range(self.length)})


def aggregate_monthly(
    records: Iterable[LandingRecord],
    kind: str,
    start: Month = (2010, 1),
    end: Month = (2017, 12),
) -> SeriesSet:
    """Mean landing weight per label of ``kind`` per month.

    Months without any landing for a label are NaN (missing). Labels are
    ordered alphabetically.
    """
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {KINDS}")
    records = list(records)
    if not records:
        raise InputError("cannot aggregate an empty record collection")
    lo, hi = month_index(start), month_index(end)
    n_months = hi - lo + 1
    sums: dict[str, np.ndarray] = defaultdict(lambda: np.zeros(n_months))
    counts: dict[str, np.ndarray] = defaultdict(lambda: np.zeros(n_months, dtype=np.int64))
    for r in records:
        idx = month_index(r.month) - lo
        if not 0 <= idx < n_months:
            raise InputError(
                f"landing {r.id} dated {r.date} lies outside the study window "
                f"{format_month(start)}..{format_month(end)}"
            )
        label = getattr(r, kind)
        sums[label][idx] += r.weight
        counts[label][idx] += 1
    out = []
    for label in sorted(sums):
        c = counts[label]
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = np.where(c > 0, sums[label] / np.maximum(c, 1), np.nan)
        out.append(TimeSeries(label, kind, start, vals))
    return SeriesSet(tuple(out))


def _offset(set_: SeriesSet, rng: MonthRange, what: str) -> slice:
    a = month_index(rng.start) - month_index(set_.start)
    b = a + len(rng)
    if a < 0 or b > set_.length:
        raise InputError(f"{what} range {rng} lies outside the series span {set_.span}")
    return slice(a, b)


def scaling_factor(set_: SeriesSet, gap: MonthRange, donor: MonthRange, basis: MonthRange) -> float:
    """Ratio of basis totals, gap year over donor year, summed over all series.

    ``basis`` is given in the gap's year; the donor-year basis is the same
    range shifted by the gap-to-donor offset.
    """
    shift = month_index(donor.start) - month_index(gap.start)
    donor_basis = basis.shifted(shift)
    M = set_.matrix()
    b, db = _offset(set_, basis, "basis"), _offset(set_, donor_basis, "donor basis")
    bad = np.isnan(M[:, b]).any(axis=1) | np.isnan(M[:, db]).any(axis=1)
    if bad.any():
        labels = ", ".join(lab for lab, x in zip(set_.labels, bad) if x)
        raise InputError(f"basis months {basis} or {donor_basis} have missing values for: {labels}")
    gap_total = M[:, b].sum()
    donor_total = M[:, db].sum()
    if donor_total == 0:
        raise InputError(f"donor basis total over {donor_basis} is zero; scaling factor undefined")
    return float(gap_total / donor_total)


def impute_gap(
    set_: SeriesSet,
    gap: MonthRange,
    donor: MonthRange,
    basis: MonthRange,
) -> SeriesSet:
    """Fill ``gap`` with the ``donor`` months scaled by :func:`scaling_factor`.

    One factor, computed over the whole set, applies to every series.
    """
    if len(gap) != len(donor):
        raise InputError(f"gap {gap} and donor {donor} differ in length")
    if gap.overlaps(donor):
        raise InputError(f"gap {gap} overlaps donor {donor}")
    g = _offset(set_, gap, "gap")
    d = _offset(set_, donor, "donor")
    if np.isnan(set_.matrix()[:, d]).any():
        raise InputError(f"donor months {donor} contain missing values")
    factor = scaling_factor(set_, gap, donor, basis)
    out = []
    for s in set_:
        vals = s.values.copy()
        vals[g] = s.values[d] * factor
        out.append(s.with_values(vals))
    return SeriesSet(tuple(out))


def normalize(series: TimeSeries) -> TimeSeries:
    """Min-max rescale to [0, 1]; constant series become all zeros."""
    v = series.values
    if len(v) == 0:
        raise InputError(f"series {series.label!r} is empty")
    if np.isnan(v).any():
        raise InputError(
            f"series {series.label!r} has missing months; impute or zero-fill before normalizing"
        )
    lo, hi = v.min(), v.max()
    if hi == lo:
        return series.with_values(np.zeros_like(v))
    return series.with_values((v - lo) / (hi - lo))


def normalize_set(set_: SeriesSet) -> SeriesSet:
    return SeriesSet(tuple(normalize(s) for s in set_))


def slice_year(set_: SeriesSet, year: int) -> SeriesSet:
    rng = MonthRange((year, 1), (year, 12))
    try:
        sl = _offset(set_, rng, "year")
    except InputError:
        raise InputError(f"year {year} is not fully inside the series span {set_.span}") from None
    return SeriesSet(
        tuple(TimeSeries(s.label, s.kind, (year, 1), s.values[sl]) for s in set_)
    )


def zero_fill(set_: SeriesSet) -> SeriesSet:
    return SeriesSet(tuple(s.with_values(np.nan_to_num(s.values, nan=0.0)) for s in set_))


def missing_months(set_: SeriesSet) -> dict[str, list[Month]]:
    """Map label -> list of missing months, for labels with any."""
    out = {}
    for s in set_:
        idx = np.flatnonzero(np.isnan(s.values))
        if len(idx):
            base = month_index(s.start)
            out[s.label] = [index_month(base + int(i)) for i in idx]
    return out
