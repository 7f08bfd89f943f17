"""Synthetic landings with planted groups of co-varying series.

Every label (island, metier, classification) belongs to one of three latent
groups, each with its own seasonal profile. Each month holds one landing per
(island, metier, classification) combination whose weight is

    scale[year] * (base + island_effect + metier_effect + class_effect)

Effects are centred across the labels of a kind, so the monthly mean for any
label equals ``scale * (base + own effect)`` exactly: the group profile plus
noise survives aggregation untouched.
"""
from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .tseries import LandingRecord, Month, MonthRange, month_index, index_month

ISLANDS = ("Faial", "Pico", "Santa Maria", "São Miguel", "Terceira")
HARBORS = {
    "Faial": ("Horta",),
    "Pico": ("Madalena", "São Roque do Pico"),
    "Santa Maria": ("Vila do Porto",),
    "São Miguel": ("Ponta Delgada", "Rabo de Peixe"),
    "Terceira": ("Praia da Vitória",),
}
METIERS = (
    "FPO-PB", "GNS-PB", "LHP-CEF", "LHP-PB", "LHP-PBC", "LHP-TUN",
    "LLD-GPP", "LLD-PP", "LLS-DEEP", "LLS-PD", "PS-PB", "PS-PPP",
)
CLASSIFICATIONS = (
    "Coastal Demersals", "Coastal Pelagics", "Continental Shelf Slope Benthopelagic",
    "Continental Shelf Slope Demersals", "Deep-Sea Species", "Demersals",
    "Large Migratory Pelagics", "Mollusks", "Small Coastal Demersals",
    "Small Pelagics", "Tunas",
)
# records that default exclusions should remove
EXCLUDED_EXTRAS = (
    ("Terceira", "Angra do Heroísmo", "Tunas", "LHP-TUN"),
    ("São Miguel", "Povoação", "Mollusks", "LHP-CEF"),
    ("Pico", "Madalena", "Crustaceans", "FPO-CRU"),
    ("Faial", "Horta", "Other Spp", "NEI"),
)

N_GROUPS = 3


def group_profiles() -> np.ndarray:
    """Three 12-month seasonal profiles that sum to zero month by month."""
    t = np.arange(12)
    p0 = np.cos(2 * np.pi * (t - 6) / 12)
    p1 = np.sin(4 * np.pi * t / 12)
    return np.vstack([p0, p1, -(p0 + p1)])


@dataclass(frozen=True)
class SyntheticLandings:
    records: tuple[LandingRecord, ...]
    groups: dict[str, int]


def planted_groups() -> dict[str, int]:
    groups = {}
    for labels in (ISLANDS, METIERS, CLASSIFICATIONS):
        for i, lab in enumerate(labels):
            groups[lab] = i % N_GROUPS
    return groups


def _effects(labels, groups, months, rng, amplitude, noise) -> np.ndarray:
    profiles = group_profiles()
    sizes = np.bincount([groups[lab] for lab in labels], minlength=N_GROUPS)
    season = np.array([index_month(m)[1] - 1 for m in months])
    signal = np.empty((len(labels), len(months)))
    jitter = np.empty_like(signal)
    for i, lab in enumerate(labels):
        prof = profiles[groups[lab]]
        amp = amplitude / sizes[groups[lab]]
        signal[i] = amp * prof[season]
        jitter[i] = rng.normal(0.0, noise * amp * np.ptp(prof), size=len(months))
    # profiles already cancel across the kind; centre the noise too
    return signal + jitter - jitter.mean(axis=0)


def generate_landings(
    seed: int = 0,
    start: Month = (2010, 1),
    end: Month = (2017, 12),
    gap: MonthRange | None = MonthRange((2014, 1), (2014, 3)),
    noise: float = 0.05,
    base: float = 400.0,
    amplitude: float = 30.0,
    extras: bool = True,
) -> SyntheticLandings:
    """Generate a deterministic synthetic landings dataset.

    ``noise`` is the standard deviation relative to each label's seasonal
    range. Months inside ``gap`` get no landings at all.
    """
    rng = np.random.default_rng(seed)
    groups = planted_groups()
    lo, hi = month_index(start), month_index(end)
    months = list(range(lo, hi + 1))
    isl = _effects(ISLANDS, groups, months, rng, amplitude, noise)
    met = _effects(METIERS, groups, months, rng, amplitude, noise)
    cls = _effects(CLASSIFICATIONS, groups, months, rng, amplitude, noise)
    years = sorted({index_month(m)[0] for m in months})
    scale = dict(zip(years, rng.uniform(0.6, 1.4, size=len(years))))
    skip = set()
    if gap is not None:
        skip = set(range(month_index(gap.start), month_index(gap.end) + 1))

    records = []
    n = 0
    for t, m in enumerate(months):
        if m in skip:
            continue
        year, month = index_month(m)
        s = scale[year]
        for i, island in enumerate(ISLANDS):
            harbors = HARBORS[island]
            for j, metier in enumerate(METIERS):
                for k, cl in enumerate(CLASSIFICATIONS):
                    n += 1
                    w = s * (base + isl[i, t] + met[j, t] + cls[k, t])
                    records.append(
                        LandingRecord(
                            id=f"L{n:06d}",
                            date=dt.date(year, month, int(rng.integers(1, 29))),
                            island=island,
                            harbor=harbors[(j + k) % len(harbors)],
                            classification=cl,
                            metier=metier,
                            weight=round(float(w), 3),
                        )
                    )
        if extras:
            for island, harbor, cl, metier in EXCLUDED_EXTRAS:
                n += 1
                records.append(
                    LandingRecord(
                        id=f"L{n:06d}",
                        date=dt.date(year, month, int(rng.integers(1, 29))),
                        island=island,
                        harbor=harbor,
                        classification=cl,
                        metier=metier,
                        weight=round(float(rng.uniform(1, 50)), 3),
                    )
                )
    return SyntheticLandings(tuple(records), groups)
