"""Pipeline configuration, loaded from a YAML file."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

from .errors import InputError
from .export import FORMATS
from .io import DEFAULT_EXCLUSIONS, Exclusions
from .temporal import DEFAULT_EPS, DEFAULT_K, MethodSpec
from .tseries import Month, MonthRange, format_month, parse_month


@dataclass(frozen=True)
class Imputation:
    gap: MonthRange
    donor: MonthRange
    basis: MonthRange


DEFAULT_IMPUTATION = Imputation(
    gap=MonthRange((2014, 1), (2014, 3)),
    donor=MonthRange((2013, 1), (2013, 3)),
    basis=MonthRange((2014, 4), (2014, 12)),
)


@dataclass(frozen=True)
class SweepSpec:
    k_values: tuple[int, ...] = DEFAULT_K
    eps_values: tuple[float, ...] = DEFAULT_EPS
    alpha: Optional[float] = 0.05
    weighted: bool = True


@dataclass(frozen=True)
class PipelineConfig:
    input: Optional[Path] = None
    window_start: Month = (2010, 1)
    window_end: Month = (2017, 12)
    exclusions: Exclusions = DEFAULT_EXCLUSIONS
    imputation: Optional[Imputation] = DEFAULT_IMPUTATION
    zero_fill: bool = False
    method: MethodSpec = field(default_factory=lambda: MethodSpec("knn", 2))
    year_start: Optional[int] = None
    year_end: Optional[int] = None
    renormalize: bool = True
    walk_length: int = 4
    top_count: int = 3
    output_dir: Path = Path("out")
    formats: tuple[str, ...] = ("edgelist-csv",)
    sweep: Optional[SweepSpec] = None

    def __post_init__(self):
        window = MonthRange(self.window_start, self.window_end)
        for f in self.formats:
            if f not in FORMATS:
                raise InputError(f"unknown output format {f!r}; expected one of {sorted(FORMATS)}")
        lo, hi = self.years
        if hi < lo:
            raise InputError(f"year range {lo}..{hi} is empty")
        if (lo, 1) < window.start or (hi, 12) > window.end:
            raise InputError(f"year range {lo}..{hi} is not inside the study window {window}")
        if self.walk_length < 1:
            raise InputError("walk_length must be >= 1")
        if self.top_count < 1:
            raise InputError("top_count must be >= 1")

    @property
    def years(self) -> tuple[int, int]:
        lo = self.year_start if self.year_start is not None else self.window_start[0]
        hi = self.year_end if self.year_end is not None else self.window_end[0]
        return lo, hi

    @property
    def year_list(self) -> list[int]:
        lo, hi = self.years
        return list(range(lo, hi + 1))

    def with_overrides(self, **kwargs) -> "PipelineConfig":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    def summary(self) -> dict[str, Any]:
        """JSON-friendly view used in reports."""
        imp = self.imputation
        return {
            "window": [format_month(self.window_start), format_month(self.window_end)],
            "years": list(self.years),
            "exclusions": {
                "harbors": list(self.exclusions.harbors),
                "classifications": list(self.exclusions.classifications),
                "metiers": list(self.exclusions.metiers),
            },
            "imputation": None
            if imp is None
            else {"gap": str(imp.gap), "donor": str(imp.donor), "basis": str(imp.basis)},
            "zero_fill": self.zero_fill,
            "method": {"name": self.method.method, "param": self.method.param, "bonferroni": self.method.bonferroni},
            "renormalize": self.renormalize,
            "walk_length": self.walk_length,
        }


def _range(text, what) -> MonthRange:
    if not isinstance(text, str):
        raise InputError(f"{what}: expected 'YYYY-MM..YYYY-MM', got {text!r}")
    return MonthRange.parse(text)


def config_from_mapping(data: Mapping[str, Any], base_dir: Path = Path(".")) -> PipelineConfig:
    data = dict(data or {})
    known = {
        "input", "window", "exclusions", "imputation", "zero_fill", "method", "years",
        "renormalize", "walk_length", "top_count", "output_dir", "formats", "sweep",
    }
    unknown = set(data) - known
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    kw: dict[str, Any] = {}
    if data.get("input") is not None:
        kw["input"] = base_dir / data["input"]
    if "window" in data:
        w = data["window"]
        kw["window_start"] = parse_month(str(w["start"]))
        kw["window_end"] = parse_month(str(w["end"]))
    if "exclusions" in data:
        ex = data["exclusions"] or {}
        kw["exclusions"] = Exclusions(
            harbors=tuple(ex.get("harbors", ())),
            classifications=tuple(ex.get("classifications", ())),
            metiers=tuple(ex.get("metiers", ())),
        )
    if "imputation" in data:
        imp = data["imputation"]
        kw["imputation"] = None if imp is None else Imputation(
            gap=_range(imp.get("gap"), "imputation.gap"),
            donor=_range(imp.get("donor"), "imputation.donor"),
            basis=_range(imp.get("basis"), "imputation.basis"),
        )
    if "method" in data:
        m = data["method"]
        if isinstance(m, str):
            m = {"name": m}
        kw["method"] = MethodSpec(m.get("name"), m.get("param"), bool(m.get("bonferroni", False)))
    if "years" in data:
        y = data["years"]
        kw["year_start"], kw["year_end"] = int(y["start"]), int(y["end"])
    for key in ("zero_fill", "renormalize"):
        if key in data:
            kw[key] = bool(data[key])
    for key in ("walk_length", "top_count"):
        if key in data:
            kw[key] = int(data[key])
    if "output_dir" in data:
        kw["output_dir"] = base_dir / data["output_dir"]
    if "formats" in data:
        kw["formats"] = tuple(data["formats"])
    if data.get("sweep") is not None:
        s = data["sweep"]
        kw["sweep"] = SweepSpec(
            k_values=tuple(int(k) for k in s.get("k", DEFAULT_K)),
            eps_values=tuple(float(e) for e in s.get("eps", DEFAULT_EPS)),
            alpha=s.get("alpha", 0.05),
            weighted=bool(s.get("weighted", True)),
        )
    try:
        return PipelineConfig(**kw)
    except (KeyError, TypeError) as exc:
        raise InputError(f"invalid config: {exc}") from None


def load_config(path) -> PipelineConfig:
    """Load a YAML config; relative paths resolve against the file's directory."""
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    if data is not None and not isinstance(data, Mapping):
        raise InputError(f"{path}: config must be a mapping")
    try:
        return config_from_mapping(data or {}, path.parent)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"{path}: invalid config: {exc}") from None
