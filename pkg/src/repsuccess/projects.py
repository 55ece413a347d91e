"""Replication-project data on the correlation scale.

Correlations are mapped to Fisher's z scale, atanh(r), where the estimate is
approximately normal with variance 1/(n - 3). Each record then becomes a
:class:`~repsuccess.sceptical.StudyPair` and is assessed like any other.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import DomainError
from .sceptical import (
    AssessmentResult,
    StudyPair,
    SuccessLevel,
    alpha_prime,
    assess,
    level_from_limiting_res,
    success_two_trials,
)

CSV_COLUMNS = ("study_id", "project", "ro", "rr", "no", "nr")


class DatasetError(DomainError):
    """A project CSV is malformed. ``errors`` lists one message per bad row."""

    def __init__(self, errors: Sequence[str]):
        super().__init__("invalid project data:\n  " + "\n  ".join(errors))
        self.errors = list(errors)


@dataclass(frozen=True)
class ProjectRecord:
    study_id: str
    project: str
    r_o: float
    r_r: float
    n_o: int
    n_r: int

    def __post_init__(self):
        for name in ("r_o", "r_r"):
            r = float(getattr(self, name))
            if not -1.0 < r < 1.0:
                raise DomainError(f"{name} must lie strictly inside (-1, 1), got {r!r}")
            object.__setattr__(self, name, r)
        for name in ("n_o", "n_r"):
            n = getattr(self, name)
            if isinstance(n, float):
                if not n.is_integer():
                    raise DomainError(f"{name} must be an integer, got {n!r}")
                n = int(n)
            if not n > 3:
                raise DomainError(f"{name} must exceed 3, got {n!r}")
            object.__setattr__(self, name, n)


@dataclass(frozen=True)
class ProjectSummary:
    project: str
    d_median: float
    d_q25: float
    d_q75: float
    ttr_success_rate: float
    rs_success_rate: float
    discrepant_count: int
    total: int


class DiscrepantRow(NamedTuple):
    study_id: str
    c: float
    d: float
    p_o: float
    p_r: float
    p_s_tilde: Optional[float]


class SweepRow(NamedTuple):
    d_inf: float
    alpha_prime: float
    rs_rate: float
    ttr_rate_at_alpha_prime: float
    both_rate: float


def fisher_transform(r: float) -> float:
    r = float(r)
    if not -1.0 < r < 1.0:
        raise DomainError(f"correlation must lie strictly inside (-1, 1), got {r!r}")
    return math.atanh(r)


def pair_from_record(rec: ProjectRecord) -> StudyPair:
    """z = atanh(r) sqrt(n - 3) for each study and c = (n_r - 3) / (n_o - 3)."""
    se_o2 = 1.0 / (rec.n_o - 3)
    se_r2 = 1.0 / (rec.n_r - 3)
    return StudyPair(
        fisher_transform(rec.r_o) / math.sqrt(se_o2),
        fisher_transform(rec.r_r) / math.sqrt(se_r2),
        se_o2 / se_r2,
    )


def _parse_int(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        raise ValueError(f"{text!r} is not an integer")
    return int(value)


def read_project_csv(source: Union[str, Path, io.TextIOBase]) -> List[ProjectRecord]:
    """Read records from a CSV with header ``study_id,project,ro,rr,no,nr``.

    Every invalid row is reported (by 1-based line number, header = line 1);
    nothing is skipped silently.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return read_project_csv(fh)
    reader = csv.DictReader(source)
    header = reader.fieldnames or []
    missing = [col for col in CSV_COLUMNS if col not in header]
    if missing:
        raise DatasetError([f"line 1: missing column(s) {', '.join(missing)}"])
    records, errors = [], []
    for lineno, row in enumerate(reader, start=2):
        try:
            records.append(
                ProjectRecord(
                    study_id=row["study_id"].strip(),
                    project=row["project"].strip(),
                    r_o=float(row["ro"]),
                    r_r=float(row["rr"]),
                    n_o=_parse_int(row["no"]),
                    n_r=_parse_int(row["nr"]),
                )
            )
        except (TypeError, ValueError, AttributeError) as exc:
            errors.append(f"line {lineno}: {exc}")
    if errors:
        raise DatasetError(errors)
    return records


def _quartiles(values: List[float]) -> Tuple[float, float, float]:
    # "inclusive" is the linear interpolation rule (type 7)
    if len(values) == 1:
        return values[0], values[0], values[0]
    q25, q50, q75 = statistics.quantiles(values, n=4, method="inclusive")
    return q25, q50, q75


def _project_name(records: Sequence[ProjectRecord]) -> str:
    names = list(dict.fromkeys(rec.project for rec in records))
    return names[0] if len(names) == 1 else " + ".join(names)


def analyze_project(
    records: Sequence[ProjectRecord], level: SuccessLevel
) -> Tuple[List[AssessmentResult], ProjectSummary]:
    """Assess each record and summarise the project.

    The relative effect size quantiles are taken over the Fisher-z ratios,
    ignoring records whose original correlation is exactly zero.
    """
    if not records:
        raise DomainError("no records to analyse")
    results = [assess(pair_from_record(rec), level) for rec in records]
    ds = [res.d for res in results if not math.isnan(res.d)]
    q25, med, q75 = _quartiles(ds) if ds else (math.nan,) * 3
    n = len(results)
    summary = ProjectSummary(
        project=_project_name(records),
        d_median=med,
        d_q25=q25,
        d_q75=q75,
        ttr_success_rate=sum(r.ttr_success for r in results) / n,
        rs_success_rate=sum(r.rs_success for r in results) / n,
        discrepant_count=sum(r.discrepant for r in results),
        total=n,
    )
    return results, summary


def group_by_project(records: Iterable[ProjectRecord]) -> Dict[str, List[ProjectRecord]]:
    groups: Dict[str, List[ProjectRecord]] = {}
    for rec in records:
        groups.setdefault(rec.project, []).append(rec)
    return groups


def discrepant_report(
    records: Sequence[ProjectRecord], level: SuccessLevel, alpha: Optional[float] = None
) -> List[DiscrepantRow]:
    """Studies where replication success and the two-trials rule disagree."""
    rows = []
    for rec in records:
        pair = pair_from_record(rec)
        res = assess(pair, level, alpha)
        if res.discrepant:
            rows.append(DiscrepantRow(rec.study_id, pair.c, res.d, res.p_o, res.p_r, res.p_s_tilde))
    return rows


def dinf_sweep(
    records: Sequence[ProjectRecord], alpha: float, d_inf_grid: Iterable[float]
) -> List[SweepRow]:
    """Success rates as the limiting relative effect size varies.

    For each d_inf, replication success uses the level calibrated to d_inf at
    ``alpha``; the two-trials rule uses the equivalent level alpha'.
    """
    pairs = [pair_from_record(rec) for rec in records]
    n = len(pairs)
    if n == 0:
        raise DomainError("no records to analyse")
    table = []
    for d in d_inf_grid:
        level = level_from_limiting_res(alpha, d)
        a_prime = alpha_prime(alpha, d)
        rs = [assess(p, level).rs_success for p in pairs]
        ttr = [success_two_trials(p, a_prime) for p in pairs]
        table.append(
            SweepRow(
                d_inf=float(d),
                alpha_prime=a_prime,
                rs_rate=sum(rs) / n,
                ttr_rate_at_alpha_prime=sum(ttr) / n,
                both_rate=sum(a and b for a, b in zip(rs, ttr)) / n,
            )
        )
    return table


# -- report formatting ------------------------------------------------------

def format_p(p: Optional[float]) -> str:
    """Two significant figures, ``< 0.0001`` below 1e-4."""
    if p is None:
        return "undefined"
    if p < 1e-4:
        return "< 0.0001"
    return f"{p:.2g}"


def format_2dp(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.2f}"


def format_summary(summary: ProjectSummary) -> str:
    return (
        f"{summary.project}: d = {format_2dp(summary.d_median)} "
        f"[{format_2dp(summary.d_q25)}, {format_2dp(summary.d_q75)}], "
        f"2TR {100 * summary.ttr_success_rate:.1f}%, RS {100 * summary.rs_success_rate:.1f}%, "
        f"discrepant {summary.discrepant_count}/{summary.total}"
    )


def format_discrepant(row: DiscrepantRow) -> str:
    return (
        f"{row.study_id}: c = {format_2dp(row.c)}, d = {format_2dp(row.d)}, "
        f"p_o = {format_p(row.p_o)}, p_r = {format_p(row.p_r)}, "
        f"p_s_tilde = {format_p(row.p_s_tilde)}"
    )


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def result_rows(
    records: Sequence[ProjectRecord], results: Sequence[AssessmentResult]
) -> List[dict]:
    """Flat per-study rows: record identifiers followed by every assessment field."""
    rows = []
    for rec, res in zip(records, results):
        row = {"study_id": rec.study_id, "project": rec.project}
        row.update(res.to_dict())
        rows.append(row)
    return rows


def write_results_csv(rows: Sequence[dict], fh: io.TextIOBase) -> None:
    if not rows:
        return
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})


def to_json(obj) -> str:
    """JSON with full float precision; infinities become the strings ``"inf"``."""

    def convert(o):
        if isinstance(o, dict):
            return {k: convert(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)) and not hasattr(o, "_asdict"):
            return [convert(v) for v in o]
        if hasattr(o, "_asdict"):
            return convert(o._asdict())
        if hasattr(o, "__dataclass_fields__"):
            return convert(asdict(o))
        return _jsonable(o)

    return json.dumps(convert(obj), indent=2)
