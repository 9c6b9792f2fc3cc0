"""User-session log analytics: statistics, method-vs-users comparison, calibration.

Steps longer than the exclusion threshold (default 10 s) are treated as the
user having left the interaction and are dropped before any statistics.
Standard deviations are sample SDs (n-1 denominator). Comparison
percentages are rounded half-up to two decimals, matching the published
tables' convention.
"""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import IO, Iterable, Mapping, Sequence

from .model import ACTIONS, Action
from .verify import VerificationReport

DEFAULT_EXCLUDE_MS = 10000.0


class LogError(ValueError):
    pass


class ComparisonError(ValueError):
    pass


@dataclass(frozen=True)
class LogStep:
    """One recorded button press; `valid` is False when the press had no effect."""

    participant: str
    scenario: str
    action: Action
    duration_ms: float
    valid: bool = True

    def __post_init__(self):
        if not self.duration_ms > 0:
            raise LogError(f"step duration must be > 0, got {self.duration_ms}")


def load_logs(source: bytes | str | IO) -> list[LogStep]:
    """Parse the session-log CSV (header participant,scenario,action,duration_ms,valid)."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    reader = csv.DictReader(io.StringIO(text))
    expected = ("participant", "scenario", "action", "duration_ms", "valid")
    if tuple(reader.fieldnames or ()) != expected:
        raise LogError(f"log CSV: expected header {','.join(expected)!r}, got {','.join(reader.fieldnames or ())!r}")

    steps: list[LogStep] = []
    for rownum, row in enumerate(reader, start=2):
        if any(row[c] is None for c in expected):
            raise LogError(f"log CSV row {rownum}: wrong number of fields")
        try:
            action = Action(row["action"])
        except ValueError:
            raise LogError(f"log CSV row {rownum}: unknown action {row['action']!r}") from None
        try:
            duration = float(row["duration_ms"])
        except ValueError:
            raise LogError(f"log CSV row {rownum}: duration_ms must be a number, got {row['duration_ms']!r}") from None
        raw_valid = row["valid"].strip().lower()
        if raw_valid not in ("true", "false"):
            raise LogError(f"log CSV row {rownum}: valid must be 'true' or 'false', got {row['valid']!r}")
        try:
            steps.append(
                LogStep(
                    participant=row["participant"],
                    scenario=row["scenario"],
                    action=action,
                    duration_ms=duration,
                    valid=raw_valid == "true",
                )
            )
        except LogError as exc:
            raise LogError(f"log CSV row {rownum}: {exc}") from None
    return steps


def save_logs(steps: Iterable[LogStep]) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(("participant", "scenario", "action", "duration_ms", "valid"))
    for s in steps:
        duration = int(s.duration_ms) if float(s.duration_ms).is_integer() else s.duration_ms
        writer.writerow((s.participant, s.scenario, s.action.value, duration, "true" if s.valid else "false"))
    return out.getvalue().encode("utf-8")


def exclude_outliers(
    steps: Sequence[LogStep], threshold_ms: float = DEFAULT_EXCLUDE_MS
) -> tuple[list[LogStep], list[LogStep]]:
    """Split steps into (kept, excluded); strictly longer than the threshold is out."""
    kept: list[LogStep] = []
    excluded: list[LogStep] = []
    for s in steps:
        (excluded if s.duration_ms > threshold_ms else kept).append(s)
    return kept, excluded


@dataclass(frozen=True)
class ActionStats:
    action: Action
    avg_time_ms: float | None
    valid: int
    invalid: int
    sd: float | None
    note: str = ""

    @property
    def count(self) -> int:
        return self.valid + self.invalid


def action_stats(steps: Sequence[LogStep]) -> dict[Action, ActionStats]:
    """Per-action mean/SD over the retained steps, with valid/invalid counts.

    Averages run over valid and invalid presses alike (an ineffective press
    still cost the user its duration). Actions without data are flagged
    rather than omitted, mirroring how sparsely used buttons are left out
    of the evaluation.
    """
    table: dict[Action, ActionStats] = {}
    for action in ACTIONS:
        mine = [s for s in steps if s.action is action]
        durations = [s.duration_ms for s in mine]
        valid = sum(1 for s in mine if s.valid)
        invalid = len(mine) - valid
        if not durations:
            table[action] = ActionStats(action, None, 0, 0, None, note="insufficient data")
        elif len(durations) == 1:
            table[action] = ActionStats(action, durations[0], valid, invalid, 0.0, note="single sample")
        else:
            table[action] = ActionStats(
                action, statistics.fmean(durations), valid, invalid, statistics.stdev(durations)
            )
    return table


@dataclass(frozen=True)
class ScenarioAggregate:
    """Per-scenario user-side aggregates: completion time and step count, over participants."""

    scenario_id: str
    avg_time_ms: float
    avg_time_sd: float
    avg_stp: float
    avg_stp_sd: float
    participants: int = 0


def aggregate_scenarios(steps: Sequence[LogStep]) -> list[ScenarioAggregate]:
    """Fold steps into per-participant scenario totals, then average per scenario."""
    totals: dict[str, dict[str, tuple[float, int]]] = {}
    for s in steps:
        per_user = totals.setdefault(s.scenario, {})
        time_sum, count = per_user.get(s.participant, (0.0, 0))
        per_user[s.participant] = (time_sum + s.duration_ms, count + 1)

    aggregates = []
    for scenario_id in sorted(totals):
        times = [t for t, _ in totals[scenario_id].values()]
        counts = [float(c) for _, c in totals[scenario_id].values()]
        aggregates.append(
            ScenarioAggregate(
                scenario_id=scenario_id,
                avg_time_ms=statistics.fmean(times),
                avg_time_sd=statistics.stdev(times) if len(times) > 1 else 0.0,
                avg_stp=statistics.fmean(counts),
                avg_stp_sd=statistics.stdev(counts) if len(counts) > 1 else 0.0,
                participants=len(times),
            )
        )
    return aggregates


@dataclass(frozen=True)
class ComparisonRow:
    scenario_id: str
    avg_time_ms: float
    avg_time_sd: float
    avg_stp: float
    avg_stp_sd: float
    effort_ms: float
    path_length: int
    diff_time_pct: float
    diff_stp_pct: float


def round_half_up(value: float | Decimal, places: int = 2) -> float:
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(str(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _pct(numerator: float, denominator: float) -> float:
    ratio = Decimal(str(numerator)) / Decimal(str(denominator)) * 100
    return float(ratio.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def compare(
    aggregates: Sequence[ScenarioAggregate],
    method: Iterable[VerificationReport] | Mapping[str, tuple[float, int]],
) -> list[ComparisonRow]:
    """Compare user aggregates against the automated analysis, per scenario.

    diff_time = effort / avg_time * 100%, diff_stp = path length / avg steps
    * 100%, both rounded half-up to two decimals.
    """
    if isinstance(method, Mapping):
        results = dict(method)
    else:
        results = {}
        for report in method:
            if report.resolved is not None:
                results[report.scenario_id] = (report.resolved.effort, report.resolved.length)

    rows = []
    for agg in aggregates:
        if agg.scenario_id not in results:
            raise ComparisonError(f"no verification result for scenario {agg.scenario_id!r}")
        effort, length = results[agg.scenario_id]
        if not (effort < float("inf")):
            raise ComparisonError(f"scenario {agg.scenario_id!r} has no finite effort to compare")
        rows.append(
            ComparisonRow(
                scenario_id=agg.scenario_id,
                avg_time_ms=agg.avg_time_ms,
                avg_time_sd=agg.avg_time_sd,
                avg_stp=agg.avg_stp,
                avg_stp_sd=agg.avg_stp_sd,
                effort_ms=effort,
                path_length=length,
                diff_time_pct=_pct(effort, agg.avg_time_ms),
                diff_stp_pct=_pct(length, agg.avg_stp),
            )
        )
    return rows


@dataclass(frozen=True)
class CalibrationSuggestion:
    action: Action
    suggested_delta_ms: int | None
    sample_size: int
    mean_ms: float | None
    note: str = ""


def calibrate(steps: Sequence[LogStep], min_samples: int = 30) -> list[CalibrationSuggestion]:
    """Suggest per-action default efforts from observed valid-step durations.

    The suggestion is the mean duration rounded to the nearest 25 ms.
    Actions with fewer than `min_samples` valid steps get no suggestion.
    Suggestions are advisory: published adjusted values show judgment beyond
    averaging, so nothing is auto-applied.
    """
    suggestions = []
    for action in ACTIONS:
        durations = [s.duration_ms for s in steps if s.action is action and s.valid]
        if len(durations) < min_samples:
            suggestions.append(
                CalibrationSuggestion(
                    action,
                    None,
                    len(durations),
                    statistics.fmean(durations) if durations else None,
                    note="insufficient data",
                )
            )
            continue
        mean = statistics.fmean(durations)
        quarter = Decimal(str(mean)) / 25
        suggested = int(quarter.quantize(Decimal(1), rounding=ROUND_HALF_UP)) * 25
        suggestions.append(CalibrationSuggestion(action, suggested, len(durations), mean))
    return suggestions


# --- plain-text tables -------------------------------------------------------

def _render(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i]) for i in range(len(headers))]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    for r in rows:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(len(headers))))
    return "\n".join(lines)


def _num(value: float | None, fmt: str = "{:.2f}") -> str:
    if value is None:
        return "-"
    if float(value).is_integer():
        return str(int(value))
    return fmt.format(value)


def action_stats_table(table: Mapping[Action, ActionStats]) -> str:
    rows = []
    for action in ACTIONS:
        s = table[action]
        rows.append(
            (action.value, _num(s.avg_time_ms), str(s.valid), str(s.invalid), _num(s.sd), s.note or "")
        )
    return _render(("input action", "avg. time [ms]", "valid", "invalid", "avg. time SD", "note"), rows)


def comparison_table(rows: Sequence[ComparisonRow]) -> str:
    rendered = [
        (
            r.scenario_id,
            _num(r.avg_time_ms),
            _num(r.avg_time_sd),
            _num(r.avg_stp),
            _num(r.avg_stp_sd),
            _num(r.effort_ms),
            str(r.path_length),
            f"{r.diff_time_pct:.2f}%",
            f"{r.diff_stp_pct:.2f}%",
        )
        for r in rows
    ]
    headers = (
        "ID of t",
        "avg_time [ms]",
        "avg_time SD",
        "avg_stp",
        "avg_stp SD",
        "E(p(t),C)",
        "|p(t)|",
        "DIFF_time",
        "DIFF_stp",
    )
    return _render(headers, rendered)


def calibration_table(suggestions: Sequence[CalibrationSuggestion]) -> str:
    rows = [
        (
            s.action.value,
            str(s.suggested_delta_ms) if s.suggested_delta_ms is not None else "-",
            str(s.sample_size),
            _num(s.mean_ms),
            s.note or "",
        )
        for s in suggestions
    ]
    return _render(("action", "suggested delta [ms]", "samples", "mean [ms]", "note"), rows)
