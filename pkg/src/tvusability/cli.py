"""Batch command-line entry point.

Exit codes make the tool CI-friendly: 0 means every verification rule was
satisfied, 1 means at least one finding, 2 means a usage or data error.
Report documents are deterministic for identical inputs; the single
timestamp header can be suppressed with --no-timestamp.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import fixtures
from .crawler import CrawlConfig, CrawlConfigError, crawl_run, crawl_stats
from .effort import BUILTIN_CONTEXT_NAMES, Context, ContextError, builtin_context, load_context
from .logs import (
    DEFAULT_EXCLUDE_MS,
    ComparisonError,
    LogError,
    action_stats,
    action_stats_table,
    aggregate_scenarios,
    calibrate,
    calibration_table,
    compare,
    comparison_table,
    exclude_outliers,
    load_logs,
)
from .model import ModelError, load_model, load_scenarios, save_model, save_scenarios
from .simulator import AppSpecError, load_app, save_app
from .verify import (
    BUILTIN_THRESHOLD_NAMES,
    ThresholdError,
    Thresholds,
    builtin_thresholds,
    load_thresholds,
    suite_table,
    suite_to_json,
    verify_suite,
)

USAGE_ERROR = 2


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, AppSpecError, ContextError, ThresholdError, LogError, ComparisonError, CrawlConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvusability",
        description="Crawl a simulated TV app, verify user scenarios against the model, analyze session logs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crawl", help="explore an app spec and emit its interaction model")
    p.add_argument("--app", required=True, help="app spec document (JSON)")
    p.add_argument("--budget", type=int, default=None, help="node budget terminating the exploration")
    p.add_argument("--out", required=True, help="output path for the model document")
    p.add_argument("--stats-json", default=None, help="optional path for the crawl stats document")
    p.set_defaults(func=_cmd_crawl)

    p = sub.add_parser("verify", help="verify scenarios against a model under a context and thresholds")
    p.add_argument("--model", required=True, help="model document (JSON)")
    p.add_argument("--scenarios", required=True, help="scenario document (JSON object or array)")
    p.add_argument("--context", default="adjusted", help=f"builtin context name ({', '.join(BUILTIN_CONTEXT_NAMES)})")
    p.add_argument("--delta-csv", default=None, help="custom context: per-action delta/UC CSV")
    p.add_argument("--factors-csv", default=None, help="custom context: device/environment factors CSV")
    p.add_argument(
        "--thresholds",
        default="adjusted",
        help=f"builtin thresholds name ({', '.join(BUILTIN_THRESHOLD_NAMES)}) or a JSON file path",
    )
    p.add_argument("--report-json", default=None, help="optional path for the report document")
    p.add_argument("--no-timestamp", action="store_true", help="omit the generated_at header for byte-stable output")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("analyze-logs", help="per-action statistics from a session log CSV")
    p.add_argument("--logs", required=True, help="session log CSV")
    p.add_argument("--exclude-ms", type=float, default=DEFAULT_EXCLUDE_MS, help="outlier exclusion threshold")
    p.set_defaults(func=_cmd_analyze_logs)

    p = sub.add_parser("compare", help="compare user logs with a verification report document")
    p.add_argument("--logs", required=True, help="session log CSV")
    p.add_argument("--reports", required=True, help="report document produced by verify --report-json")
    p.add_argument("--exclude-ms", type=float, default=DEFAULT_EXCLUDE_MS, help="outlier exclusion threshold")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("calibrate", help="suggest per-action default efforts from a session log CSV")
    p.add_argument("--logs", required=True, help="session log CSV")
    p.add_argument("--exclude-ms", type=float, default=DEFAULT_EXCLUDE_MS, help="outlier exclusion threshold")
    p.add_argument("--min-samples", type=int, default=30, help="minimum valid steps for a suggestion")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("serve", help="run the HTTP service for the web UI and automation")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--static", default=None, help="directory of built web UI assets to serve at /")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("fixture", help="emit a bundled fixture document")
    p.add_argument("name", choices=fixtures.FIXTURE_NAMES)
    p.add_argument("--out", default=None, help="output path (stdout when omitted)")
    p.set_defaults(func=_cmd_fixture)

    return parser


def _cmd_crawl(args) -> int:
    spec = load_app(Path(args.app).read_bytes())
    run = crawl_run(spec, CrawlConfig(node_budget=args.budget))
    Path(args.out).write_bytes(save_model(run.model))
    stats = crawl_stats(run)
    print(
        f"nodes={stats.nodes} edges={stats.edges} end_nodes={stats.end_nodes} "
        f"actions_simulated={stats.actions_simulated} duration_s={stats.duration_s:.3f}"
    )
    if run.truncated:
        print("note: exploration stopped at the node budget", file=sys.stderr)
    if args.stats_json:
        doc = {
            "nodes": stats.nodes,
            "edges": stats.edges,
            "end_nodes": stats.end_nodes,
            "actions_simulated": stats.actions_simulated,
            "duration_s": stats.duration_s,
            "truncated": run.truncated,
        }
        Path(args.stats_json).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return 0


def _resolve_context(args) -> Context:
    if args.delta_csv or args.factors_csv:
        if not (args.delta_csv and args.factors_csv):
            raise ContextError("custom contexts need both --delta-csv and --factors-csv")
        return load_context(Path(args.delta_csv).read_bytes(), Path(args.factors_csv).read_bytes())
    return builtin_context(args.context)


def _resolve_thresholds(raw: str) -> Thresholds:
    if raw in BUILTIN_THRESHOLD_NAMES:
        return builtin_thresholds(raw)
    return load_thresholds(Path(raw).read_bytes())


def _cmd_verify(args) -> int:
    model = load_model(Path(args.model).read_bytes())
    scenarios = load_scenarios(Path(args.scenarios).read_bytes())
    ctx = _resolve_context(args)
    thresholds = _resolve_thresholds(args.thresholds)

    result = verify_suite(model, scenarios, ctx, thresholds)
    print(suite_table(result))
    if args.report_json:
        generated_at = None if args.no_timestamp else datetime.now(timezone.utc).isoformat(timespec="seconds")
        Path(args.report_json).write_bytes(suite_to_json(result, generated_at))

    if result.error_count:
        for entry in result.entries:
            if entry.error is not None:
                print(f"error: scenario {entry.scenario_id!r}: {entry.error}", file=sys.stderr)
        return USAGE_ERROR
    return 1 if result.has_findings else 0


def _cmd_analyze_logs(args) -> int:
    steps = load_logs(Path(args.logs).read_bytes())
    kept, excluded = exclude_outliers(steps, args.exclude_ms)
    print(f"steps={len(steps)} excluded={len(excluded)} analyzed={len(kept)} (threshold {args.exclude_ms:g} ms)")
    print()
    print(action_stats_table(action_stats(kept)))
    return 0


def _cmd_compare(args) -> int:
    steps = load_logs(Path(args.logs).read_bytes())
    kept, _ = exclude_outliers(steps, args.exclude_ms)
    aggregates = aggregate_scenarios(kept)

    doc = json.loads(Path(args.reports).read_text(encoding="utf-8"))
    method: dict[str, tuple[float, int]] = {}
    for report in doc.get("reports", []):
        resolved = report.get("resolved")
        if resolved is not None and resolved.get("effort_ms") != "INFEASIBLE":
            method[report["scenario"]] = (float(resolved["effort_ms"]), int(resolved["length"]))
    rows = compare(aggregates, method)
    print(comparison_table(rows))
    return 0


def _cmd_calibrate(args) -> int:
    steps = load_logs(Path(args.logs).read_bytes())
    kept, excluded = exclude_outliers(steps, args.exclude_ms)
    print(f"steps={len(steps)} excluded={len(excluded)} analyzed={len(kept)}")
    print()
    print(calibration_table(calibrate(kept, min_samples=args.min_samples)))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(static_dir=args.static), host=args.host, port=args.port)
    return 0


def _cmd_fixture(args) -> int:
    if args.name == "three-screen-app":
        payload = save_app(fixtures.three_screen_app())
    elif args.name == "three-screen-model":
        payload = save_model(fixtures.three_screen_model())
    elif args.name == "cinemup-app":
        payload = save_app(fixtures.cinemup_app())
    else:
        payload = save_scenarios(fixtures.cinemup_scenarios())
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
