"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here, not configurable.
"""

from __future__ import annotations

import math
import random
import time

import pytest

from corpus import group_a_corpus
from oracles import dp_min_effort, random_context, random_model, random_scenario
from tvusability.crawler import CrawlConfig, crawl_run
from tvusability.effort import Context, builtin_context
from tvusability.fixtures import cinemup_app, cinemup_scenarios, three_screen_app, three_screen_model
from tvusability.logs import ScenarioAggregate, action_stats, compare, exclude_outliers
from tvusability.model import ACTIONS, Action, Edge, InteractionModel, Node, Scenario, Waypoint, structurally_equal
from tvusability.paths import PathNotFound, ResolvedPath, resolve_path
from tvusability.simulator import generated_list, step
from tvusability.verify import Rule, Thresholds, builtin_thresholds, verify, verify_suite

DIRECTIONAL_FLAT = (Action.LEFT, Action.RIGHT, Action.UP)  # same delta in both parametrizations


def solve_composition(length: int, effort_initial: float, effort_adjusted: float) -> tuple[int, int, int, int]:
    """Unique nonnegative integer action counts (flat-directional, DOWN, OK, BACK)
    satisfying both parametrizations' efforts and the path length.

    Independent of the path search: plain enumeration over the integer
    linear system given by the two effort equations and the length equation.
    """
    solutions = []
    for ok in range(length + 1):
        for back in range(length + 1 - ok):
            for down in range(length + 1 - ok - back):
                flat = length - ok - back - down
                initial = 800 * (flat + down) + 2500 * ok + 1500 * back
                adjusted = 1000 * flat + 1250 * down + 2000 * ok + 1225 * back
                if initial == effort_initial and adjusted == effort_adjusted:
                    solutions.append((flat, down, ok, back))
    assert len(solutions) == 1, f"composition not unique: {solutions}"
    return solutions[0]


def composition_of(path: ResolvedPath) -> tuple[int, int, int, int]:
    counts = path.action_counts()
    flat = sum(counts.get(a, 0) for a in DIRECTIONAL_FLAT)
    return (flat, counts.get(Action.DOWN, 0), counts.get(Action.OK, 0), counts.get(Action.BACK, 0))


@pytest.fixture(scope="module")
def fixture_run():
    return crawl_run(cinemup_app())


@pytest.fixture(scope="module")
def fixture_model(fixture_run):
    return fixture_run.model


def test_effort_reproduction_exact(fixture_model):
    """Criterion: published per-scenario efforts reproduce exactly under both parametrizations."""
    targets = {
        "2": (23, 20100, 24250),
        "3": (7, 7300, 8000),
        "4": (60, 97000, 85275),
    }
    scenarios = {s.id: s for s in cinemup_scenarios()}
    started = time.perf_counter()
    for scenario_id, (length, initial_ms, adjusted_ms) in targets.items():
        composition = solve_composition(length, initial_ms, adjusted_ms)
        for context_name, expected in (("initial", initial_ms), ("adjusted", adjusted_ms)):
            path = resolve_path(fixture_model, scenarios[scenario_id], builtin_context(context_name))
            assert isinstance(path, ResolvedPath)
            assert path.length == length
            assert int(path.effort) == expected and path.effort == float(expected)
            assert composition_of(path) == composition
            # direct summation over the solved composition equals the target
            flat, down, ok, back = composition
            delta = builtin_context(context_name).delta
            by_hand = flat * delta[Action.LEFT] + down * delta[Action.DOWN] + ok * delta[Action.OK] + back * delta[Action.BACK]
            assert by_hand == float(expected)
    elapsed = time.perf_counter() - started
    print(f"PASS: effort reproduction exact (20100/7300/97000, 24250/8000/85275) in {elapsed*1000:.0f} ms")


GROUP_A = [
    ScenarioAggregate("2", 28090.0, 15310.52, 27.0, 15.89),
    ScenarioAggregate("3", 19164.0, 8095.88, 16.0, 7.34),
    ScenarioAggregate("4", 91527.0, 33128.95, 61.0, 18.67),
]
GROUP_B = [
    ScenarioAggregate("2", 32102.0, 17728.78, 30.0, 12.19),
    ScenarioAggregate("3", 17937.0, 9463.59, 16.0, 7.38),
    ScenarioAggregate("4", 85546.0, 20019.32, 60.0, 14.31),
]
INITIAL_METHOD = {"2": (20100.0, 23), "3": (7300.0, 7), "4": (97000.0, 60)}
ADJUSTED_METHOD = {"2": (24250.0, 23), "3": (8000.0, 7), "4": (85275.0, 60)}


def test_diff_reproduction():
    """Criterion: published DIFF_time and DIFF_stp values reproduce within 0.01 points."""
    cases = [
        (GROUP_A, INITIAL_METHOD, [71.56, 38.09, 105.98], [85.19, 43.75, 98.36]),
        (GROUP_A, ADJUSTED_METHOD, [86.33, 41.74, 93.17], [85.19, 43.75, 98.36]),
        (GROUP_B, ADJUSTED_METHOD, [75.54, 44.60, 99.68], [76.67, 43.75, 100.00]),
    ]
    checked = 0
    for aggregates, method, diff_time, diff_stp in cases:
        rows = compare(aggregates, method)
        for row, expected_time, expected_stp in zip(rows, diff_time, diff_stp):
            assert row.diff_time_pct == pytest.approx(expected_time, abs=0.01)
            assert row.diff_stp_pct == pytest.approx(expected_stp, abs=0.01)
            checked += 2
    print(f"PASS: DIFF reproduction ({checked} published percentages within 0.01 points)")


def test_threshold_behavior(fixture_model):
    """Criterion: scenario 4 flags under initial thresholds only; nr rule is strict at 1.5."""
    scenario4 = cinemup_scenarios()[2]
    flagged = verify(fixture_model, scenario4, builtin_context("initial"), builtin_thresholds("initial"))
    assert {f.rule for f in flagged.findings} == {Rule.PATH_LENGTH_EXCEEDED, Rule.EFFORT_EXCEEDED}
    clean = verify(fixture_model, scenario4, builtin_context("adjusted"), builtin_thresholds("adjusted"))
    assert clean.findings == ()

    wide = Thresholds(nr_threshold=1.5, path_len_threshold=10_000, effort_threshold=1e9)
    ctx = builtin_context("initial")

    # nr exactly 1.5 on a non-simple walk: no finding
    pair = InteractionModel(
        nodes=(Node("a"), Node("b")),
        edges=(Edge("e0", "a", "b", Action.RIGHT), Edge("e1", "b", "a", Action.LEFT)),
        start="a",
    )
    there_and_back = Scenario("nr15", (Waypoint.node("a"), Waypoint.node("b"), Waypoint.node("a")))
    report = verify(pair, there_and_back, ctx, wide)
    assert report.resolved.node_repetition == 1.5
    assert report.findings == ()

    # nr = 25/16 = 1.5625 on a 16-cycle walked one and a half times: finding
    ring = InteractionModel(
        nodes=tuple(Node(f"c{i}") for i in range(16)),
        edges=tuple(Edge(f"e{i}", f"c{i}", f"c{(i + 1) % 16}", Action.RIGHT) for i in range(16)),
        start="c0",
    )
    loop_and_half = Scenario(
        "nr15625", (Waypoint.node("c0"), Waypoint.node("c8"), Waypoint.node("c0"), Waypoint.node("c8"))
    )
    report = verify(ring, loop_and_half, ctx, wide)
    assert report.resolved.node_repetition == pytest.approx(1.5625)
    assert [f.rule for f in report.findings] == [Rule.NODE_REPETITION_EXCEEDED]
    print("PASS: threshold behavior (initial flags length+effort, adjusted clean, nr strict at 1.5)")


def test_path_search_optimality_property():
    """Criterion: resolver matches the bounded-walk minimum on 500+ random models in under 60 s."""
    rng = random.Random(0xC0FFEE)
    models = 500
    mismatches = 0
    resolved_count = 0
    started = time.perf_counter()
    for _ in range(models):
        model = random_model(rng, max_nodes=8, max_edges=20)
        scenario = random_scenario(rng, model)
        ctx = random_context(rng)
        bound = 2 * len(model.nodes) * len(scenario.waypoints)
        outcome = resolve_path(model, scenario, ctx)
        oracle = dp_min_effort(model, scenario, ctx, bound)
        if isinstance(outcome, PathNotFound):
            if oracle is not None:
                mismatches += 1
        else:
            resolved_count += 1
            if oracle is None or not math.isclose(outcome.effort, oracle, rel_tol=1e-9, abs_tol=1e-9):
                mismatches += 1
    elapsed = time.perf_counter() - started
    assert mismatches == 0
    assert elapsed < 60.0
    assert resolved_count > 100  # the sample actually exercises the search
    print(f"PASS: path-search optimality ({models} random models, {resolved_count} solvable, 0 mismatches, {elapsed:.1f} s)")


def test_crawler_oracle_equivalence():
    """Criterion: crawl reproduces the hand model; budget-500 crawl of a million-item list is fast."""
    crawled = crawl_run(three_screen_app()).model
    assert structurally_equal(crawled, three_screen_model())

    started = time.perf_counter()
    run = crawl_run(generated_list(1_000_000), CrawlConfig(node_budget=500))
    elapsed = time.perf_counter() - started
    assert len(run.model.nodes) == 500
    assert elapsed < 5.0
    print(f"PASS: crawler oracle equivalence (hand model matched; 10^6-item crawl budget 500 in {elapsed:.2f} s)")


def test_crawler_soundness_property(fixture_run):
    """Criterion: every emitted edge replays from its source state to its target state."""
    checked = 0
    runs = [
        (crawl_run(three_screen_app()), three_screen_app()),
        (fixture_run, cinemup_app()),
        (crawl_run(generated_list(300), CrawlConfig(node_budget=120)), generated_list(300)),
    ]
    for run, spec in runs:
        for edge in run.model.edges:
            state = run.states[edge.source]
            next_state, effect = step(spec, state, edge.action)
            assert effect.value != "NOOP"
            assert f"{next_state.screen}/{next_state.focus}" == edge.target
            checked += 1
    print(f"PASS: crawler soundness ({checked} edges replayed, 100%)")


def test_log_pipeline():
    """Criterion: exclusion counts, boundary strictness, and the two-point sample SD."""
    corpus = group_a_corpus()
    assert len(corpus) == 2696
    kept, excluded = exclude_outliers(corpus)
    assert (len(kept), len(excluded)) == (2647, 49)

    from tvusability.logs import LogStep

    boundary = [
        LogStep("p01", "2", Action.OK, 10000.0, True),
        LogStep("p01", "2", Action.OK, 10000.0001, True),
    ]
    kept_b, excluded_b = exclude_outliers(boundary)
    assert len(kept_b) == 1 and kept_b[0].duration_ms == 10000.0
    assert len(excluded_b) == 1

    two_point = action_stats(
        [LogStep("p01", "2", Action.RIGHT, 900.0, True), LogStep("p02", "2", Action.RIGHT, 1100.0, True)]
    )[Action.RIGHT]
    assert two_point.sd == pytest.approx(141.42, abs=0.01)
    print("PASS: log pipeline (2696 -> 49 excluded -> 2647 kept; strict 10 s boundary; SD 141.42)")


def test_infeasibility(fixture_model):
    """Criterion: a required action with UC = 0 yields INFEASIBLE_FOR_CONTEXT, never a finite effort."""
    no_down = Context(
        name="no-down",
        delta=builtin_context("adjusted").delta,
        uc={**{a: 1.0 for a in ACTIONS}, Action.DOWN: 0.0},
    )
    scenarios = cinemup_scenarios()
    result = verify_suite(fixture_model, scenarios, no_down)
    by_id = {r.scenario_id: r for r in result.reports}
    # scenario 2 requires DOWN into the TOP TV row
    assert [f.rule for f in by_id["2"].findings] == [Rule.INFEASIBLE_FOR_CONTEXT]
    assert by_id["2"].resolved is None  # no finite effort is ever reported

    outcome = resolve_path(fixture_model, scenarios[0], no_down)
    assert isinstance(outcome, PathNotFound)

    # and a synthetic single-route model for each action
    for action in ACTIONS:
        model = InteractionModel(
            nodes=(Node("a"), Node("b")),
            edges=(Edge("only", "a", "b", action),),
            start="a",
        )
        ctx = Context(
            name=f"no-{action.value.lower()}",
            delta={a: 1000.0 for a in ACTIONS},
            uc={**{a: 1.0 for a in ACTIONS}, action: 0.0},
        )
        report = verify(model, Scenario("t", (Waypoint.node("a"), Waypoint.node("b"))), ctx)
        assert [f.rule for f in report.findings] == [Rule.INFEASIBLE_FOR_CONTEXT]
        assert report.resolved is None
    print("PASS: infeasibility (UC=0 on a required action is always INFEASIBLE_FOR_CONTEXT)")
