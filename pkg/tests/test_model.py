from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tvusability.model import (
    ACTIONS,
    Action,
    Edge,
    InteractionModel,
    ModelError,
    Node,
    NodeKind,
    Scenario,
    Waypoint,
    load_model,
    load_scenarios,
    models_equal,
    save_model,
    save_scenarios,
    scenario_violations,
    structurally_equal,
    validate,
)


def doc_bytes(nodes, edges, start) -> bytes:
    return json.dumps({"nodes": nodes, "edges": edges, "start": start}).encode()


def test_single_node_model_is_its_own_end_node():
    model = load_model(doc_bytes([{"id": "home"}], [], "home"))
    assert model.start == "home"
    assert model.end_nodes == {"home"}
    assert validate(model) == []


def test_dangling_source_rejected():
    doc = doc_bytes(
        [{"id": "home"}],
        [{"id": "e1", "source": "ghost", "target": "home", "action": "OK"}],
        "home",
    )
    with pytest.raises(ModelError, match="dangling|unknown"):
        load_model(doc)


def test_missing_start_rejected():
    with pytest.raises(ModelError, match="start"):
        load_model(doc_bytes([{"id": "home"}], [], "elsewhere"))


def test_unknown_action_rejected_with_location():
    doc = doc_bytes(
        [{"id": "a"}, {"id": "b"}],
        [{"id": "e1", "source": "a", "target": "b", "action": "PRESS"}],
        "a",
    )
    with pytest.raises(ModelError, match=r"edges\[0\].*PRESS"):
        load_model(doc)


def test_duplicate_source_action_listed_by_validate():
    model = InteractionModel(
        nodes=(Node("a"), Node("b")),
        edges=(Edge("e1", "a", "b", Action.UP), Edge("e2", "a", "a", Action.UP)),
        start="a",
    )
    codes = [v.code for v in validate(model)]
    assert "duplicate-action" in codes


def test_unreachable_node_is_warning_not_error():
    model = InteractionModel(nodes=(Node("a"), Node("island")), edges=(), start="a")
    violations = validate(model)
    assert [v.code for v in violations] == ["unreachable"]
    assert not violations[0].fatal
    # loads fine: warnings don't block
    reloaded = load_model(save_model(model))
    assert models_equal(reloaded, model)


def test_simple_loop_round_trips():
    model = InteractionModel(
        nodes=(Node("a"),),
        edges=(Edge("loop", "a", "a", Action.OK),),
        start="a",
    )
    reloaded = load_model(save_model(model))
    assert models_equal(reloaded, model)
    assert reloaded.edges[0].source == reloaded.edges[0].target == "a"


def test_end_nodes_update_with_edges():
    bare = InteractionModel(nodes=(Node("a"), Node("b")), edges=(), start="a")
    assert bare.end_nodes == {"a", "b"}
    wired = InteractionModel(
        nodes=bare.nodes, edges=(Edge("e1", "a", "b", Action.RIGHT),), start="a"
    )
    assert wired.end_nodes == {"b"}


def test_three_screen_fixture_counts():
    # hand-transcribed example: 3 screens, 5 focusable nodes, 11 transitions
    from tvusability.fixtures import three_screen_model

    hand = three_screen_model()
    assert len(hand.nodes) == 5
    assert len(hand.edges) == 11
    assert validate(hand) == []
    reloaded = load_model(save_model(hand))
    assert models_equal(reloaded, hand)


def test_structural_equality_ignores_edge_ids():
    base = InteractionModel(
        nodes=(Node("a"), Node("b")),
        edges=(Edge("x", "a", "b", Action.OK),),
        start="a",
    )
    renamed = InteractionModel(
        nodes=(Node("a"), Node("b")),
        edges=(Edge("y", "a", "b", Action.OK),),
        start="a",
    )
    assert structurally_equal(base, renamed)
    assert not models_equal(base, renamed)
    relabeled = InteractionModel(
        nodes=(Node("a"), Node("b", label="other")),
        edges=(Edge("x", "a", "b", Action.OK),),
        start="a",
    )
    assert not structurally_equal(base, relabeled)


def test_scenario_documents_round_trip():
    scenario = Scenario(
        id="s1",
        waypoints=(Waypoint.node("a"), Waypoint.edge("e1"), Waypoint.node("b")),
    )
    loaded = load_scenarios(save_scenarios([scenario]))
    assert loaded == [scenario]


def test_scenario_violations_flag_unknown_and_edge_ends():
    model = InteractionModel(nodes=(Node("a"), Node("b")), edges=(Edge("e1", "a", "b", Action.OK),), start="a")
    bad = Scenario(id="x", waypoints=(Waypoint.edge("e1"), Waypoint.node("ghost")))
    codes = {v.code for v in scenario_violations(model, bad)}
    assert codes == {"unknown-waypoint", "waypoint-end-kind"}


# --- property: load∘save is identity on structure ---------------------------

_ids = st.lists(
    st.text(alphabet=st.characters(codec="utf-8", exclude_characters="\x00"), min_size=1, max_size=8),
    min_size=1,
    max_size=6,
    unique=True,
)


@st.composite
def interaction_models(draw):
    ids = draw(_ids)
    nodes = tuple(
        Node(
            id=nid,
            kind=draw(st.sampled_from(list(NodeKind))),
            label=draw(st.text(max_size=12)),
        )
        for nid in ids
    )
    pairs = draw(
        st.lists(
            st.tuples(st.sampled_from(ids), st.sampled_from(list(ACTIONS))),
            unique=True,
            max_size=12,
        )
    )
    edges = tuple(
        Edge(id=f"e{i}", source=source, target=draw(st.sampled_from(ids)), action=action)
        for i, (source, action) in enumerate(pairs)
    )
    return InteractionModel(nodes=nodes, edges=edges, start=draw(st.sampled_from(ids)))


@given(interaction_models())
def test_load_save_identity(model):
    assert validate(model) == [] or all(not v.fatal for v in validate(model))
    reloaded = load_model(save_model(model))
    assert models_equal(reloaded, model)
    assert reloaded.end_nodes == model.end_nodes
