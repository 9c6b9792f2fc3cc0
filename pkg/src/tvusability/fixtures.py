"""Bundled example apps, their hand-authored models, and demo scenarios.

`three_screen_app` is the small abstract example: three screens, a nested
container pair on two of them, a self-loop, and BACK transitions. Its
hand-transcribed model is the oracle the crawler is checked against.

`cinemup_app` is a movie-browser stand-in with a "Popular" section of photo
galleries plus "TOP TV" and "TOP RATED" movie lists whose detail screens
carry genre metadata. Its three bundled scenarios realize paths of 23, 7
and 60 steps.
"""

from __future__ import annotations

from .model import Action, Edge, InteractionModel, Node, NodeKind, Scenario, Waypoint
from .simulator import (
    AppSpec,
    FocusableElement,
    InternalToggle,
    OpenScreen,
    Screen,
    auto_wire_list,
)

L, R, U, D = Action.LEFT, Action.RIGHT, Action.UP, Action.DOWN


def three_screen_app() -> AppSpec:
    menu = Screen(
        id="menu",
        elements=(
            FocusableElement(id="browse", nav={R: "settings"}, ok=OpenScreen("player", "volume")),
            FocusableElement(id="settings", nav={L: "browse"}, ok=OpenScreen("about", "info")),
        ),
    )
    player = Screen(
        id="player",
        elements=(
            FocusableElement(id="volume", nav={R: "subtitles"}, ok=InternalToggle("muted")),
            FocusableElement(id="subtitles", nav={L: "volume"}, ok=OpenScreen("about", "info")),
        ),
    )
    about = Screen(id="about", elements=(FocusableElement(id="info"),))
    return AppSpec(screens=(menu, player, about), start_screen="menu", start_focus="browse")


def three_screen_model() -> InteractionModel:
    """Hand transcription of the model the three-screen app induces.

    BACK from about/info goes to menu/settings: breadth-first discovery
    reaches the about screen first through the menu, so that is the history
    the crawler probes BACK from.
    """
    container = NodeKind.CONTAINER
    nodes = (
        Node("menu/browse", container),
        Node("menu/settings", container),
        Node("player/volume", container),
        Node("about/info", NodeKind.SCREEN),
        Node("player/subtitles", container),
    )
    e = lambda source, action, target: Edge(f"{source}:{action.value}", source, target, action)
    edges = (
        e("menu/browse", R, "menu/settings"),
        e("menu/browse", Action.OK, "player/volume"),
        e("menu/settings", L, "menu/browse"),
        e("menu/settings", Action.OK, "about/info"),
        e("player/volume", R, "player/subtitles"),
        e("player/volume", Action.OK, "player/volume"),
        e("player/volume", Action.BACK, "menu/browse"),
        e("about/info", Action.BACK, "menu/settings"),
        e("player/subtitles", L, "player/volume"),
        e("player/subtitles", Action.OK, "about/info"),
        e("player/subtitles", Action.BACK, "menu/browse"),
    )
    return InteractionModel(nodes=nodes, edges=edges, start="menu/browse")


_TOP_RATED_TITLES = {
    1: ("Quiet Harbor", "drama"),
    2: ("The Late Shift", "comedy"),
    3: ("Iron Meridian", "action"),
    4: ("Paper Lanterns", "drama"),
    5: ("Double Booked", "comedy"),
    6: ("Cold Orbit", "sci-fi"),
    7: ("The Grand Detour", "comedy"),
    8: ("Silent Ledger", "thriller"),
    9: ("Hometown Derby", "comedy"),
    10: ("Glass Valley", "drama"),
    11: ("Night Market", "documentary"),
    12: ("Borrowed Tuxedo", "comedy"),
    13: ("The Cartographer", "adventure"),
    14: ("Last Rehearsal", "drama"),
    15: ("Checkmate Alley", "thriller"),
    16: ("Room For Two", "comedy"),
    17: ("The Signalman", "mystery"),
    18: ("Festival Season", "comedy"),
    19: ("Northern Wake", "drama"),
    20: ("The Apartment Swap", "comedy"),
}


def cinemup_app(top_tv_count: int = 22, top_rated_count: int = 20) -> AppSpec:
    """Movie-browser app: Popular galleries and two movie lists with details.

    The TOP RATED list opens on its last (rightmost) item, so inspecting the
    whole list means iterating left; the TOP TV list opens on its first.
    """
    home = Screen(
        id="home",
        elements=(
            FocusableElement(
                id="popular",
                label="Popular",
                nav={R: "top-rated", D: "top-tv"},
                ok=OpenScreen("popular", "pop-1"),
            ),
            FocusableElement(
                id="top-rated",
                label="TOP RATED",
                nav={L: "popular", D: "top-tv"},
                ok=OpenScreen("top-rated", f"rated-{top_rated_count}"),
            ),
            FocusableElement(
                id="top-tv",
                label="TOP TV",
                nav={U: "popular"},
                ok=OpenScreen("top-tv", "tv-1"),
            ),
        ),
    )

    popular = auto_wire_list(
        Screen(
            id="popular",
            elements=tuple(
                FocusableElement(
                    id=f"pop-{i}",
                    label=f"Popular pick {i}",
                    ok=OpenScreen(f"gallery-{i}", f"g{i}-photo-1"),
                )
                for i in range(1, 4)
            ),
        )
    )
    galleries = [
        auto_wire_list(
            Screen(
                id=f"gallery-{i}",
                elements=tuple(
                    FocusableElement(id=f"g{i}-photo-{j}", label=f"Photo {j}", ok=InternalToggle(f"zoom-{i}-{j}"))
                    for j in range(1, 4)
                ),
            )
        )
        for i in range(1, 4)
    ]

    def movie_list(screen_id: str, tag: str, count: int, title) -> tuple[Screen, list[Screen]]:
        listing = auto_wire_list(
            Screen(
                id=screen_id,
                elements=tuple(
                    FocusableElement(
                        id=f"{tag}-{i}",
                        label=title(i)[0],
                        ok=OpenScreen(f"{tag}-{i}-detail", f"{tag}-{i}-info"),
                    )
                    for i in range(1, count + 1)
                ),
            )
        )
        details = [
            Screen(
                id=f"{tag}-{i}-detail",
                elements=(FocusableElement(id=f"{tag}-{i}-info", label=f"{title(i)[0]} ({title(i)[1]})"),),
            )
            for i in range(1, count + 1)
        ]
        return listing, details

    top_tv, top_tv_details = movie_list("top-tv", "tv", top_tv_count, lambda i: (f"TV show {i}", "series"))
    top_rated, top_rated_details = movie_list(
        "top-rated", "rated", top_rated_count, lambda i: _TOP_RATED_TITLES.get(i, (f"Feature {i}", "drama"))
    )

    return AppSpec(
        screens=(home, popular, *galleries, top_tv, *top_tv_details, top_rated, *top_rated_details),
        start_screen="home",
        start_focus="popular",
    )


def cinemup_scenarios(top_tv_count: int = 22, top_rated_count: int = 20) -> list[Scenario]:
    """The three analyzed user tasks, as waypoint scenarios on the crawled model.

    2: count the TOP TV movies (walk the whole list).
    3: check whether a given movie is in TOP RATED (it sits five left of the entry).
    4: count the comedies in TOP RATED (open every movie's detail, iterating left).
    """
    node = Waypoint.node
    count_top_tv = Scenario(
        id="2",
        waypoints=(node("home/popular"), node(f"top-tv/tv-{top_tv_count}")),
    )
    find_in_top_rated = Scenario(
        id="3",
        waypoints=(node("home/popular"), node(f"top-rated/rated-{top_rated_count - 5}")),
    )
    count_comedies = Scenario(
        id="4",
        waypoints=(node("home/popular"),)
        + tuple(node(f"rated-{i}-detail/rated-{i}-info") for i in range(top_rated_count, 0, -1)),
    )
    return [count_top_tv, find_in_top_rated, count_comedies]


FIXTURE_NAMES = ("three-screen-app", "three-screen-model", "cinemup-app", "cinemup-scenarios")
