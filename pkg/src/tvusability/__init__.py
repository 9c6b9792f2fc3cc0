"""Model-based usability analysis for remote-controlled TV style UIs.

Crawl a simulated app into a user interaction multigraph, resolve tester
scenarios into minimal-effort paths under a user/device/environment
context, check them against effort and length thresholds, and calibrate
the effort model from recorded user sessions.
"""

from .crawler import CrawlConfig, CrawlRun, crawl, crawl_run, crawl_stats
from .effort import (
    INFEASIBLE,
    Context,
    ContextError,
    builtin_context,
    edge_effort,
    is_infeasible,
    load_context,
    path_effort,
)
from .model import (
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
    structurally_equal,
    validate,
)
from .paths import PathNotFound, ResolvedPath, ScenarioError, path_metrics, resolve_path
from .simulator import AppSpec, AppSpecError, FocusableElement, Screen, SimState, load_app, save_app, step
from .verify import (
    Finding,
    Rule,
    Thresholds,
    VerificationReport,
    apply_edit,
    builtin_thresholds,
    verify,
    verify_suite,
)

__version__ = "0.1.0"
