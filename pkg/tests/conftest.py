from __future__ import annotations

import pytest

from tvusability import fixtures
from tvusability.crawler import crawl_run
from tvusability.effort import builtin_context
from tvusability.model import InteractionModel


@pytest.fixture(scope="session")
def three_screen_crawl():
    return crawl_run(fixtures.three_screen_app())


@pytest.fixture(scope="session")
def cinemup_crawl():
    return crawl_run(fixtures.cinemup_app())


@pytest.fixture(scope="session")
def cinemup_model(cinemup_crawl) -> InteractionModel:
    return cinemup_crawl.model


@pytest.fixture(scope="session")
def cinemup_scenarios():
    return fixtures.cinemup_scenarios()


@pytest.fixture(scope="session")
def initial_ctx():
    return builtin_context("initial")


@pytest.fixture(scope="session")
def adjusted_ctx():
    return builtin_context("adjusted")
