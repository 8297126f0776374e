# File Chain (see DEVELOPER.md):
# Doc Version: v1.0.0
# Date Modified: 2026-10-19
#
# - Called by: pytest (markers used in tests/test_weierstrass.py)
# - Reads from: ZEROENT_SLOW env, pytest -m selection
# - Writes to: None
#
# Purpose: Opt-in collection rule for the slow exhaustive searches.
# Blast Radius: Test-only.

from __future__ import annotations

import os

import pytest


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line(
        "markers",
        "slow: exhaustive isotrivial automorphism search over F16",
    )


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    markexpr = config.getoption("-m", default="")
    if os.environ.get("ZEROENT_SLOW") == "1" or (markexpr and "slow" in markexpr and "not slow" not in markexpr):
        return
    skip_slow = pytest.mark.skip(reason="slow search is opt-in: set ZEROENT_SLOW=1 or run pytest -m slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
