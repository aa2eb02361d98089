from __future__ import annotations

import pytest

from flipgraph.polyio import corpus_tree


@pytest.fixture(scope="session")
def named():
    """Load a shipped example tree by name."""
    return corpus_tree
