from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv("JOINMIRROR_CACHE", raising=False)
