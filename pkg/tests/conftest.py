from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

import lvcompete as lv

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def gallery():
    """All nine reference parameter sets, keyed by label."""
    return {label: lv.gallery_entry(label) for label in lv.gallery_labels()}


@pytest.fixture(scope="session")
def gallery_params(gallery):
    return {label: entry.params for label, entry in gallery.items()}
