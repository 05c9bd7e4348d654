from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from birclass import candidates as cand
from birclass.classify import classify, cubic_cone, enumerate_base_cached, gamma6

settings.register_profile("birclass", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("birclass")


@pytest.fixture(autouse=True)
def _no_cache(monkeypatch):
    monkeypatch.delenv("BIRCLASS_CACHE_DIR", raising=False)
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)


@pytest.fixture(scope="session")
def base_sets():
    return enumerate_base_cached(1)


@pytest.fixture(scope="session")
def gamma174():
    return cubic_cone(1)[2]


@pytest.fixture(scope="session")
def gamma4237():
    return gamma6(1)


@pytest.fixture(scope="session")
def results():
    return {fam: classify(fam) for fam in ("cubic", "cubo-linear", "quartic-p4", "quartic-p5", "quarto-linear-p4")}


@pytest.fixture(scope="session")
def preliminary():
    return cand.preliminary_classification()
