import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def sl2():
    from ybrack import catalog_get

    return catalog_get("sl2")


@pytest.fixture(scope="session")
def so3():
    from ybrack import catalog_get

    return catalog_get("so3")


@pytest.fixture(scope="session")
def aff1():
    from ybrack import catalog_get

    return catalog_get("aff1")


@pytest.fixture(scope="session")
def h1():
    from ybrack import catalog_get

    return catalog_get("heisenberg", m=1)


@pytest.fixture(scope="session")
def h2():
    from ybrack import catalog_get

    return catalog_get("heisenberg", m=2)


@pytest.fixture(scope="session")
def a4():
    from ybrack import catalog_get

    return catalog_get("a4_ternary")


@pytest.fixture(scope="session")
def sl2_rack(sl2):
    from ybrack import build_rack

    return build_rack(sl2)


@pytest.fixture(scope="session")
def sl2_yb(sl2_rack):
    from ybrack import build_yb

    return build_yb(sl2_rack)


@pytest.fixture(scope="session")
def h2_rack(h2):
    from ybrack import build_rack

    return build_rack(h2)


@pytest.fixture(scope="session")
def h2_yb(h2_rack):
    from ybrack import build_yb

    return build_yb(h2_rack)


@pytest.fixture(scope="session")
def h2_lie_h2(h2):
    from ybrack import ce_cohomology

    return ce_cohomology(h2, 2, "adjoint")
