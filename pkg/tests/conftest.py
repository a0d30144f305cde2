import pytest

from unital_lab import ProjectivePlane, build_field_ctx

_CTX_CACHE = {}
_PLANE_CACHE = {}


def get_ctx(p, n=1):
    key = (p, n)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = build_field_ctx(p, n)
    return _CTX_CACHE[key]


def get_geometry(p, n=1):
    """(ctx, plane) with the incidence array built, cached for the session."""
    key = (p, n)
    if key not in _PLANE_CACHE:
        ctx = get_ctx(p, n)
        plane = ProjectivePlane(ctx)
        plane.incidence
        _PLANE_CACHE[key] = (ctx, plane)
    return _PLANE_CACHE[key]


# q in {3, 5, 7, 9, 13} <-> (p, n) pairs used across the suite
PN_BY_Q = {3: (3, 1), 5: (5, 1), 7: (7, 1), 9: (3, 2), 13: (13, 1)}


@pytest.fixture(scope="session")
def geometry():
    return get_geometry


@pytest.fixture(scope="session")
def tower():
    return get_ctx
