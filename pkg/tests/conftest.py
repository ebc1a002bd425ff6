import itertools

import pytest

from wenger import _accel
from wenger.gf import FieldSpec

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    previous = _accel.set_backend(request.param)
    yield request.param
    _accel.set_backend(previous)


@pytest.fixture(scope="session")
def fields():
    return {q: FieldSpec.create(q) for q in (2, 3, 4, 5, 7, 8, 9)}


def brute_force_incidences(spec, m, rule):
    """Every (point, line) pair tested against ``rule(p, l)`` with scalar field ops."""
    q = spec.q
    vecs = [tuple(spec.element(x) for x in v) for v in itertools.product(range(q), repeat=m + 1)]
    # product() varies the last coordinate fastest; the package varies the first
    index = {v: sum(c.value * q**i for i, c in enumerate(v)) for v in vecs}
    out = set()
    for p in vecs:
        for l in vecs:
            if rule(p, l):
                out.add((index[p], index[l]))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
