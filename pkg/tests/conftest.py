import math

import pytest

from sixjvol.sixj import TRIPLES

ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split()[1].rstrip(":").split("-")[0])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def random_hyperbolic_theta(rng, count):
    """Rejection-sample hyperbolic-type 6-tuples away from the boundary."""
    from sixjvol.sixj import classify_theta

    out = []
    while len(out) < count:
        th = rng.uniform(0.2, 0.8, size=6)
        c = classify_theta(th)
        if c.is_hyperbolic and _margin(th) > 0.02:
            out.append(tuple(float(x) for x in th))
    return out


def _margin(th):
    m = math.inf
    for tri in TRIPLES:
        x, y, z = (th[i] for i in tri)
        s = x + y + z
        m = min(m, s - 1, 2 - s)
        for d in (x + y - z, x + z - y, y + z - x):
            m = min(m, d, 1 - d)
    return m


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)
