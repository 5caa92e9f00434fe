import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sixjvol.errors import ClassificationError, DeformationRangeError, NTooSmallError, ValidationError
from sixjvol.experiments import (
    CSV_HEADER,
    ConvergenceRow,
    color_sequence,
    converge_gcv,
    converge_sixj,
    gcv_colors,
    richardson,
    rows_to_csv,
)
from sixjvol.hypgeom import volume_lob
from sixjvol.shadow import ShadowLink
from sixjvol.sixj import TRIPLES, classify_theta

from conftest import random_hyperbolic_theta

G1 = ShadowLink(1, 6, ((0, 1, 2, 3, 4, 5),))
GENERIC = (0.55, 0.6, 0.65, 0.6, 0.55, 0.6)


def test_color_sequence_half():
    for n in (11, 101, 1601):
        b = color_sequence([0.5] * 6, n)
        assert set(b.b2) <= {n - 1, n, n + 1}
        assert all(sum(b.b2[i] for i in tri) % 2 == 0 for tri in TRIPLES)


def test_color_sequence_no_repair_needed():
    assert color_sequence([0.6] * 6, 100).b2 == (120,) * 6


def test_color_sequence_generic_postcondition():
    n = 101
    b = color_sequence(GENERIC, n)
    assert all(abs(x / n - t) <= 3 / (2 * n) for x, t in zip(b.b, GENERIC))


@settings(max_examples=150, deadline=None)
@given(st.integers(6, 3000), st.randoms(use_true_random=False))
def test_color_sequence_property(n, rnd):
    import numpy as np

    theta = random_hyperbolic_theta(np.random.default_rng(rnd.randint(0, 2**32)), 1)[0]
    try:
        b = color_sequence(theta, n)
    except NTooSmallError:
        assert n < 60
        return
    assert all(abs(float(x) / n - t) <= 3 / (2 * n) + 1e-12 for x, t in zip(b.b, theta))


def test_color_sequence_errors():
    with pytest.raises(ClassificationError):
        color_sequence([0.1] * 6, 100)
    with pytest.raises(ClassificationError):
        color_sequence([1.5] * 6, 10)
    # hyperbolic, but at n = 6 rounding breaks a triangle inequality
    theta = (0.49, 0.62, 0.29, 0.63, 0.35, 0.3)
    assert classify_theta(theta).is_hyperbolic
    with pytest.raises(NTooSmallError):
        color_sequence(theta, 6)
    color_sequence(theta, 200)


def test_gcv_colors():
    assert gcv_colors([0, 0.04, -0.04], 100) == [50, 52, 48]


def test_converge_sixj_half():
    rows = converge_sixj([0.5] * 6, [201, 101, 401], workers=1)
    assert [r.n for r in rows] == [101, 201, 401]
    for r in rows:
        assert r.order_observed == -1
        assert r.error == r.value - r.target
        assert r.sign_constant and not r.cancelled
    errs = [abs(r.error) for r in rows]
    assert errs[0] > errs[1] > errs[2]


def test_converge_sixj_parallel_matches_serial():
    ns = [101, 151, 201, 251]
    a = converge_sixj(GENERIC, ns, workers=1)
    b = converge_sixj(GENERIC, ns, workers=3)
    assert [(r.n, r.value) for r in a] == [(r.n, r.value) for r in b]


def test_converge_sixj_env_threads(monkeypatch):
    monkeypatch.setenv("SIXJVOL_THREADS", "bogus")
    with pytest.raises(ValidationError):
        converge_sixj(GENERIC, [101])
    monkeypatch.setenv("SIXJVOL_THREADS", "0")
    rows = converge_sixj(GENERIC, [101, 201])
    assert len(rows) == 2


def test_converge_sixj_rejects_non_hyperbolic():
    with pytest.raises(ValidationError):
        converge_sixj([0.1] * 6, [101])


def test_converge_sixj_theta_06():
    rows = converge_sixj([0.6] * 6, [1601], workers=1)
    assert rows[0].target == pytest.approx(volume_lob([0.6] * 6))
    assert abs(rows[0].error) < 0.1


def test_converge_gcv_small():
    rows = converge_gcv(G1, [0.0] * 6, [100, 200, 400], workers=1)
    assert all(r.order_observed == -1 for r in rows)
    assert abs(rows[-1].error) < abs(rows[0].error)


def test_converge_gcv_normalized_shifts_by_log_n():
    plain = converge_gcv(G1, [0.0] * 6, [200], workers=1)[0]
    norm = converge_gcv(G1, [0.0] * 6, [200], workers=1, normalized=True)[0]
    qn = 200 / (2 * math.sin(math.pi / 200))
    assert norm.value - plain.value == pytest.approx(2 * math.pi / 200 * math.log(qn), abs=1e-10)


def test_converge_gcv_errors():
    with pytest.raises(ValidationError):
        converge_gcv(G1, [0.0] * 6, [101])
    with pytest.raises(DeformationRangeError):
        converge_gcv(G1, [0.45] * 6, [100])


def test_runtime_roughly_linear():
    ns = [801, 1601, 3201]
    best = [min(converge_sixj(GENERIC, [n], workers=1)[0].runtime_ms for _ in range(3)) for n in ns]
    per_n = [ms / n for ms, n in zip(best, ns)]
    assert max(per_n) / min(per_n) < 3


def test_csv_format():
    rows = [
        ConvergenceRow(100, 1.0, 2.0, -1.0, -1, 3.25),
        ConvergenceRow(200, 1.5, 2.0, -0.5, -1, 6.5),
    ]
    text = rows_to_csv(rows, timing=False)
    assert text.splitlines()[0] == CSV_HEADER
    assert text == "n,value,target,error,order,runtime_ms\n100,1,2,-1,-1,\n200,1.5,2,-0.5,-1,\n"
    assert "\r" not in text
    timed = rows_to_csv(rows, timing=True, with_richardson=True)
    assert timed.splitlines()[0].endswith(",richardson")
    assert timed.splitlines()[2] == "200,1.5,2,-0.5,-1,6.5,2"


def test_richardson():
    rows = [ConvergenceRow(n, 3 - 5 / n, 3, -5 / n, -1, 0) for n in (100, 200, 400)]
    est = richardson(rows)
    assert est[0] is None
    assert est[1] == pytest.approx(3) and est[2] == pytest.approx(3)


def test_twelve_significant_digits():
    row = ConvergenceRow(7, math.pi, math.e, math.pi - math.e, -1, 0)
    line = rows_to_csv([row], timing=False).splitlines()[1]
    assert line.split(",")[1] == "3.14159265359"
