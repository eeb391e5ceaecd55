import math

import numpy as np
import pytest

from subdirac.clifford import DimensionError, Dims
from subdirac.oracle import ResourceError
from subdirac.torus import (TorusSpec, heat_trace_from_spectrum, torus_a0, torus_count_action,
                            torus_eigenvalues, torus_heat_trace)

UNIT = TorusSpec()


def test_low_spectrum():
    s = torus_eigenvalues(UNIT, cut=10.0)
    assert s.eigenvalues[0] == 0 and s.multiplicities[0] == 8
    assert s.eigenvalues[1] == pytest.approx(4 * math.pi ** 2)
    assert s.multiplicities[1] == 64
    assert np.all(s.multiplicities % 8 == 0)


def test_doubling_periods_quarters_eigenvalues():
    a = torus_eigenvalues(UNIT, cut=20.0)
    b = torus_eigenvalues(TorusSpec(periods=(2, 2, 2, 2)), cut=10.0)
    n = min(len(a.keys), len(b.keys))
    assert np.allclose(b.eigenvalues[:n] * 4, a.eigenvalues[:n])


def test_heat_trace_limits():
    assert torus_heat_trace(UNIT, 50.0) == pytest.approx(8, rel=1e-12)
    for t in (0.01, 0.005):
        assert t ** 2 * torus_heat_trace(UNIT, t) == pytest.approx(1 / (2 * math.pi ** 2), rel=1e-9)
    assert torus_a0(UNIT) == pytest.approx(1 / (2 * math.pi ** 2))


def test_heat_trace_monotone_convex():
    # beyond t ~ 0.4 the trace equals 8 to double precision
    times = np.linspace(0.005, 0.3, 60)
    vals = np.array([torus_heat_trace(UNIT, t) for t in times])
    assert np.all(np.diff(vals) < 0)
    assert np.all(np.diff(vals, 2) > 0)


def test_spectrum_sum_matches_theta_product():
    s = torus_eigenvalues(UNIT, cut=60.0)
    t = 0.05
    assert heat_trace_from_spectrum(s, t) == pytest.approx(torus_heat_trace(UNIT, t), rel=1e-12)


def test_count_action():
    assert torus_count_action(UNIT, 1.0) == 8
    counts = [torus_count_action(UNIT, lam) for lam in (1, 5, 7, 20, 40)]
    assert counts == sorted(counts)
    errs = []
    for lam in (50, 100, 200):
        n = torus_count_action(UNIT, lam)
        errs.append(abs(n / lam ** 4 - 1 / (4 * math.pi ** 2)) * 4 * math.pi ** 2)
    assert errs[2] < 0.05
    # relative error decays at least like 1 / Lambda
    assert errs[1] * 100 <= errs[0] * 50 and errs[2] * 200 <= errs[0] * 50


def test_errors():
    with pytest.raises(DimensionError):
        TorusSpec(dims=Dims(2, 2))
    with pytest.raises(ValueError):
        TorusSpec(periods=(1, 1, 1, 0))
    with pytest.raises(ResourceError):
        torus_eigenvalues(UNIT, cut=1e4)
    with pytest.raises(ValueError):
        torus_heat_trace(UNIT, 0.0)
