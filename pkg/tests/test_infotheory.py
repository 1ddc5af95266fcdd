import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq

from quditqkd.errors import DomainError
from quditqkd.infotheory import (
    InfoPoint,
    Protocol,
    ck_rate_lower,
    eve_info_all_bases,
    eve_info_two_bases,
    hall_bound,
    info_symmetric,
    sifting_yield,
    xlog2x,
)
from quditqkd.cloner import universal_eve_fidelity


def mp_binary_entropy(p):
    p = mpmath.mpf(p)
    return -p * mpmath.log(p, 2) - (1 - p) * mpmath.log(1 - p, 2)


@pytest.mark.parametrize("d", range(2, 11))
def test_info_symmetric_endpoints(d):
    assert info_symmetric(d, 1.0) == math.log2(d)
    assert info_symmetric(d, 1.0 / d) == 0.0


def test_info_symmetric_qubit_matches_binary_entropy():
    with mpmath.workdps(40):
        expected = 1 - mp_binary_entropy("0.146447")
    assert info_symmetric(2, 0.853553) == pytest.approx(float(expected), abs=1e-13)


@pytest.mark.parametrize("F", [-0.01, 1.01, float("nan")])
def test_info_symmetric_domain(F):
    with pytest.raises(DomainError):
        info_symmetric(3, F)


@pytest.mark.parametrize("d", range(2, 11))
def test_info_symmetric_increasing(d):
    grid = np.linspace(1 / d, 1, 10_000)[1:]
    vals = np.array([info_symmetric(d, F) for F in grid])
    assert np.all(np.diff(vals) > 0)
    assert np.all(np.isfinite(vals))


@pytest.mark.parametrize("d", range(2, 11))
def test_eve_two_bases_decreasing_near_crossing(d):
    grid = np.linspace(0.5, 1, 2_000, endpoint=False)
    grid = grid[grid >= 1 / d]
    vals = np.array([eve_info_two_bases(d, F) for F in grid])
    assert np.all(np.diff(vals) < 0)


@pytest.mark.parametrize("d", range(2, 8))
def test_eve_learns_nothing_from_perfect_copy(d):
    assert eve_info_two_bases(d, 1.0) == 0.0
    assert eve_info_all_bases(d, 1.0) == 0.0
    assert universal_eve_fidelity(d, 1.0) == pytest.approx(1 / d, abs=1e-15)


def test_qubit_crossing_info_equal():
    # 0.853553 is the crossing rounded to 6 digits; the curves separate at ~5 bits per unit F
    F = 0.853553
    assert eve_info_two_bases(2, F) == pytest.approx(info_symmetric(2, F), abs=5e-6)
    Fc = (1 + 1 / math.sqrt(2)) / 2
    assert eve_info_two_bases(2, Fc) == pytest.approx(info_symmetric(2, Fc), abs=1e-9)


@pytest.mark.parametrize("d", range(2, 11))
def test_crossing_matches_closed_form(d):
    F = brentq(lambda F: info_symmetric(d, F) - eve_info_two_bases(d, F), 0.5 + 1e-9, 1 - 1e-9, xtol=1e-14)
    assert F == pytest.approx(0.5 * (1 + 1 / math.sqrt(d)), abs=1e-9)


def test_all_bases_leaks_less_than_two_bases():
    assert eve_info_all_bases(3, 0.85) < eve_info_two_bases(3, 0.85)


def test_all_bases_qubit_crossing():
    F = 1 - 0.1564
    assert eve_info_all_bases(2, F) == pytest.approx(info_symmetric(2, F), abs=2e-4)
    # the root itself sits at 0.84362653...; equality holds there to 1e-6
    root = brentq(lambda f: info_symmetric(2, f) - eve_info_all_bases(2, f), 0.8, 0.9, xtol=1e-15)
    assert root == pytest.approx(0.8436, abs=1e-4)
    assert eve_info_all_bases(2, root) == pytest.approx(info_symmetric(2, root), abs=1e-6)


def test_all_bases_domain():
    with pytest.raises(DomainError):
        eve_info_all_bases(3, 0.2)
    assert np.isfinite(eve_info_all_bases(3, 0.25))


@given(st.integers(2, 12), st.sampled_from([0.0, 1e-300, 5e-324, 1e-17, 1.0 - 1e-16, 1.0]))
def test_no_nan_at_boundaries(d, eps):
    for F in (eps, 1.0 / d + eps, 1.0 / (d + 1) + eps, 1.0 - eps):
        F = min(F, 1.0)
        assert np.isfinite(info_symmetric(d, F))
        if F >= 1.0 / d:
            assert np.isfinite(eve_info_two_bases(d, F))
        if F >= 1.0 / (d + 1):
            assert np.isfinite(eve_info_all_bases(d, F))


def test_xlog2x_convention():
    assert xlog2x(0.0) == 0.0
    assert xlog2x(0.5) == -0.5


def test_ck_rate():
    assert ck_rate_lower(1.0, 0.3) == pytest.approx(0.7)
    assert ck_rate_lower(0.4, 0.4) == 0.0
    assert ck_rate_lower(0.3, 0.4, I_BE=0.1) == pytest.approx(0.2)


def test_hall_bound():
    assert hall_bound(4, 0.5) == 2.0
    assert hall_bound(2, 1.0) == 2.0
    assert hall_bound(3, 1 / math.sqrt(3)) == pytest.approx(1.585, abs=1e-3)
    for d in range(2, 20):
        assert hall_bound(d, 1 / math.sqrt(d)) == math.log2(d)
    with pytest.raises(DomainError):
        hall_bound(4, 0.4)
    with pytest.raises(DomainError):
        hall_bound(4, 1.2)


def test_info_point_rate():
    pt = InfoPoint(2, Protocol.TWO_BASES, 0.9, 0.5, 0.2)
    assert pt.R_lower == pytest.approx(0.3)
    assert pt.D == pytest.approx(0.1)


def test_sifting_yield():
    assert sifting_yield(7, Protocol.TWO_BASES) == 0.5
    assert sifting_yield(3, "all-bases") == 0.25
