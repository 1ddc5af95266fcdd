import math

import numpy as np
import pytest

from quditqkd.bounds import (
    TABLE1,
    BoundKind,
    percent_display,
    scan_curves,
    threshold,
    threshold_all_bases,
    threshold_coherent,
    threshold_two_bases,
)
from quditqkd.errors import DomainError
from quditqkd.infotheory import Protocol, info_symmetric


@pytest.mark.parametrize("d, percent", [(2, 14.64), (4, 25.0), (10, 34.19)])
def test_two_bases_table_rows(d, percent):
    res = threshold_two_bases(d)
    assert 100 * res.D_star == pytest.approx(percent, abs=0.01)
    assert abs(res.D_check - res.D_star) < 1e-9
    assert res.residual <= 1e-10


def test_two_bases_d4_exact():
    assert threshold_two_bases(4).D_star == 0.25


@pytest.mark.parametrize("d, percent", [(2, 15.64), (3, 22.67), (5, 29.23)])
def test_all_bases_table_rows(d, percent):
    res = threshold_all_bases(d)
    assert 100 * res.D_star == pytest.approx(percent, abs=0.01)
    assert res.residual <= 1e-10


@pytest.mark.parametrize("d, percent", [(2, 11.00), (3, 15.95), (10, 26.21)])
def test_coherent_table_rows(d, percent):
    res = threshold_coherent(d)
    assert 100 * res.D_star == pytest.approx(percent, abs=0.01)
    assert res.residual <= 1e-10


def test_coherent_picks_high_fidelity_root():
    # the equation I_AB = log2(d)/2 has a second root below F = 1/d
    for d in (2, 3, 10):
        res = threshold_coherent(d)
        assert res.F_star > 1 / d
        assert info_symmetric(d, res.F_star) == pytest.approx(math.log2(d) / 2, abs=1e-10)


@pytest.mark.parametrize("kind", list(BoundKind))
def test_thresholds_below_half(kind):
    for d in (2, 3, 7, 20, 100):
        res = threshold(d, kind)
        assert 0 < res.D_star < 0.5
        assert res.F_star == pytest.approx(1 - res.D_star)


def test_ordering_small_d():
    for d in range(2, 11):
        coh = threshold_coherent(d).D_star
        two = threshold_two_bases(d).D_star
        allb = threshold_all_bases(d).D_star
        assert coh < two < allb


@pytest.mark.parametrize("kind", list(BoundKind))
def test_monotone_in_d(kind):
    vals = [threshold(d, kind).D_star for d in range(2, 51)]
    assert np.all(np.diff(vals) > 0)


def test_table_constants_complete():
    assert len(TABLE1) == 15


@pytest.mark.parametrize(
    "fraction, text", [(0.146446609, "14.64"), (0.25, "25.00"), (0.110027864, "11.00"), (0.12345, "12.35")]
)
def test_percent_display_half_up(fraction, text):
    assert percent_display(fraction) == text


def test_scan_positive_rate_above_crossing():
    pts = scan_curves(2, Protocol.TWO_BASES, 0.86, 1.0, 15)
    assert len(pts) == 15
    assert all(p.R_lower > 0 for p in pts)
    assert [p.F for p in pts] == sorted(p.F for p in pts)


def test_scan_zero_rate_at_crossing():
    Fc = 0.5 * (1 + 1 / math.sqrt(2))
    pts = scan_curves(2, Protocol.TWO_BASES, Fc, Fc, 2)
    assert abs(pts[0].R_lower) < 1e-9


@pytest.mark.parametrize("protocol", list(Protocol))
@pytest.mark.parametrize("d", [2, 3, 7])
def test_scan_endpoint(protocol, d):
    last = scan_curves(d, protocol, 0.9, 1.0, 3)[-1]
    assert last.F == 1.0
    assert last.I_AB == math.log2(d)
    assert last.I_AE == 0.0


def test_scan_domain_errors():
    with pytest.raises(DomainError):
        scan_curves(3, Protocol.TWO_BASES, 0.2, 1.0, 5)
    with pytest.raises(DomainError):
        scan_curves(3, Protocol.ALL_BASES, 0.9, 1.1, 5)
    with pytest.raises(DomainError):
        scan_curves(3, Protocol.ALL_BASES, 0.9, 1.0, 1)


def test_bad_dimension():
    with pytest.raises(DomainError):
        threshold_two_bases(1)


@pytest.mark.parametrize("d", [3, 10, 10**4])
def test_coherent_root_against_mpmath(d):
    import mpmath

    with mpmath.workdps(40):
        def lhs(F):
            return F * mpmath.log(1 / F, 2) + (1 - F) * mpmath.log((d - 1) / (1 - F), 2) - mpmath.log(d, 2) / 2

        # I_AB is increasing on (1/d, 1), so this bracket holds exactly one root
        root = mpmath.findroot(lhs, (mpmath.mpf(1) / d, 1 - mpmath.mpf(10) ** -30), solver="illinois")
    assert threshold_coherent(d).F_star == pytest.approx(float(root), abs=1e-10)
