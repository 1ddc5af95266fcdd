"""
Mutual-information curves for Bob and Eve, secret-key-rate bound and the
entropic uncertainty bound used for coherent attacks.

All quantities are in bits per sifted symbol.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .cloner import two_basis_eve_fidelity, universal_eve_fidelity
from .errors import DomainError

__all__ = [
    "Protocol",
    "InfoPoint",
    "xlog2x",
    "info_symmetric",
    "eve_info_two_bases",
    "eve_info_all_bases",
    "all_bases_domain_min",
    "ck_rate_lower",
    "hall_bound",
    "sifting_yield",
]

_EPS = 1e-15


class Protocol(str, enum.Enum):
    TWO_BASES = "two-bases"
    ALL_BASES = "all-bases"


@dataclass(frozen=True)
class InfoPoint:
    d: int
    protocol: Protocol
    F: float
    I_AB: float
    I_AE: float

    @property
    def D(self) -> float:
        return 1.0 - self.F

    @property
    def R_lower(self) -> float:
        return self.I_AB - self.I_AE


def xlog2x(p: float) -> float:
    """``p * log2(p)`` with the limit value 0 at ``p = 0``."""
    return 0.0 if p <= 0.0 else p * math.log2(p)


def _plog2_ratio(p: float, q: float) -> float:
    # p * log2(p / q), zero when p vanishes
    return 0.0 if p <= 0.0 else p * math.log2(p / q)


def sifting_yield(d: int, protocol: Protocol) -> float:
    """Fraction of transmissions surviving basis reconciliation."""
    return 0.5 if Protocol(protocol) is Protocol.TWO_BASES else 1.0 / (d + 1)


def info_symmetric(d: int, F: float) -> float:
    """Information carried by a ``d``-ary channel with fidelity ``F``
    and the ``d - 1`` errors equiprobable.

    Examples
    --------
    >>> info_symmetric(4, 1.0)
    2.0
    >>> info_symmetric(4, 0.25)
    0.0
    """
    if not (-_EPS <= F <= 1.0 + _EPS) or math.isnan(F):
        raise DomainError(f"F={F} outside [0, 1]")
    F = min(max(F, 0.0), 1.0)
    val = math.log2(d) + xlog2x(F) + _plog2_ratio(1.0 - F, d - 1)
    # exact zero at the uniform point where rounding would leave ~1e-16
    return 0.0 if abs(val) < 4 * _EPS * max(1.0, math.log2(d)) else val


def eve_info_two_bases(d: int, F: float) -> float:
    """Eve's information under the optimal two-basis cloning attack."""
    return info_symmetric(d, two_basis_eve_fidelity(d, F))


def all_bases_domain_min(d: int) -> float:
    """Smallest ``F`` accepted by :func:`eve_info_all_bases`.

    ``F + F_E - 1 = (v + (d-1) x)**2 / d`` is strictly positive for every
    universal cloner, so the limit is the cloner's own domain ``1/(d+1)``.
    """
    return 1.0 / (d + 1)


def eve_info_all_bases(d: int, F: float) -> float:
    """Eve's information, conditioned on Bob's error, for the ``d + 1``-basis protocol."""
    if not (all_bases_domain_min(d) - _EPS <= F <= 1.0 + _EPS):
        raise DomainError(f"F={F} outside [1/(d+1), 1] = [{all_bases_domain_min(d):.6g}, 1]")
    F = min(F, 1.0)
    F_E = universal_eve_fidelity(d, F)
    p_hit = max(F + F_E - 1.0, 0.0)
    p_miss = max(1.0 - F_E, 0.0)
    val = math.log2(d) + _plog2_ratio(p_hit, F) + _plog2_ratio(p_miss, (d - 1) * F)
    return 0.0 if abs(val) < 4 * _EPS * max(1.0, math.log2(d)) else val


def ck_rate_lower(I_AB: float, I_AE: float, I_BE: float | None = None) -> float:
    """One-way secret-key rate lower bound ``max(I_AB - I_AE, I_AB - I_BE)``."""
    rate = I_AB - I_AE
    if I_BE is not None:
        rate = max(rate, I_AB - I_BE)
    return rate


def hall_bound(d: int, overlap_max: float) -> float:
    """Upper bound on ``I_AB + I_AE`` given the largest overlap between the
    eigenbases of Bob's and Eve's observables."""
    floor = 1.0 / math.sqrt(d)
    if not (floor - 1e-12 <= overlap_max <= 1.0 + 1e-12):
        raise DomainError(f"overlap {overlap_max} outside [1/sqrt(d), 1] = [{floor:.6g}, 1]")
    if abs(overlap_max - floor) <= 1e-12:
        return math.log2(d)
    return 2.0 * math.log2(d * overlap_max)
