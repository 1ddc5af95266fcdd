"""
Disturbance thresholds for individual and coherent attacks.

Each threshold is the high-fidelity root of a scalar equation in ``F``.
Roots are located by a descending scan from ``F = 1`` (step ``1e-3``) to
find the first sign change, then refined by bisection.  Starting at the
top matters for the coherent bound, whose equation has a second root
below ``1/d``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, SolverError
from .infotheory import (
    InfoPoint,
    Protocol,
    all_bases_domain_min,
    eve_info_all_bases,
    eve_info_two_bases,
    info_symmetric,
)

__all__ = [
    "BoundKind",
    "ThresholdResult",
    "TABLE1",
    "TABLE1_DIMS",
    "threshold",
    "threshold_two_bases",
    "threshold_all_bases",
    "threshold_coherent",
    "scan_curves",
    "percent_display",
    "protocol_domain",
]

SCAN_STEP = 1e-3
# 1e-10 on F would leave residuals near 1e-9 where the curves are steep
DEFAULT_XTOL = 1e-12
RESIDUAL_TOL = 1e-10
CLOSED_FORM_TOL = 1e-9


class BoundKind(str, enum.Enum):
    IND_TWO_BASES = "ind2"
    IND_ALL_BASES = "indD1"
    COHERENT = "coh"


# Published disturbance thresholds in percent, keyed by (d, bound).
TABLE1: dict[tuple[int, BoundKind], float] = {
    (2, BoundKind.IND_TWO_BASES): 14.64,
    (2, BoundKind.IND_ALL_BASES): 15.64,
    (2, BoundKind.COHERENT): 11.00,
    (3, BoundKind.IND_TWO_BASES): 21.13,
    (3, BoundKind.IND_ALL_BASES): 22.67,
    (3, BoundKind.COHERENT): 15.95,
    (4, BoundKind.IND_TWO_BASES): 25.0,
    (4, BoundKind.IND_ALL_BASES): 26.66,
    (4, BoundKind.COHERENT): 18.93,
    (5, BoundKind.IND_TWO_BASES): 27.64,
    (5, BoundKind.IND_ALL_BASES): 29.23,
    (5, BoundKind.COHERENT): 20.99,
    (10, BoundKind.IND_TWO_BASES): 34.19,
    (10, BoundKind.IND_ALL_BASES): 34.97,
    (10, BoundKind.COHERENT): 26.21,
}
TABLE1_DIMS = (2, 3, 4, 5, 10)


@dataclass(frozen=True)
class ThresholdResult:
    d: int
    bound_kind: BoundKind
    D_star: float
    residual: float
    method: str
    D_check: float | None = None

    @property
    def F_star(self) -> float:
        return 1.0 - self.D_star

    @property
    def percent(self) -> float:
        return 100.0 * self.D_star

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "bound": self.bound_kind.value,
            "D_star": self.D_star,
            "F_star": self.F_star,
            "percent": self.percent,
            "residual": self.residual,
            "method": self.method,
            "D_check": self.D_check,
        }


def percent_display(fraction: float, places: int = 2) -> str:
    """Percentage rounded half-up, e.g. ``0.146446... -> '14.64'``."""
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(100.0 * fraction)).quantize(q, rounding=ROUND_HALF_UP))


def _check_d(d: int) -> None:
    if int(d) != d or d < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {d!r}")


def _high_root(g: Callable[[float], float], f_lo: float, xtol: float) -> tuple[float, float]:
    """Largest root of ``g`` in ``[f_lo, 1]``, assuming ``g(1) > 0``."""
    top = 1.0
    g_top = g(top)
    if g_top <= 0:
        raise SolverError(f"equation not positive at F=1 (g={g_top})")
    n_steps = int(math.ceil((1.0 - f_lo) / SCAN_STEP))
    for i in range(1, n_steps + 1):
        f = max(1.0 - i * SCAN_STEP, f_lo)
        g_f = g(f)
        if g_f == 0.0:
            return f, 0.0
        if g_f < 0:
            root = bisect(g, f, top, xtol=xtol, maxiter=200)
            return root, abs(g(root))
        top = f
    raise SolverError(f"no sign change found in [{f_lo}, 1]")


def threshold_two_bases(d: int, xtol: float = DEFAULT_XTOL) -> ThresholdResult:
    """Two-basis individual-attack threshold ``D = (1 - 1/sqrt(d)) / 2``.

    The closed form is cross-checked by bisection on ``I_AB - I_AE``.
    """
    _check_d(d)
    F_closed = 0.5 * (1.0 + 1.0 / math.sqrt(d))

    def g(F):
        return info_symmetric(d, F) - eve_info_two_bases(d, F)

    F_num, _ = _high_root(g, 1.0 / d, xtol)
    if abs(F_num - F_closed) > CLOSED_FORM_TOL:
        raise SolverError(f"bisection {F_num!r} disagrees with closed form {F_closed!r} for d={d}")
    return ThresholdResult(
        d, BoundKind.IND_TWO_BASES, 1.0 - F_closed, abs(g(F_closed)), "closed-form", 1.0 - F_num
    )


def threshold_all_bases(d: int, xtol: float = DEFAULT_XTOL) -> ThresholdResult:
    """``d + 1``-basis individual-attack threshold (numerical only)."""
    _check_d(d)

    def g(F):
        return info_symmetric(d, F) - eve_info_all_bases(d, F)

    F, res = _high_root(g, all_bases_domain_min(d), xtol)
    return ThresholdResult(d, BoundKind.IND_ALL_BASES, 1.0 - F, res, "bisection")


def threshold_coherent(d: int, xtol: float = DEFAULT_XTOL) -> ThresholdResult:
    """Largest disturbance for which ``I_AB > log2(d) / 2``."""
    _check_d(d)
    half = 0.5 * math.log2(d)

    def g(F):
        return info_symmetric(d, F) - half

    F, res = _high_root(g, 1.0 / d, xtol)
    return ThresholdResult(d, BoundKind.COHERENT, 1.0 - F, res, "bisection")


_SOLVERS = {
    BoundKind.IND_TWO_BASES: threshold_two_bases,
    BoundKind.IND_ALL_BASES: threshold_all_bases,
    BoundKind.COHERENT: threshold_coherent,
}


def threshold(d: int, kind: BoundKind | str, xtol: float = DEFAULT_XTOL) -> ThresholdResult:
    return _SOLVERS[BoundKind(kind)](d, xtol)


def protocol_domain(d: int, protocol: Protocol | str) -> tuple[float, float]:
    """Fidelity interval on which a protocol's information curves are defined."""
    if Protocol(protocol) is Protocol.TWO_BASES:
        return 1.0 / d, 1.0
    return all_bases_domain_min(d), 1.0


def scan_curves(
    d: int, protocol: Protocol | str, F_min: float, F_max: float, steps: int
) -> list[InfoPoint]:
    """Tabulate Bob's and Eve's information on an even grid of fidelities."""
    _check_d(d)
    protocol = Protocol(protocol)
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    lo, hi = protocol_domain(d, protocol)
    if not (lo - 1e-15 <= F_min <= F_max <= hi + 1e-15):
        raise DomainError(
            f"need {lo:.6g} <= F_min <= F_max <= {hi:.6g} for {protocol.value}, "
            f"got [{F_min}, {F_max}]"
        )
    eve = eve_info_two_bases if protocol is Protocol.TWO_BASES else eve_info_all_bases
    points = []
    for F in np.linspace(F_min, F_max, steps):
        F = float(F)
        points.append(InfoPoint(d, protocol, F, info_symmetric(d, F), eve(d, F)))
    return points
