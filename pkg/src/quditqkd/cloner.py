"""
Phase-covariant (two-basis) and universal qudit cloners.

Both families share one amplitude-matrix shape: ``v`` in the corner, ``x``
along the first row and column, ``y`` everywhere else.  The universal
cloner is the ``x == y`` slice.  Eve's clone is described by the same
shape with primed amplitudes, obtained by a discrete Fourier transform of
the matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError

__all__ = [
    "ClonerKind",
    "ClonerParams",
    "AmplitudeMatrix",
    "FidelityReport",
    "two_basis_optimal",
    "universal_from_F",
    "eve_params",
    "eve_amplitudes",
    "amplitude_matrix",
    "fourier_dual_amplitudes",
    "fidelities",
    "two_basis_eve_fidelity",
    "universal_eve_fidelity",
]

NORM_TOL = 1e-12


class ClonerKind(str, enum.Enum):
    TWO_BASES = "two-bases"
    UNIVERSAL = "universal"


def normalization(d: int, v: float, x: float, y: float) -> float:
    return v * v + 2 * (d - 1) * x * x + (d - 1) ** 2 * y * y


@dataclass(frozen=True)
class ClonerParams:
    """Real amplitudes ``(v, x, y)`` of a cloner acting on qudits of dimension ``d``.

    The optimal constructors only return nonnegative amplitudes, but Eve's
    dual cloner can carry a negative ``x'`` at low fidelity, so signs are
    not enforced here.
    """

    d: int
    kind: ClonerKind
    v: float
    x: float
    y: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DimensionError(f"dimension must be an integer >= 2, got {self.d!r}")
        object.__setattr__(self, "kind", ClonerKind(self.kind))
        if self.kind is ClonerKind.UNIVERSAL and abs(self.x - self.y) > NORM_TOL:
            raise ValueError(f"universal cloner requires x == y (x={self.x}, y={self.y})")
        norm = normalization(self.d, self.v, self.x, self.y)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes not normalized: {norm!r}")

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.v, self.x, self.y)


@dataclass(frozen=True)
class AmplitudeMatrix:
    """``d x d`` amplitudes ``a[m, n]``; row = shift index, column = phase index."""

    d: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.entries)
        if arr.shape != (self.d, self.d):
            raise DimensionError(f"expected ({self.d}, {self.d}) entries, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def weights(self) -> np.ndarray:
        """Error probabilities ``|a[m, n]|**2``."""
        return np.abs(self.entries) ** 2


@dataclass(frozen=True)
class FidelityReport:
    F: float
    F_bar: float
    F_E: float

    @property
    def D(self) -> float:
        return 1.0 - self.F


def _check_F(F: float, lo: float, what: str) -> None:
    if not (lo - 1e-15 <= F <= 1.0 + 1e-15) or math.isnan(F):
        raise DomainError(f"{what}: fidelity F={F} outside [{lo:.6g}, 1]")


def two_basis_optimal(d: int, F: float) -> ClonerParams:
    """Cloner maximizing Eve's fidelity for a given Bob fidelity ``F``.

    Valid for ``1/d <= F <= 1``.
    """
    _check_F(F, 1.0 / d, "two-basis cloner")
    F = min(max(F, 0.0), 1.0)
    x = math.sqrt(F * (1.0 - F) / (d - 1))
    y = (1.0 - F) / (d - 1)
    return ClonerParams(d, ClonerKind.TWO_BASES, F, x, y)


def universal_from_F(d: int, F: float) -> ClonerParams:
    """Asymmetric universal cloner with Bob fidelity ``F`` (``1/(d+1) <= F <= 1``)."""
    _check_F(F, 1.0 / (d + 1), "universal cloner")
    x = math.sqrt(max(1.0 - F, 0.0) / (d * (d - 1)))
    v = math.sqrt(max((d + 1) * F - 1.0, 0.0) / d)
    return ClonerParams(d, ClonerKind.UNIVERSAL, v, x, x)


def eve_amplitudes(d: int, v: float, x: float, y: float) -> tuple[float, float, float]:
    """Primed triple ``(v', x', y')`` for arbitrary real ``(v, x, y)``."""
    vp = (v + 2 * (d - 1) * x + (d - 1) ** 2 * y) / d
    xp = (v + (d - 2) * x + (1 - d) * y) / d
    yp = (v - 2 * x + y) / d
    return vp, xp, yp


def eve_params(p: ClonerParams) -> ClonerParams:
    """Amplitudes describing the clone that ends up with Eve."""
    d = p.d
    if p.kind is ClonerKind.UNIVERSAL:
        xp = (p.v - p.x) / d
        vp = (p.v + (d * d - 1) * p.x) / d
        return ClonerParams(d, p.kind, vp, xp, xp)
    return ClonerParams(d, p.kind, *eve_amplitudes(d, p.v, p.x, p.y))


def amplitude_matrix(p: ClonerParams) -> AmplitudeMatrix:
    a = np.full((p.d, p.d), p.y, dtype=float)
    a[0, :] = p.x
    a[:, 0] = p.x
    a[0, 0] = p.v
    return AmplitudeMatrix(p.d, a)


def fourier_dual_amplitudes(a: AmplitudeMatrix) -> AmplitudeMatrix:
    """``b[m, n] = d**-1 sum exp(2 pi i (n m' - m n') / d) a[m', n']``.

    Returned entries are complex; for the cloner families the imaginary
    parts vanish to rounding.
    """
    d = a.d
    k = np.arange(d)
    w = np.exp(2j * np.pi * np.outer(k, k) / d)
    b = (w @ a.entries @ w.conj()).T / d
    return AmplitudeMatrix(d, b)


def fidelities(p: ClonerParams) -> FidelityReport:
    """Bob's fidelity in both bases and Eve's fidelity.

    Bob's values are read off the amplitude matrix (first row, first
    column); Eve's value goes through :func:`eve_params`.
    """
    w = amplitude_matrix(p).weights
    pe = eve_params(p)
    F_E = pe.v**2 + (p.d - 1) * pe.x**2
    return FidelityReport(F=float(w[0, :].sum()), F_bar=float(w[:, 0].sum()), F_E=float(F_E))


def two_basis_eve_fidelity(d: int, F: float) -> float:
    """Eve's fidelity against the optimal two-basis cloner, in closed form."""
    _check_F(F, 1.0 / d, "two-basis cloner")
    F = min(max(F, 0.0), 1.0)
    return F / d + (d - 1) * (1 - F) / d + 2.0 / d * math.sqrt((d - 1) * F * (1 - F))


def universal_eve_fidelity(d: int, F: float) -> float:
    """Eve's fidelity against the universal cloner with Bob fidelity ``F``."""
    pe = eve_params(universal_from_F(d, F))
    return 1.0 - d * (d - 1) * pe.x**2
