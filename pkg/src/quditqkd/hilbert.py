"""
Single- and two-qudit primitives.

Kets in the computational basis ``|k>`` and its Fourier dual, the
shift-and-phase error operators ``U_{m,n}`` and the ``d**2`` generalized
Bell states.  Two-register vectors are stored with the first register as
the most significant index, i.e. ``|j>|k>`` lives at position ``j*d + k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError

__all__ = [
    "Ket",
    "ErrorOp",
    "BellKet",
    "computational_ket",
    "fourier_dual_ket",
    "error_op_matrix",
    "error_op_apply",
    "bell_ket",
    "fidelity_up_to_phase",
    "reduced_density_matrix",
]

NORM_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    arr.setflags(write=False)
    return arr


def _check_dim(d: int) -> None:
    if int(d) != d or d < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {d!r}")


def _check_index(name: str, i: int, d: int) -> None:
    if not 0 <= i < d:
        raise IndexError(f"{name}={i} out of range [0, {d})")


@dataclass(frozen=True)
class Ket:
    """Normalized pure state of one qudit."""

    dim: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_dim(self.dim)
        amps = _frozen(self.amplitudes)
        if amps.shape != (self.dim,):
            raise DimensionError(f"expected {self.dim} amplitudes, got shape {amps.shape}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"ket is not normalized (|psi|^2 = {norm2!r})")
        object.__setattr__(self, "amplitudes", amps)

    def inner(self, other: "Ket") -> complex:
        """Return ``<self|other>``."""
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class ErrorOp:
    """The error operator ``U_{m,n} = sum_k exp(2 pi i k n / d) |k+m><k|``.

    ``m`` is the shift and ``n`` the phase index; both are reduced modulo ``d``.
    """

    dim: int
    m: int
    n: int

    def __post_init__(self):
        _check_dim(self.dim)
        object.__setattr__(self, "m", int(self.m) % self.dim)
        object.__setattr__(self, "n", int(self.n) % self.dim)

    def matrix(self) -> np.ndarray:
        return error_op_matrix(self.dim, self.m, self.n)


@dataclass(frozen=True)
class BellKet:
    """Generalized Bell state ``|B_{m,n}>`` of two qudits."""

    dim: int
    m: int
    n: int
    amplitudes: np.ndarray = field(repr=False)


def computational_ket(d: int, k: int) -> Ket:
    """Basis state ``|k>``.

    Examples
    --------
    >>> computational_ket(3, 2).amplitudes.real.tolist()
    [0.0, 0.0, 1.0]
    """
    _check_dim(d)
    _check_index("k", k, d)
    amps = np.zeros(d, dtype=complex)
    amps[k] = 1.0
    return Ket(d, amps)


def fourier_dual_ket(d: int, l: int) -> Ket:
    """Dual basis state with amplitudes ``exp(2 pi i k l / d) / sqrt(d)``."""
    _check_dim(d)
    _check_index("l", l, d)
    k = np.arange(d)
    return Ket(d, np.exp(2j * np.pi * k * l / d) / np.sqrt(d))


def error_op_matrix(d: int, m: int, n: int) -> np.ndarray:
    """Dense ``d x d`` matrix of ``U_{m,n}``."""
    _check_dim(d)
    m %= d
    n %= d
    k = np.arange(d)
    u = np.zeros((d, d), dtype=complex)
    u[(k + m) % d, k] = np.exp(2j * np.pi * k * n / d)
    return u


def error_op_apply(op: ErrorOp, psi: Ket) -> Ket:
    """Return ``U_{m,n}|psi>``."""
    if op.dim != psi.dim:
        raise DimensionError(f"operator acts on d={op.dim}, ket has d={psi.dim}")
    d = op.dim
    k = np.arange(d)
    out = np.zeros(d, dtype=complex)
    out[(k + op.m) % d] = np.exp(2j * np.pi * k * op.n / d) * psi.amplitudes
    return Ket(d, out)


def bell_ket(d: int, m: int, n: int) -> BellKet:
    """Maximally entangled state ``d**-1/2 sum_k exp(2 pi i k n/d) |k>|k+m>``.

    Examples
    --------
    >>> np.round(bell_ket(2, 0, 0).amplitudes.real, 6).tolist()
    [0.707107, 0.0, 0.0, 0.707107]
    """
    _check_dim(d)
    _check_index("m", m, d)
    _check_index("n", n, d)
    k = np.arange(d)
    amps = np.zeros(d * d, dtype=complex)
    amps[k * d + (k + m) % d] = np.exp(2j * np.pi * k * n / d) / np.sqrt(d)
    return BellKet(d, m, n, _frozen(amps))


def fidelity_up_to_phase(phi, psi) -> float:
    """``|<phi|psi>|`` for kets or raw vectors; 1 means equal up to global phase."""
    a = getattr(phi, "amplitudes", phi)
    b = getattr(psi, "amplitudes", psi)
    return float(abs(np.vdot(a, b)))


def reduced_density_matrix(state: np.ndarray, dims: tuple[int, ...], keep) -> np.ndarray:
    """Partial trace of the pure state ``state`` onto the registers in ``keep``.

    ``dims`` lists the register dimensions in storage order and ``keep`` is an
    iterable of register positions; the kept registers stay in storage order.
    """
    keep = sorted(set(keep))
    psi = np.asarray(state, dtype=complex).reshape(dims)
    traced = [i for i in range(len(dims)) if i not in keep]
    psi = np.transpose(psi, keep + traced)
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    psi = psi.reshape(dk, -1)
    return psi @ psi.conj().T
