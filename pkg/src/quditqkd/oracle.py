"""
Brute-force ground truth for the closed forms.

The cloning attack is built as an explicit state vector on Bob's clone
``B``, Eve's clone ``E`` and the machine ``E'`` (``d**3`` amplitudes,
stored in that order).  Reduced states, Eve's measurements and the
resulting joint distributions are then computed directly from that
vector.  A seeded Monte Carlo round simulator lives here too.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .cloner import ClonerKind, ClonerParams, amplitude_matrix, two_basis_optimal, universal_from_F
from .errors import DimensionError, DomainError, PreconditionError, UndefinedConditionalError
from .hilbert import Ket, bell_ket, computational_ket, error_op_matrix, reduced_density_matrix
from .infotheory import Protocol, sifting_yield

__all__ = [
    "MAX_ORACLE_DIM",
    "Basis",
    "JointState",
    "JointDistribution",
    "ConditionalStates",
    "SimConfig",
    "SimReport",
    "clone_state",
    "bob_error_distribution",
    "eve_conditional_states_two_bases",
    "srm_outcome_probabilities",
    "srm_mutual_information",
    "mutual_information",
    "all_bases_transformation",
    "all_bases_joint_distribution",
    "run_protocol",
    "RNG_DESCRIPTION",
    "CHUNK_ROUNDS",
]

MAX_ORACLE_DIM = 8


class Basis(str, enum.Enum):
    COMPUTATIONAL = "computational"
    DUAL = "dual"


@dataclass(frozen=True)
class JointState:
    """Pure state of the ``(B, E, E')`` registers after cloning."""

    d: int
    amplitudes: np.ndarray = field(repr=False)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.d, self.d, self.d)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to ``[b, e, e']``."""
        return self.amplitudes.reshape(self.dims)

    def reduced(self, *registers: int) -> np.ndarray:
        """Density matrix of the listed registers (0 = B, 1 = E, 2 = E')."""
        return reduced_density_matrix(self.amplitudes, self.dims, registers)


def _check_oracle_dim(d: int) -> None:
    if d > MAX_ORACLE_DIM:
        raise DomainError(f"oracle is capped at d <= {MAX_ORACLE_DIM}, got d={d}")


def clone_state(p: ClonerParams, psi: Ket) -> JointState:
    """Apply ``|psi> -> sum_{m,n} a[m,n] U_{m,n}|psi>_B |B_{m,-n}>_{EE'}``."""
    if p.d != psi.dim:
        raise DimensionError(f"cloner acts on d={p.d}, ket has d={psi.dim}")
    d = p.d
    _check_oracle_dim(d)
    a = amplitude_matrix(p).entries
    out = np.zeros(d**3, dtype=complex)
    for m in range(d):
        for n in range(d):
            if a[m, n] == 0:
                continue
            bob = error_op_matrix(d, m, n) @ psi.amplitudes
            out += a[m, n] * np.kron(bob, bell_ket(d, m, (-n) % d).amplitudes)
    return JointState(d, out)


def bob_error_distribution(p: ClonerParams, basis: Basis | str = Basis.COMPUTATIONAL) -> np.ndarray:
    """Probability of each visible error in a basis.

    In the computational basis only the shift ``m`` shows, so
    ``P(m) = sum_n |a[m, n]|**2``; in the dual basis only the phase shows.
    """
    w = amplitude_matrix(p).weights
    if Basis(basis) is Basis.COMPUTATIONAL:
        return w.sum(axis=1)
    return w.sum(axis=0)


@dataclass(frozen=True)
class ConditionalStates:
    """Eve's normalized ``EE'`` states for every Alice symbol, given Bob's shift."""

    m: int
    probability: float
    states: np.ndarray = field(repr=False)  # row k: Eve's state when Alice sent |k>

    @property
    def overlaps(self) -> np.ndarray:
        return self.states.conj() @ self.states.T


def eve_conditional_states_two_bases(p: ClonerParams, m: int) -> ConditionalStates:
    """Project ``EE'`` onto Bell states with shift ``m`` for each input ``|k>``."""
    if p.kind is not ClonerKind.TWO_BASES:
        raise PreconditionError("conditional states are defined for the two-basis cloner")
    d = p.d
    if not 0 <= m < d:
        raise IndexError(f"m={m} out of range [0, {d})")
    proj = sum(np.outer(b, b.conj()) for b in (bell_ket(d, m, n).amplitudes for n in range(d)))
    states = np.zeros((d, d * d), dtype=complex)
    prob = 0.0
    for k in range(d):
        psi = clone_state(p, computational_ket(d, k)).amplitudes.reshape(d, d * d)
        # Bob is left in |k+m>; any other Bob row must vanish after projection
        eve = proj @ psi[(k + m) % d]
        pk = float(np.vdot(eve, eve).real)
        if pk < 1e-14:
            raise UndefinedConditionalError(f"shift outcome m={m} has zero probability")
        states[k] = eve / math.sqrt(pk)
        prob += pk / d
    return ConditionalStates(m, prob, states)


def _as_state_rows(states) -> np.ndarray:
    s = getattr(states, "states", states)
    return np.atleast_2d(np.asarray(s, dtype=complex))


def srm_outcome_probabilities(states, tol: float = 1e-9) -> np.ndarray:
    """``P[k, j]`` = probability of guessing ``j`` when state ``k`` was sent.

    Uses the square-root measurement ``mu_j = rho**-1/2 phi_j`` with
    ``rho = sum_k |phi_k><phi_k|`` restricted to its support.  The states
    must form a symmetric set: unit norm and one common real overlap.
    """
    phi = _as_state_rows(states)
    n = phi.shape[0]
    gram = phi.conj() @ phi.T
    if np.max(np.abs(np.diag(gram) - 1.0)) > tol:
        raise PreconditionError("states are not normalized")
    if n > 1:
        off = gram[~np.eye(n, dtype=bool)]
        if np.max(np.abs(off - off[0])) > tol or abs(off[0].imag) > tol:
            raise PreconditionError("state set is not symmetric (pairwise overlaps differ)")
    rho = phi.T @ phi.conj()
    evals, evecs = np.linalg.eigh(rho)
    keep = evals > 1e-12 * max(evals.max(), 1.0)
    inv_sqrt = (evecs[:, keep] / np.sqrt(evals[keep])) @ evecs[:, keep].conj().T
    mu = phi @ inv_sqrt.T  # row j is (rho**-1/2 |phi_j>)
    amp = phi.conj() @ mu.T  # [k, j] = <phi_k|mu_j>
    return np.abs(amp) ** 2


def mutual_information(joint: np.ndarray) -> float:
    """Mutual information in bits of a 2-D joint probability table."""
    p = np.asarray(joint, dtype=float)
    p = p / p.sum()
    px = p.sum(axis=1, keepdims=True)
    py = p.sum(axis=0, keepdims=True)
    mask = p > 0
    return float(np.sum(p[mask] * np.log2(p[mask] / (px @ py)[mask])))


def srm_mutual_information(states) -> float:
    """Information Eve extracts from ``d`` symmetric states with the SRM, uniform priors."""
    probs = srm_outcome_probabilities(states)
    return mutual_information(probs / probs.shape[0])


def all_bases_transformation(d: int, F: float, k: int) -> np.ndarray:
    """Universal-cloner output for ``|k>`` written in the computational form

    ``(v-x)/sqrt(d) |k>_B sum_l |l>_E|l>_E' + x sqrt(d) sum_m |k+m>_B |k>_E |k+m>_E'``.
    """
    p = universal_from_F(d, F)
    t = np.zeros((d, d, d), dtype=complex)
    l = np.arange(d)
    t[k, l, l] += (p.v - p.x) / math.sqrt(d)
    t[(k + l) % d, k, (k + l) % d] += p.x * math.sqrt(d)
    return t.reshape(-1)


@dataclass(frozen=True)
class JointDistribution:
    """``p[a, b, e, e']``: Alice's symbol, Bob's outcome, Eve's two outcomes."""

    d: int
    table: np.ndarray = field(repr=False)

    @property
    def p_abe(self) -> np.ndarray:
        """``p(a, b, e)`` with ``e`` Eve's clone outcome."""
        return self.table.sum(axis=3)

    def bob_error(self) -> np.ndarray:
        """Joint ``p[a, m]`` with ``m = b - a mod d``."""
        d = self.d
        out = np.zeros((d, d))
        for a in range(d):
            out[a] = np.roll(self.table[a].sum(axis=(1, 2)), -a)
        return out

    def eve_difference_matches_bob_error(self) -> float:
        """Probability that ``e' - e`` equals Bob's error ``b - a`` (mod d)."""
        d = self.d
        a, b, e, ep = np.indices(self.table.shape)
        return float(self.table[((ep - e) % d) == ((b - a) % d)].sum())

    def eve_guess_given_error(self, m: int) -> np.ndarray:
        """``P(e = a + j | m)`` for offsets ``j``, Eve guessing with her clone."""
        d = self.d
        a, b, e, ep = np.indices(self.table.shape)
        sel = ((b - a) % d) == m
        pm = self.table[sel].sum()
        if pm <= 0:
            raise UndefinedConditionalError(f"Bob error m={m} has zero probability")
        offs = ((e - a) % d)[sel]
        return np.bincount(offs, weights=self.table[sel], minlength=d) / pm

    def eve_information(self) -> float:
        """``I(A; E E')``, Eve holding both her outcomes."""
        return mutual_information(self.table.sum(axis=1).reshape(self.d, -1))

    def eve_information_given_error(self) -> float:
        """``sum_m P(m) I(A; E | M = m)`` with ``M = e' - e``."""
        d = self.d
        a, b, e, ep = np.indices(self.table.shape)
        mvals = (ep - e) % d
        total = 0.0
        for m in range(d):
            pae = np.zeros((d, d))
            np.add.at(pae, (a[mvals == m], e[mvals == m]), self.table[mvals == m])
            pm = pae.sum()
            if pm > 0:
                total += pm * mutual_information(pae)
        return total


def all_bases_joint_distribution(d: int, F: float) -> JointDistribution:
    """Exact outcome statistics of the universal-cloner attack, all registers
    measured in the computational basis, uniform Alice symbols."""
    _check_oracle_dim(d)
    p = universal_from_F(d, F)
    table = np.zeros((d, d, d, d))
    for k in range(d):
        amps = clone_state(p, computational_ket(d, k)).tensor()
        table[k] = np.abs(amps) ** 2 / d
    return JointDistribution(d, table)


# -- Monte Carlo ------------------------------------------------------------

CHUNK_ROUNDS = 1 << 16
RNG_DESCRIPTION = (
    "numpy PCG64; chunk i of 65536 rounds seeded by SeedSequence(seed, spawn_key=(i,))"
)


@dataclass(frozen=True)
class SimConfig:
    d: int
    protocol: Protocol
    disturbance: float
    rounds: int
    seed: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.d!r}")
        object.__setattr__(self, "protocol", Protocol(self.protocol))
        if not 0.0 <= self.disturbance <= 1.0 - 1.0 / self.d:
            raise DomainError(f"disturbance {self.disturbance} outside [0, 1 - 1/d]")
        if self.rounds < 1:
            raise DomainError(f"rounds must be >= 1, got {self.rounds}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def cloner(self) -> ClonerParams:
        F = 1.0 - self.disturbance
        if self.protocol is Protocol.TWO_BASES:
            return two_basis_optimal(self.d, F)
        return universal_from_F(self.d, F)


@dataclass(frozen=True)
class SimReport:
    d: int
    protocol: str
    disturbance: float
    rounds: int
    seed: int
    rounds_kept: int
    symbol_errors: int
    sift_fraction: float
    sift_expected: float
    sift_stderr: float
    qber: float
    qber_expected: float
    qber_stderr: float
    rng: str = RNG_DESCRIPTION

    @property
    def sift_z(self) -> float:
        return _zscore(self.sift_fraction, self.sift_expected, self.sift_stderr)

    @property
    def qber_z(self) -> float:
        return _zscore(self.qber, self.qber_expected, self.qber_stderr)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["sift_z"] = self.sift_z
        out["qber_z"] = self.qber_z
        return out


def _zscore(observed: float, expected: float, stderr: float) -> float:
    if stderr == 0.0:
        return 0.0 if observed == expected else math.inf
    return (observed - expected) / stderr


def _run_chunk(seed: int, index: int, n: int, n_bases: int, d: int, cdf: np.ndarray):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))
    alice_basis = rng.integers(n_bases, size=n)
    bob_basis = rng.integers(n_bases, size=n)
    symbol = rng.integers(d, size=n)
    shift = np.searchsorted(cdf, rng.random(n), side="right")
    kept = alice_basis == bob_basis
    bob_symbol = (symbol + shift) % d
    return int(kept.sum()), int((bob_symbol[kept] != symbol[kept]).sum())


def run_protocol(cfg: SimConfig, workers: int = 1) -> SimReport:
    """Simulate ``cfg.rounds`` transmissions through the cloner's error channel.

    Results depend only on ``(seed, rounds)``: rounds are cut into fixed
    chunks with their own seed streams, so ``workers`` only changes speed.
    """
    d = cfg.d
    p = cfg.cloner()
    # both families give the same visible-error law in every basis
    dist = bob_error_distribution(p, Basis.COMPUTATIONAL)
    cdf = np.cumsum(dist)
    cdf[-1] = 1.0
    n_bases = 2 if cfg.protocol is Protocol.TWO_BASES else d + 1
    sizes = [CHUNK_ROUNDS] * (cfg.rounds // CHUNK_ROUNDS)
    if cfg.rounds % CHUNK_ROUNDS:
        sizes.append(cfg.rounds % CHUNK_ROUNDS)
    args = [(cfg.seed, i, n, n_bases, d, cdf) for i, n in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _run_chunk(*a), args))
    else:
        parts = [_run_chunk(*a) for a in args]
    kept = sum(k for k, _ in parts)
    errors = sum(e for _, e in parts)

    sift_exp = sifting_yield(d, cfg.protocol)
    qber_exp = float(1.0 - dist[0])
    return SimReport(
        d=d,
        protocol=cfg.protocol.value,
        disturbance=cfg.disturbance,
        rounds=cfg.rounds,
        seed=cfg.seed,
        rounds_kept=kept,
        symbol_errors=errors,
        sift_fraction=kept / cfg.rounds,
        sift_expected=sift_exp,
        sift_stderr=math.sqrt(sift_exp * (1 - sift_exp) / cfg.rounds),
        qber=errors / kept if kept else 0.0,
        qber_expected=qber_exp,
        qber_stderr=math.sqrt(qber_exp * (1 - qber_exp) / kept) if kept else 0.0,
    )
