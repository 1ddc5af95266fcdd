"""Oracle-versus-closed-form checks, bundled for the ``verify`` command."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import cloner as cl
from . import hilbert as hb
from . import infotheory as it
from . import oracle as orc
from .errors import DomainError, UndefinedConditionalError

EXACT_TOL = 1e-12
EIGEN_TOL = 1e-9
F_SAMPLES = 10


@dataclass
class Check:
    name: str
    tolerance: float
    worst: float = 0.0
    cases: int = 0

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance

    def record(self, residual: float) -> None:
        self.worst = max(self.worst, float(residual))
        self.cases += 1

    def to_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def fidelity_grid(d: int, kind: cl.ClonerKind, n: int = F_SAMPLES) -> np.ndarray:
    lo = 1.0 / d if kind is cl.ClonerKind.TWO_BASES else 1.0 / (d + 1)
    return np.linspace(lo, 1.0, n + 1)[1:]


def _cloner(d: int, kind: cl.ClonerKind, F: float) -> cl.ClonerParams:
    if kind is cl.ClonerKind.TWO_BASES:
        return cl.two_basis_optimal(d, F)
    return cl.universal_from_F(d, F)


def _mixture(p: cl.ClonerParams, psi: np.ndarray) -> np.ndarray:
    w = cl.amplitude_matrix(p).weights
    rho = np.zeros((p.d, p.d), dtype=complex)
    for m in range(p.d):
        for n in range(p.d):
            phi = hb.error_op_matrix(p.d, m, n) @ psi
            rho += w[m, n] * np.outer(phi, phi.conj())
    return rho


def run_verification(d_max: int = 5) -> list[Check]:
    if not 2 <= d_max <= orc.MAX_ORACLE_DIM:
        raise DomainError(f"d_max must lie in [2, {orc.MAX_ORACLE_DIM}], got {d_max}")
    checks = {
        name: Check(name, tol)
        for name, tol in [
            ("error_ops_unitary", EXACT_TOL),
            ("bases_mutually_unbiased", EXACT_TOL),
            ("bell_orthonormal", EXACT_TOL),
            ("fourier_dual_matches_primes", EXACT_TOL),
            ("oracle_bob_mixture", EXACT_TOL),
            ("oracle_F", EXACT_TOL),
            ("oracle_F_bar", EXACT_TOL),
            ("oracle_F_E", EXACT_TOL),
            ("two_bases_F_E_closed_form", EXACT_TOL),
            ("eve_overlap_symmetric", EIGEN_TOL),
            ("srm_information", EIGEN_TOL),
            ("all_bases_information", EIGEN_TOL),
            ("all_bases_error_tag", EXACT_TOL),
        ]
    }
    for d in range(2, d_max + 1):
        eye = np.eye(d)
        for m in range(d):
            for n in range(d):
                u = hb.error_op_matrix(d, m, n)
                checks["error_ops_unitary"].record(np.abs(u @ u.conj().T - eye).max())
        for k in range(d):
            for l in range(d):
                ov = abs(hb.computational_ket(d, k).inner(hb.fourier_dual_ket(d, l)))
                checks["bases_mutually_unbiased"].record(abs(ov - 1 / np.sqrt(d)))
        bells = np.array([hb.bell_ket(d, m, n).amplitudes for m in range(d) for n in range(d)])
        checks["bell_orthonormal"].record(np.abs(bells.conj() @ bells.T - np.eye(d * d)).max())

        for kind in cl.ClonerKind:
            for F in fidelity_grid(d, kind):
                p = _cloner(d, kind, float(F))
                pe = cl.eve_params(p)
                b = cl.fourier_dual_amplitudes(cl.amplitude_matrix(p)).entries
                checks["fourier_dual_matches_primes"].record(
                    np.abs(b - cl.amplitude_matrix(pe).entries).max()
                )
                fr = cl.fidelities(p)
                for basis in ("computational", "dual"):
                    for j in range(d):
                        ket = hb.computational_ket(d, j) if basis == "computational" else hb.fourier_dual_ket(d, j)
                        js = orc.clone_state(p, ket)
                        rho_b = js.reduced(0)
                        rho_e = js.reduced(1)
                        psi = ket.amplitudes
                        checks["oracle_bob_mixture"].record(np.abs(rho_b - _mixture(p, psi)).max())
                        name = "oracle_F" if basis == "computational" else "oracle_F_bar"
                        target = fr.F if basis == "computational" else fr.F_bar
                        checks[name].record(abs(np.vdot(psi, rho_b @ psi).real - target))
                        checks["oracle_F_E"].record(abs(np.vdot(psi, rho_e @ psi).real - fr.F_E))
                if kind is cl.ClonerKind.TWO_BASES:
                    checks["two_bases_F_E_closed_form"].record(
                        abs(fr.F_E - cl.two_basis_eve_fidelity(d, float(F)))
                    )
                    expected = it.eve_info_two_bases(d, float(F))
                    target = (d * F - 1) / (d - 1)
                    for m in range(d):
                        try:
                            cs = orc.eve_conditional_states_two_bases(p, m)
                        except UndefinedConditionalError:
                            continue
                        ov = cs.overlaps
                        off = ov[~np.eye(d, dtype=bool)]
                        checks["eve_overlap_symmetric"].record(np.abs(off - target).max())
                        checks["srm_information"].record(abs(orc.srm_mutual_information(cs) - expected))
                else:
                    jd = orc.all_bases_joint_distribution(d, float(F))
                    expected = it.eve_info_all_bases(d, float(F))
                    checks["all_bases_information"].record(abs(jd.eve_information() - expected))
                    checks["all_bases_information"].record(
                        abs(jd.eve_information_given_error() - expected)
                    )
                    checks["all_bases_error_tag"].record(1.0 - jd.eve_difference_matches_bob_error())
    return list(checks.values())
