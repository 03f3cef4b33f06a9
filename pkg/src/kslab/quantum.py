"""Spin-1 matrices and the two-particle singlet as a numeric sanity oracle.

Basis order is m = +1, 0, -1 with S_z diagonal. All checks use the
max-entry norm and an absolute tolerance of 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import Ray

TOL = 1e-12

_r = 1 / np.sqrt(2)
SX = _r * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
SY = _r * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex)
SZ = np.diag([1.0, 0.0, -1.0]).astype(complex)
I3 = np.eye(3, dtype=complex)


def max_norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


@dataclass(frozen=True)
class SpinOperator:
    matrix: np.ndarray
    label: str

    def __post_init__(self):
        if max_norm(self.matrix - self.matrix.conj().T) > TOL:
            raise DomainError(f"operator {self.label} is not Hermitian")

    def squared(self) -> SpinOperator:
        return SpinOperator(self.matrix @ self.matrix, f"{self.label}^2")


def _unit(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise DomainError("direction must have 3 components")
    if abs(np.linalg.norm(n) - 1.0) > TOL:
        raise DomainError(f"direction {n.tolist()} is not a unit vector")
    return n


def unit_vector(r: Ray) -> np.ndarray:
    """Float unit vector along an exact ray."""
    v = np.array(r.to_floats())
    return v / np.linalg.norm(v)


def spin_component(n) -> SpinOperator:
    """S_n = n . S for a unit vector ``n``."""
    nx, ny, nz = _unit(n)
    return SpinOperator(nx * SX + ny * SY + nz * SZ, f"n({nx:.6g},{ny:.6g},{nz:.6g})")


def squared_spectrum(n) -> np.ndarray:
    """Sorted eigenvalues of S_n^2."""
    return np.sort(np.linalg.eigvalsh(spin_component(n).squared().matrix))


def spectral_projectors(n) -> tuple[np.ndarray, np.ndarray]:
    """Projectors of S_n^2 onto its eigenvalues 0 and 1."""
    vals, vecs = np.linalg.eigh(spin_component(n).squared().matrix)
    p0 = np.zeros((3, 3), dtype=complex)
    p1 = np.zeros((3, 3), dtype=complex)
    for lam, v in zip(vals, vecs.T):
        proj = np.outer(v, v.conj())
        if abs(lam) < 1e-6:
            p0 += proj
        elif abs(lam - 1) < 1e-6:
            p1 += proj
        else:
            raise AssertionError(f"S_n^2 eigenvalue {lam} is neither 0 nor 1")
    return p0, p1


def sum_rule_residual(x, y, z) -> float:
    """max |S_x^2 + S_y^2 + S_z^2 - 2I| for an orthonormal triple."""
    vs = [_unit(v) for v in (x, y, z)]
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(float(vs[i] @ vs[j])) > TOL:
                raise DomainError("directions are not pairwise orthogonal")
    total = sum(spin_component(v).squared().matrix for v in vs)
    return max_norm(total - 2 * I3)


def commutator_norm(a: SpinOperator, b: SpinOperator) -> float:
    return max_norm(a.matrix @ b.matrix - b.matrix @ a.matrix)


def singlet() -> np.ndarray:
    """Total-spin-0 state of two spin-1 particles, index 3*a + b."""
    psi = np.zeros(9, dtype=complex)
    psi[0 * 3 + 2] = 1  # |+1,-1>
    psi[1 * 3 + 1] = -1  # |0,0>
    psi[2 * 3 + 0] = 1  # |-1,+1>
    return psi / np.linalg.norm(psi)


def total_spin_squared() -> np.ndarray:
    total = [np.kron(s, I3) + np.kron(I3, s) for s in (SX, SY, SZ)]
    return sum(t @ t for t in total)


def twin_agreement_probability(n, state: np.ndarray | None = None) -> float:
    """Probability that both particles give the same S_n^2 outcome."""
    psi = singlet() if state is None else np.asarray(state, dtype=complex)
    p0, p1 = spectral_projectors(n)
    agree = np.kron(p0, p0) + np.kron(p1, p1)
    return float(np.real(psi.conj() @ agree @ psi))


def random_unit_vectors(rng: np.random.Generator, k: int) -> np.ndarray:
    v = rng.normal(size=(k, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_orthonormal_triple(rng: np.random.Generator) -> np.ndarray:
    """Rows form a Haar-random orthonormal frame."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    return q.T


def sweep(trials: int, seed: int) -> dict:
    """Randomized spectrum, sum-rule, commutator and twin-agreement checks."""
    if trials < 1:
        raise DomainError("need at least one trial")
    rng = np.random.default_rng(seed)
    spec_err = sum_err = comm_err = twin_err = 0.0
    for _ in range(trials):
        x, y, z = random_orthonormal_triple(rng)
        sum_err = max(sum_err, sum_rule_residual(x, y, z))
        ops = [spin_component(v).squared() for v in (x, y, z)]
        comm_err = max(comm_err, commutator_norm(ops[0], ops[1]), commutator_norm(ops[1], ops[2]),
                       commutator_norm(ops[0], ops[2]))
        (n,) = random_unit_vectors(rng, 1)
        n = n / np.linalg.norm(n)
        spec_err = max(spec_err, float(np.max(np.abs(squared_spectrum(n) - [0, 1, 1]))))
        twin_err = max(twin_err, abs(twin_agreement_probability(n) - 1.0))
    return {
        "trials": trials,
        "seed": seed,
        "tolerance": TOL,
        "max_spectrum_error": spec_err,
        "max_sum_rule_residual": sum_err,
        "max_commutator_norm": comm_err,
        "max_twin_agreement_error": twin_err,
        "passed": max(spec_err, sum_err, comm_err, twin_err) < TOL,
    }
