"""Qubit observables, the joint CHSH operator S, two-qubit states and their moments."""

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    ID2,
    ID4,
    DomainError,
    UsageError,
    bloch_operator,
    check_density_matrix,
    kron,
    trace_expectation,
)

UNIT_TOL = 1e-12
MAX_MOMENT_ORDER = 8

# S = X(x)Y - X(x)Y' + X'(x)Y + X'(x)Y'
CHSH_COEFFICIENTS = ((1.0, -1.0), (1.0, 1.0))


@dataclass(frozen=True)
class QubitObservable:
    """A +-1 valued qubit observable ``n . sigma`` given by a unit Bloch vector ``n``."""

    bloch: tuple

    def __post_init__(self):
        vec = tuple(float(v) for v in self.bloch)
        if len(vec) != 3:
            raise UsageError("Bloch vector must have 3 components")
        if abs(np.linalg.norm(vec) - 1.0) > UNIT_TOL:
            raise DomainError(f"observable Bloch vector has norm {np.linalg.norm(vec):.15g}, expected 1")
        object.__setattr__(self, "bloch", vec)

    @property
    def matrix(self):
        return bloch_operator(self.bloch)

    def __neg__(self):
        return QubitObservable(tuple(-v for v in self.bloch))


@dataclass(frozen=True)
class BipartiteScenario:
    """Two measurement settings per party plus the coefficients ``m_ij`` of

        S = sum_ij m_ij A_i (x) B_j,   A = (X, X'),  B = (Y, Y').
    """

    x: QubitObservable
    x_prime: QubitObservable
    y: QubitObservable
    y_prime: QubitObservable
    theta: float = None
    s_coefficients: tuple = field(default=CHSH_COEFFICIENTS)

    def __post_init__(self):
        m = np.asarray(self.s_coefficients, dtype=float)
        if m.shape != (2, 2):
            raise UsageError("s_coefficients must be 2x2")
        object.__setattr__(self, "s_coefficients", tuple(tuple(row) for row in m))

    @property
    def alice(self):
        return (self.x, self.x_prime)

    @property
    def bob(self):
        return (self.y, self.y_prime)


def canonical_scenario(theta):
    """X = sz, X' = sx, Y = sin(t) sx + cos(t) sz, Y' = cos(t) sx - sin(t) sz.

    ``theta`` is the angle between X and Y on the Bloch sphere, in [0, pi].
    """
    theta = float(theta)
    if not 0.0 <= theta <= np.pi:
        raise UsageError(f"theta={theta} outside [0, pi]")
    s, c = np.sin(theta), np.cos(theta)
    return BipartiteScenario(
        x=QubitObservable((0.0, 0.0, 1.0)),
        x_prime=QubitObservable((1.0, 0.0, 0.0)),
        y=QubitObservable((s, 0.0, c)),
        y_prime=QubitObservable((c, 0.0, -s)),
        theta=theta,
    )


def qubit_state(bloch):
    """Single-qubit density matrix ``(1 + r . sigma) / 2`` with ``|r| <= 1``."""
    r = np.asarray(bloch, dtype=float)
    if r.shape != (3,):
        raise UsageError("Bloch vector must have 3 components")
    if np.linalg.norm(r) > 1.0 + UNIT_TOL:
        raise DomainError(f"state Bloch vector has norm {np.linalg.norm(r):.15g} > 1")
    return 0.5 * (ID2 + bloch_operator(r))


def singlet():
    """Projector onto (|01> - |10>)/sqrt(2)."""
    psi = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def product_state(bloch_a, bloch_b):
    return kron(qubit_state(bloch_a), qubit_state(bloch_b))


def werner_state(visibility):
    """``v * singlet + (1 - v) * 1/4``; ``v = 0`` is the maximally mixed state."""
    v = float(visibility)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"visibility {v} outside [0, 1]")
    return v * singlet() + (1.0 - v) * ID4 / 4.0


def correlator(rho, a, b):
    """Quantum correlator ``E(A, B) = Tr[rho (A (x) B)]``."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise UsageError("correlator needs a two-qubit (4x4) state")
    return trace_expectation(rho, kron(a.matrix, b.matrix))


def correlators(rho, sc):
    """The four correlators ``E[i][j] = E(A_i, B_j)`` as a 2x2 array."""
    return np.array([[correlator(rho, a, b) for b in sc.bob] for a in sc.alice])


def s_operator(sc):
    out = np.zeros((4, 4), dtype=complex)
    for i, a in enumerate(sc.alice):
        for j, b in enumerate(sc.bob):
            m = sc.s_coefficients[i][j]
            if m:
                out += m * kron(a.matrix, b.matrix)
    return out


def mean_s(rho, sc):
    return float(np.sum(np.asarray(sc.s_coefficients) * correlators(rho, sc)))


def moment(rho, s, k):
    """k-th raw moment ``Tr[rho S^k]`` for 1 <= k <= 8."""
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= MAX_MOMENT_ORDER:
        raise UsageError(f"moment order must be an integer in [1, {MAX_MOMENT_ORDER}], got {k!r}")
    power = np.asarray(s, dtype=complex)
    for _ in range(k - 1):
        power = power @ s
    # S^k stays Hermitian in exact arithmetic; symmetrize away rounding drift
    power = 0.5 * (power + power.conj().T)
    return trace_expectation(rho, power)


def moments(rho, s, n):
    """Raw moments ``[m_1, ..., m_n]``."""
    return [moment(rho, s, k) for k in range(1, n + 1)]


__all__ = [
    "CHSH_COEFFICIENTS",
    "BipartiteScenario",
    "QubitObservable",
    "canonical_scenario",
    "check_density_matrix",
    "correlator",
    "correlators",
    "mean_s",
    "moment",
    "moments",
    "product_state",
    "qubit_state",
    "s_operator",
    "singlet",
    "werner_state",
]
