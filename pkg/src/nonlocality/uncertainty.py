"""Majorization uncertainty bounds for pairs of qubit observables and eigenvalue partial-sum checks.

Bob's observables here follow the convention ``Y = sz`` and
``Y' = cos(t) sz + sin(t) sx``, so ``t`` is the angle between them.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DomainError,
    UsageError,
    as_matrix,
    hermitian_eigenvalues,
    is_hermitian,
)
from .scenario import QubitObservable, qubit_state
from .search import bloch_sphere_max

MAJORIZATION_TOL = 1e-10
HORN_TOL = 1e-9
PROB_TOL = 1e-12

# (y (+) y')^down for two +-1 observables; identical for (y (+) -y')
PM_ONE_EIGENVALUES = np.array([1.0, 1.0, -1.0, -1.0])


def _check_half_range(theta):
    theta = float(theta)
    if not 0.0 <= theta <= np.pi / 2:
        raise UsageError(f"theta={theta} outside [0, pi/2]")
    return theta


def observable_pair(theta):
    """``(Y, Y')`` at relative angle ``theta``: ``Y = sz``, ``Y' = cos(theta) sz + sin(theta) sx``."""
    theta = float(theta)
    return (
        QubitObservable((0.0, 0.0, 1.0)),
        QubitObservable((np.sin(theta), 0.0, np.cos(theta))),
    )


@dataclass(frozen=True)
class MajorizationVector:
    theta: float
    s: tuple

    @property
    def partial_sums(self):
        return np.cumsum(self.s)


def majorization_bound(theta):
    """Direct-sum majorization bound ``(1, cos(t/2), 1 - cos(t/2), 0)`` for ``t`` in [0, pi/2].

    For ``t`` in (pi/2, pi] use ``pi - t`` together with ``-Y'``.
    """
    theta = _check_half_range(theta)
    c = np.cos(theta / 2.0)
    return MajorizationVector(theta, (1.0, float(c), float(1.0 - c), 0.0))


@dataclass(frozen=True)
class ProbabilityPair:
    """Outcome distributions ``p`` of Y and ``q`` of Y'."""

    p: tuple
    q: tuple

    def __post_init__(self):
        for name in ("p", "q"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (2,) or np.any(v < -PROB_TOL) or abs(v.sum() - 1.0) > PROB_TOL:
                raise DomainError(f"{name}={v.tolist()} is not a two-outcome distribution")
            object.__setattr__(self, name, tuple(v))

    @property
    def direct_sum(self):
        return np.concatenate([self.p, self.q])


def measurement_distributions(rho, y, y_prime):
    """Born-rule outcome distributions (+1, -1) of Y and Y' on a qubit state."""
    rho = as_matrix(rho)
    out = []
    for obs in (y, y_prime):
        e = float(np.trace(rho @ obs.matrix).real)
        out.append((0.5 * (1.0 + e), 0.5 * (1.0 - e)))
    return ProbabilityPair(*out)


def majorizes(pp, s, tol=MAJORIZATION_TOL):
    """True iff ``p (+) q`` is majorized by ``s``.

    Every prefix sum of the descending-sorted ``p (+) q`` must stay below the
    matching prefix sum of ``s``. ``pp`` may also be a ``MajorizationVector``
    or a plain 4-vector.
    """
    if isinstance(pp, ProbabilityPair):
        v = pp.direct_sum
    else:
        v = np.asarray(getattr(pp, "s", pp), dtype=float)
    v = np.sort(v)[::-1]
    return bool(np.all(np.cumsum(v) <= np.cumsum(s.s) + tol))


def expectation_sum_bound(theta):
    """Upper bound ``2 cos(theta/2)`` on ``<Y + Y'>``."""
    s = majorization_bound(theta)
    # (1, 1, -1, -1) . (1, c, 1 - c, 0) = 2c
    return float(PM_ONE_EIGENVALUES @ np.asarray(s.s))


def expectation_diff_bound(theta):
    """Upper bound ``2 sin(theta/2)`` on ``<Y - Y'>``; ``-Y'`` sits at angle ``pi - theta`` from Y."""
    theta = _check_half_range(theta)
    return float(2.0 * np.sin(theta / 2.0))


def max_expectation_over_pure_states(obs):
    """Largest ``<psi|obs|psi>`` over pure qubit states via the Bloch-sphere grid maximizer."""
    obs = as_matrix(obs)
    if obs.shape != (2, 2) or not is_hermitian(obs):
        raise DomainError("need a Hermitian qubit observable")

    def value(r):
        return float(np.trace(qubit_state(r) @ obs).real)

    _, best = bloch_sphere_max(value)
    return best


def horn_check(a, b, l, tol=HORN_TOL):
    """Leading partial-sum inequality for ``c = a + b``.

    True iff sum_{i<=l} alpha_i + sum_{i<=l} beta_i >= sum_{i<=l} gamma_i - tol,
    with alpha, beta, gamma the descending spectra of a, b and a + b.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise UsageError("matrices must have the same dimension")
    n = a.shape[0]
    if not isinstance(l, (int, np.integer)) or not 1 <= l <= n:
        raise UsageError(f"level l={l!r} outside [1, {n}]")
    return bool(horn_margin(a, b, l) >= -tol)


def horn_margin(a, b, l):
    """``sum alpha[:l] + sum beta[:l] - sum gamma[:l]``."""
    alpha = hermitian_eigenvalues(a)
    beta = hermitian_eigenvalues(b)
    gamma = hermitian_eigenvalues(as_matrix(a) + as_matrix(b))
    return float(alpha[:l].sum() + beta[:l].sum() - gamma[:l].sum())


def constraint_coefficients(theta=np.pi / 2, states=None, n_states=1000, seed=0):
    """Largest ``a^2 + a'^2`` over a set of qubit states, where

        <Y + Y'> = sqrt(2) a,   <Y - Y'> = sqrt(2) a'

    for orthogonal Y, Y'. ``states`` is an array of Bloch vectors; when
    omitted, ``n_states`` pure states are drawn uniformly from the sphere.
    Returns the maximum of the squared norm, which never exceeds 1.
    """
    if abs(float(theta) - np.pi / 2) > 1e-12:
        raise UsageError("the a^2 + a'^2 <= 1 constraint is stated for orthogonal observables (theta = pi/2)")
    y, y_prime = observable_pair(theta)
    plus = y.matrix + y_prime.matrix
    minus = y.matrix - y_prime.matrix
    if states is None:
        rng = np.random.default_rng(seed)
        states = rng.normal(size=(n_states, 3))
        states /= np.linalg.norm(states, axis=1, keepdims=True)
    best = 0.0
    for r in np.atleast_2d(states):
        rho = qubit_state(r)
        a = np.trace(rho @ plus).real / np.sqrt(2.0)
        a_prime = np.trace(rho @ minus).real / np.sqrt(2.0)
        best = max(best, float(a * a + a_prime * a_prime))
    return best


__all__ = [
    "MajorizationVector",
    "ProbabilityPair",
    "constraint_coefficients",
    "expectation_diff_bound",
    "expectation_sum_bound",
    "horn_check",
    "horn_margin",
    "majorization_bound",
    "majorizes",
    "max_expectation_over_pure_states",
    "measurement_distributions",
    "observable_pair",
]
