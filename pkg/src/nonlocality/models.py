"""Classical and post-quantum correlation models for the two-setting CHSH scenario.

Four models, in increasing strength:

* local hidden variables: mixtures of the 16 deterministic strategies;
* non-steering: Bob holds a single hidden ensemble of qubit states shared by
  both of Alice's settings;
* toy steering: Alice's two settings steer Bob into independent ensembles;
* the PR box: a no-signaling box with no quantum realization.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import DomainError, UsageError, trace_expectation
from .scenario import CHSH_COEFFICIENTS, qubit_state

WEIGHT_TOL = 1e-12
NO_SIGNALING_TOL = 1e-12
CORRELATOR_TOL = 1e-12


@dataclass(frozen=True)
class DeterministicStrategy:
    a_x: int
    a_xp: int
    b_y: int
    b_yp: int

    def __post_init__(self):
        for v in (self.a_x, self.a_xp, self.b_y, self.b_yp):
            if v not in (-1, 1):
                raise DomainError(f"deterministic outcome must be +-1, got {v}")

    def correlators(self):
        """``E[i][j] = A_i B_j`` for A = (X, X'), B = (Y, Y')."""
        return np.outer([self.a_x, self.a_xp], [self.b_y, self.b_yp]).astype(float)

    def s_value(self, coefficients=CHSH_COEFFICIENTS):
        return float(np.sum(np.asarray(coefficients) * self.correlators()))


def enumerate_strategies():
    """All 16 deterministic strategies, lexicographic in (a_x, a_xp, b_y, b_yp) with -1 first."""
    return [DeterministicStrategy(*v) for v in itertools.product((-1, 1), repeat=4)]


def check_mixture(weights):
    w = np.asarray(weights, dtype=float)
    if w.shape != (16,):
        raise UsageError(f"a hidden variable mixture needs 16 weights, got shape {w.shape}")
    if np.any(w < -WEIGHT_TOL) or abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise DomainError("mixture weights must be non-negative and sum to 1")
    return w


def strategy_s_values(coefficients=CHSH_COEFFICIENTS):
    return np.array([st.s_value(coefficients) for st in enumerate_strategies()])


def lhvt_chsh_range(coefficients=CHSH_COEFFICIENTS):
    """Range of <S> over all LHV mixtures: the hull of the vertex values."""
    values = strategy_s_values(coefficients)
    return float(values.min()), float(values.max())


def mixture_mean_s(weights, coefficients=CHSH_COEFFICIENTS):
    return float(check_mixture(weights) @ strategy_s_values(coefficients))


def mixture_correlators(weights):
    w = check_mixture(weights)
    return sum(wi * st.correlators() for wi, st in zip(w, enumerate_strategies()))


@dataclass(frozen=True)
class TwoPointDistribution:
    """Distribution of S under an LHV mixture: S = +2 with p_plus, S = -2 with p_minus."""

    p_plus: float
    p_minus: float

    def moment(self, k):
        return 2.0 ** k * (self.p_plus + (-1) ** k * self.p_minus)

    def moments(self, n):
        return [self.moment(k) for k in range(1, n + 1)]

    @property
    def mean(self):
        return self.moment(1)


def lhvt_s_distribution(weights):
    """Law of S for the canonical CHSH coefficients under an LHV mixture."""
    w = check_mixture(weights)
    values = strategy_s_values()
    p_plus = float(w[values > 0].sum())
    return TwoPointDistribution(p_plus=p_plus, p_minus=float(w[values < 0].sum()))


def nonsteering_quadratic(e_xy, e_xyp, e_xpy, e_xpyp):
    """``[E(X,Y) - E(X,Y')]^2 + [E(X',Y) + E(X',Y')]^2``.

    Non-steering correlations keep this at or below 2; quantum correlations
    reach 4; the PR box gives 8.
    """
    es = np.array([e_xy, e_xyp, e_xpy, e_xpyp], dtype=float)
    if np.any(np.abs(es) > 1.0 + CORRELATOR_TOL):
        raise DomainError(f"correlators must lie in [-1, 1], got {es.tolist()}")
    return float((es[0] - es[1]) ** 2 + (es[2] + es[3]) ** 2)


NONSTEERING_QUADRATIC_BOUND = 2.0
QUANTUM_QUADRATIC_BOUND = 4.0


def assemblage_correlators(xi, a_x, a_xp, states_x, states_xp, y, y_prime):
    """Correlators of a hidden-ensemble model for Bob.

    Hidden variable ``l`` occurs with probability ``xi[l]``; Alice answers
    setting X (X') with expected value ``a_x[l]`` (``a_xp[l]``) in [-1, 1];
    Bob's conditional qubit state is given by Bloch vector ``states_x[l]``
    when Alice measures X and ``states_xp[l]`` when she measures X'.

    Passing the same ensemble for both settings is the non-steering
    (local hidden state) model; different ensembles give the toy steering
    model in which the two settings refine Bob's state independently.

    Returns
    -------
    ndarray
        ``E[i][j]`` with rows (X, X') and columns (Y, Y').
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < -WEIGHT_TOL) or abs(xi.sum() - 1.0) > WEIGHT_TOL:
        raise DomainError("hidden variable weights must be non-negative and sum to 1")
    a = np.array([a_x, a_xp], dtype=float)
    if np.any(np.abs(a) > 1.0 + CORRELATOR_TOL):
        raise DomainError("Alice's response functions must lie in [-1, 1]")
    ensembles = (np.asarray(states_x, dtype=float), np.asarray(states_xp, dtype=float))
    out = np.zeros((2, 2))
    for i, ens in enumerate(ensembles):
        if ens.shape != (len(xi), 3):
            raise UsageError("one Bloch vector per hidden variable is required")
        for j, obs in enumerate((y, y_prime)):
            bob = np.array([trace_expectation(qubit_state(r), obs.matrix) for r in ens])
            out[i, j] = float(np.sum(xi * a[i] * bob))
    return out


def toy_steering_max(theta):
    """Largest CHSH value when Bob's two conditional terms saturate their
    individual uncertainty limits 2 sin(theta/2) and 2 cos(theta/2) together.

    ``theta`` is the angle between Bob's two observables.
    """
    theta = float(theta)
    if not 0.0 <= theta <= np.pi:
        raise UsageError(f"theta={theta} outside [0, pi]")
    return 2.0 * np.sin(theta / 2.0) + 2.0 * np.cos(theta / 2.0)


# Setting labels as PR-box input bits. The box outputs a XOR b = x AND y, so the
# single anticorrelated pair (x=1, y=1) must be (X, Y'), the term the CHSH
# combination subtracts.
PR_INPUT_BITS = {"X": 1, "X'": 0, "Y": 0, "Y'": 1}


@dataclass(frozen=True)
class NoSignalingBox:
    """Conditional table ``p[a, b, x, y]`` with output bits a, b and input bits x, y.

    An output bit 0 means the measurement result +1, bit 1 means -1.
    """

    p: np.ndarray

    def correlator(self, x, y):
        sign = np.array([[1, -1], [-1, 1]])
        return float(np.sum(sign * self.p[:, :, x, y]))

    def setting_correlator(self, alice, bob):
        return self.correlator(PR_INPUT_BITS[alice], PR_INPUT_BITS[bob])

    def chsh_correlators(self):
        return np.array([
            [self.setting_correlator("X", "Y"), self.setting_correlator("X", "Y'")],
            [self.setting_correlator("X'", "Y"), self.setting_correlator("X'", "Y'")],
        ])

    def chsh_value(self, coefficients=CHSH_COEFFICIENTS):
        return float(np.sum(np.asarray(coefficients) * self.chsh_correlators()))

    def normalization_error(self):
        return float(np.max(np.abs(self.p.sum(axis=(0, 1)) - 1.0)))

    def signaling_error(self):
        """Largest change of one party's marginal under the other party's input."""
        alice = self.p.sum(axis=1)  # [a, x, y]
        bob = self.p.sum(axis=0)    # [b, x, y]
        return float(max(
            np.max(np.abs(alice[:, :, 0] - alice[:, :, 1])),
            np.max(np.abs(bob[:, 0, :] - bob[:, 1, :])),
        ))

    def is_no_signaling(self, tol=NO_SIGNALING_TOL):
        return (
            bool(np.all(self.p >= -tol))
            and self.normalization_error() <= tol
            and self.signaling_error() <= tol
        )


def pr_box():
    p = np.zeros((2, 2, 2, 2))
    for a, b, x, y in itertools.product((0, 1), repeat=4):
        if a ^ b == x & y:
            p[a, b, x, y] = 0.5
    return NoSignalingBox(p)


LHVT_CHSH_BOUND = 2.0
QUANTUM_CHSH_BOUND = 2.0 * np.sqrt(2.0)
SUPERQUANTUM_CHSH_BOUND = 4.0

