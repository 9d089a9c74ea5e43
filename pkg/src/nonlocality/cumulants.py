"""Cumulants of the joint observable S and cumulant-order nonlocality witnesses.

A theory shows n-th order nonlocality when it pushes kappa_n(S) outside the
interval [M-, M+] reachable by local hidden variable (LHV) models. Under LHV
models every commutator term of S^k has zero expectation, so the LHV value
of kappa_n depends on <S> only; the witnesses below evaluate that functional
at the measured <S>.
"""

from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import comb

import numpy as np
from scipy.optimize import minimize

from .linalg import UsageError
from .models import CHSH_COEFFICIENTS, LHVT_CHSH_BOUND, strategy_s_values
from .scenario import check_density_matrix, moments, s_operator
from .scenario import mean_s as expected_s
from .search import grid_then_golden_max

MAX_CUMULANT_ORDER = 8
VERDICT_TOL = 1e-10

SKEWNESS_BOUND = 16.0 * np.sqrt(3.0) / 9.0
KAPPA3_LHVT_BOUND = 32.0 * np.sqrt(3.0) / 9.0


def cumulants_from_moments(m):
    """Cumulants ``[k_1, ..., k_n]`` from raw moments ``[m_1, ..., m_n]``.

    Uses ``k_n = m_n - sum_{k=1}^{n-1} C(n-1, k-1) k_k m_{n-k}``.
    """
    m = [float(v) for v in m]
    n = len(m)
    if not 1 <= n <= MAX_CUMULANT_ORDER:
        raise UsageError(f"need between 1 and {MAX_CUMULANT_ORDER} moments, got {n}")
    if not np.all(np.isfinite(m)):
        raise UsageError("moments must be finite")
    raw = [1.0] + m
    kappa = [0.0]
    for order in range(1, n + 1):
        value = raw[order]
        for k in range(1, order):
            value -= comb(order - 1, k - 1) * kappa[k] * raw[order - k]
        kappa.append(value)
    return kappa[1:]


def lhvt_moments_at_mean(s, n):
    """Moments of S implied by the LHV substitution at mean ``s``: S^2 -> 4, so
    ``m_k = 2^k`` for even k and ``2^(k-1) s`` for odd k."""
    return [2.0 ** k if k % 2 == 0 else 2.0 ** (k - 1) * s for k in range(1, n + 1)]


def lhvt_kappa(s, n):
    return cumulants_from_moments(lhvt_moments_at_mean(s, n))[n - 1]


def kappa3_lhvt(s):
    return 2.0 * s ** 3 - 8.0 * s


def kappa3_singlet(s):
    return 2.0 * s ** 3 - 16.0 * s


def kappa3_product(s):
    return 2.0 * s ** 3 - 4.0 * s


@dataclass(frozen=True)
class CumulantExtrema:
    order: int
    minimum: float
    maximum: float
    mean_at_minimum: float
    mean_at_maximum: float


def _two_point_kappa(values, p, n):
    lo, hi = values
    m = [p * hi ** k + (1.0 - p) * lo ** k for k in range(1, n + 1)]
    return cumulants_from_moments(m)[n - 1]


def _simplex_extrema(values, n):
    # maximize and minimize kappa_n over distributions on a finite support
    k = len(values)

    def kappa_of(logits):
        w = np.exp(logits - logits.max())
        w /= w.sum()
        m = [float(w @ values ** j) for j in range(1, n + 1)]
        return cumulants_from_moments(m)[n - 1], float(w @ values)

    starts = [np.zeros(k)]
    for i in range(k):
        for j in range(i + 1, k):
            for t in np.linspace(-4.0, 4.0, 5):
                z = np.full(k, -30.0)
                z[i], z[j] = t, 0.0
                starts.append(z)
    best = {}
    for sign in (1.0, -1.0):
        top = (-np.inf, None)
        for z0 in starts:
            res = minimize(lambda z: -sign * kappa_of(z)[0], z0, method="Nelder-Mead",
                           options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000})
            if -res.fun > top[0]:
                top = (-res.fun, res.x)
        best[sign] = (sign * top[0], kappa_of(top[1])[1])
    return best[-1.0], best[1.0]


@lru_cache(maxsize=None)
def lhvt_cumulant_extrema(n, coefficients=CHSH_COEFFICIENTS, n_grid=10_000):
    """Extremes of kappa_n(S) over all LHV mixtures for the given S coefficients."""
    if not isinstance(n, (int, np.integer)) or not 2 <= n <= 4:
        raise UsageError(f"cumulant order must be 2, 3 or 4, got {n!r}")
    values = np.unique(np.round(strategy_s_values(coefficients), 12))
    if len(values) == 1:
        return CumulantExtrema(n, 0.0, 0.0, float(values[0]), float(values[0]))
    if len(values) == 2:
        lo, hi = values
        mean = lambda p: p * hi + (1.0 - p) * lo  # noqa: E731
        p_max, k_max = grid_then_golden_max(lambda p: _two_point_kappa(values, p, n), 0.0, 1.0, n_grid)
        p_min, k_min = grid_then_golden_max(lambda p: -_two_point_kappa(values, p, n), 0.0, 1.0, n_grid)
        return CumulantExtrema(n, -k_min, k_max, float(mean(p_min)), float(mean(p_max)))
    (k_min, s_min), (k_max, s_max) = _simplex_extrema(values.astype(float), n)
    return CumulantExtrema(n, float(k_min), float(k_max), s_min, s_max)


def lhvt_cumulant_bounds(n, coefficients=CHSH_COEFFICIENTS):
    """``(M-, M+)`` for the n-th cumulant of S, 2 <= n <= 4."""
    ext = lhvt_cumulant_extrema(n, tuple(map(tuple, coefficients)))
    return ext.minimum, ext.maximum


def _check_mean(mean_s):
    mean_s = float(mean_s)
    if not abs(mean_s) <= 4.0:
        raise UsageError(f"|<S>| = {abs(mean_s)} exceeds the algebraic maximum 4")
    return mean_s


def chsh_witness(mean_s):
    """``(|<S>|, |<S>| > 2)``: second-order (variance) witness."""
    value = abs(_check_mean(mean_s))
    return value, bool(value > LHVT_CHSH_BOUND + VERDICT_TOL)


def skewness_witness(mean_s):
    """``(|<S>^3 - 8<S>|, value > 16 sqrt(3) / 9)``: third-order (skewness) witness."""
    s = _check_mean(mean_s)
    value = abs(s ** 3 - 8.0 * s)
    return value, bool(value > SKEWNESS_BOUND + VERDICT_TOL)


@dataclass(frozen=True)
class OrderCheck:
    order: int
    witness_value: float
    classical_min: float
    classical_max: float
    violated: bool


@dataclass(frozen=True)
class CumulantReport:
    moments: list
    cumulants: list
    mean_s: float
    checks: list
    chsh: tuple
    skewness: tuple
    verdict: str
    violated_orders: list = field(default_factory=list)

    def check(self, order):
        return next(c for c in self.checks if c.order == order)

    def to_dict(self):
        return asdict(self)


VERDICTS = {2: "order-2 nonlocal", 3: "order-3 nonlocal", 4: "higher"}


def order_check(s, n):
    """LHV-range test of the n-th cumulant functional at mean ``s``."""
    if n == 2:
        value = 4.0 - s * s
    elif n == 3:
        # the skewness witness: |kappa_3 / 2| = |s^3 - 8 s| <= 16 sqrt(3) / 9
        value = 2.0 * (s ** 3 - 8.0 * s)
    else:
        value = lhvt_kappa(s, n)
    lo, hi = lhvt_cumulant_bounds(n)
    violated = value < lo - VERDICT_TOL or value > hi + VERDICT_TOL
    return OrderCheck(n, float(value), float(lo), float(hi), bool(violated))


def classify(rho, sc, max_order=3):
    """Cumulant report for a two-qubit state measured in a scenario.

    The verdict names the lowest violated order; ``violated_orders`` lists them all.
    """
    if max_order not in (2, 3, 4):
        raise UsageError(f"max_order must be 2, 3 or 4, got {max_order!r}")
    rho = check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise UsageError("classify needs a two-qubit state")
    s_op = s_operator(sc)
    m = moments(rho, s_op, max_order)
    kappa = cumulants_from_moments(m)
    s = expected_s(rho, sc)
    checks = [order_check(s, n) for n in range(2, max_order + 1)]
    violated = [c.order for c in checks if c.violated]
    verdict = VERDICTS[violated[0]] if violated else "classical"
    return CumulantReport(
        moments=m,
        cumulants=kappa,
        mean_s=s,
        checks=checks,
        chsh=chsh_witness(s),
        skewness=skewness_witness(s),
        verdict=verdict,
        violated_orders=violated,
    )
