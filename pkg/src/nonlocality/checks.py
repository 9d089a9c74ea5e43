"""Self-verification suite: operator identities, uncertainty sweeps, eigenvalue
partial sums and LHV oracle equivalences, run with a fixed seed."""

from dataclasses import dataclass, replace

import numpy as np

from .cumulants import (
    KAPPA3_LHVT_BOUND,
    cumulants_from_moments,
    kappa3_lhvt,
    kappa3_product,
    kappa3_singlet,
    lhvt_cumulant_bounds,
)
from .linalg import ID4, commutator, hermitian_eigenvalues, kron
from .models import (
    NONSTEERING_QUADRATIC_BOUND,
    assemblage_correlators,
    enumerate_strategies,
    lhvt_s_distribution,
    nonsteering_quadratic,
    pr_box,
)
from .scenario import (
    QubitObservable,
    canonical_scenario,
    correlator,
    mean_s,
    moments,
    product_state,
    qubit_state,
    s_operator,
    singlet,
)
from .uncertainty import (
    expectation_diff_bound,
    expectation_sum_bound,
    horn_check,
    majorization_bound,
    majorizes,
    max_expectation_over_pure_states,
    measurement_distributions,
    observable_pair,
)

DEFAULT_SEED = 20190101
# flips the sign of the X (x) Y' coefficient; used to prove the suite can fail
FAULTY_COEFFICIENTS = ((1.0, 1.0), (1.0, 1.0))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_unit(rng, n=None):
    v = rng.normal(size=(3,) if n is None else (n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


class Suite:
    def __init__(self, seed=DEFAULT_SEED, inject_fault=False):
        self.seed = seed
        self.inject_fault = inject_fault
        self.thetas = np.linspace(0.0, np.pi, 50)

    def scenario(self, theta):
        sc = canonical_scenario(theta)
        if self.inject_fault:
            sc = replace(sc, s_coefficients=FAULTY_COEFFICIENTS)
        return sc

    def rng(self, salt):
        return np.random.default_rng([self.seed, salt])

    # each check returns (passed, detail)

    def check_s2_identity(self):
        worst = 0.0
        for t in self.thetas:
            sc = self.scenario(t)
            s = s_operator(sc)
            rhs = 4 * ID4 + kron(commutator(sc.x.matrix, sc.x_prime.matrix),
                                 commutator(sc.y.matrix, sc.y_prime.matrix))
            worst = max(worst, np.max(np.abs(s @ s - rhs)))
        return worst <= 1e-12, f"max entry error {worst:.2e}"

    def check_s3_identity(self):
        worst = 0.0
        for t in self.thetas:
            s = s_operator(self.scenario(t))
            worst = max(worst, np.max(np.abs(s @ s @ s - 8 * s)))
        return worst <= 1e-12, f"max entry error {worst:.2e}"

    def check_tsirelson_spectrum(self):
        worst = 0.0
        for t in self.thetas:
            ev = hermitian_eigenvalues(s_operator(self.scenario(t)))
            worst = max(worst, abs(ev[0] - 2 * np.sqrt(2)), abs(ev[0] + ev[-1]))
        return worst <= 1e-9, f"max deviation {worst:.2e}"

    def check_kron_algebra(self):
        rng = self.rng(1)
        algebra, spectrum = 0.0, 0.0
        for _ in range(50):
            a, b, c, d = (_random_hermitian(rng, 2) for _ in range(4))
            algebra = max(
                algebra,
                np.max(np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d))),
                abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)),
            )
            pairs = np.sort(np.outer(hermitian_eigenvalues(a), hermitian_eigenvalues(b)).ravel())[::-1]
            spectrum = max(spectrum, np.max(np.abs(hermitian_eigenvalues(kron(a, b)) - pairs)))
        return algebra <= 1e-12 and spectrum <= 1e-9, f"product error {algebra:.2e}, spectrum error {spectrum:.2e}"

    def check_singlet_covariance(self):
        rng = self.rng(2)
        rho = singlet()
        worst = 0.0
        for _ in range(100):
            a, b = _random_unit(rng), _random_unit(rng)
            e = correlator(rho, QubitObservable(a), QubitObservable(b))
            worst = max(worst, abs(e + a @ b))
        return worst <= 1e-10, f"max |E + a.b| {worst:.2e}"

    def check_majorization(self):
        rng = self.rng(3)
        states = _random_unit(rng, 1000)
        failures = 0
        for t in np.linspace(0.0, np.pi / 2, 20):
            y, y_prime = observable_pair(t)
            s = majorization_bound(t)
            for r in states:
                failures += not majorizes(measurement_distributions(qubit_state(r), y, y_prime), s)
        return failures == 0, f"{failures} violations over 20000 state/angle pairs"

    def check_expectation_bounds(self):
        worst_excess, worst_gap = 0.0, 0.0
        for t in np.linspace(0.0, np.pi / 2, 5):
            y, y_prime = observable_pair(t)
            for obs, bound in ((y.matrix + y_prime.matrix, expectation_sum_bound(t)),
                               (y.matrix - y_prime.matrix, expectation_diff_bound(t))):
                best = max_expectation_over_pure_states(obs)
                worst_excess = max(worst_excess, best - bound)
                worst_gap = max(worst_gap, abs(best - bound))
        return worst_excess <= 1e-9 and worst_gap <= 1e-6, f"max gap to bound {worst_gap:.2e}"

    def check_horn(self):
        rng = self.rng(4)
        failures = 0
        for i in range(500):
            dim = 2 if i % 2 else 4
            a, b = _random_hermitian(rng, dim), _random_hermitian(rng, dim)
            failures += sum(not horn_check(a, b, l) for l in range(1, dim + 1))
        return failures == 0, f"{failures} violations over 500 pairs"

    def check_lhvt_enumeration(self):
        values = {st.s_value() for st in enumerate_strategies()}
        ok = len(enumerate_strategies()) == 16 and values == {-2.0, 2.0}
        return ok, f"S values {sorted(values)}"

    def check_lhvt_cumulants(self):
        rng = self.rng(5)
        worst = 0.0
        lo3, hi3 = lhvt_cumulant_bounds(3)
        excess = 0.0
        for _ in range(2000):
            dist = lhvt_s_distribution(rng.dirichlet(np.full(16, 0.3)))
            k = cumulants_from_moments(dist.moments(3))
            s = dist.mean
            worst = max(worst, abs(k[1] - (4 - s * s)), abs(k[2] - kappa3_lhvt(s)))
            excess = max(excess, k[2] - hi3, lo3 - k[2], -k[1])
        ok = worst <= 1e-9 and excess <= 1e-9 and abs(hi3 - KAPPA3_LHVT_BOUND) <= 1e-9
        return ok, f"closed-form error {worst:.2e}, bound excess {excess:.2e}"

    def check_quantum_cumulants(self):
        rng = self.rng(7)
        worst = 0.0
        rho = singlet()
        for t in self.thetas:
            sc = self.scenario(t)
            k = cumulants_from_moments(moments(rho, s_operator(sc), 3))
            s = mean_s(rho, sc)
            worst = max(worst, abs(k[1] - (8 - s * s)), abs(k[2] - kappa3_singlet(s)))
            u, v = rng.uniform(0, 2 * np.pi, size=2)
            prod = product_state([np.sin(u), 0.0, np.cos(u)], [np.sin(v), 0.0, np.cos(v)])
            k = cumulants_from_moments(moments(prod, s_operator(sc), 3))
            s = mean_s(prod, sc)
            worst = max(worst, abs(k[1] - (4 - s * s)), abs(k[2] - kappa3_product(s)))
        return worst <= 1e-9, f"max closed-form error {worst:.2e}"

    def check_pr_box(self):
        box = pr_box()
        e = box.chsh_correlators()
        quad = nonsteering_quadratic(e[0, 0], e[0, 1], e[1, 0], e[1, 1])
        ok = box.chsh_value() == 4.0 and box.is_no_signaling() and quad == 8.0
        return ok, f"CHSH {box.chsh_value()}, quadratic {quad}"

    def check_nonsteering(self):
        rng = self.rng(6)
        sc = canonical_scenario(np.pi / 4)
        worst = 0.0
        for _ in range(1000):
            k = int(rng.integers(1, 6))
            xi = rng.dirichlet(np.ones(k))
            a_x, a_xp = rng.uniform(-1, 1, size=(2, k))
            states = _random_unit(rng, k) * rng.uniform(0, 1, size=(k, 1))
            e = assemblage_correlators(xi, a_x, a_xp, states, states, sc.y, sc.y_prime)
            worst = max(worst, nonsteering_quadratic(*e.ravel()))
        return worst <= NONSTEERING_QUADRATIC_BOUND + 1e-12, f"max quadratic form {worst:.6f}"

    CHECKS = (
        ("S^2 operator identity", "check_s2_identity"),
        ("S^3 operator identity", "check_s3_identity"),
        ("S spectrum (Tsirelson)", "check_tsirelson_spectrum"),
        ("Kronecker algebra", "check_kron_algebra"),
        ("singlet rotational covariance", "check_singlet_covariance"),
        ("majorization sweep", "check_majorization"),
        ("expectation bounds", "check_expectation_bounds"),
        ("eigenvalue partial sums", "check_horn"),
        ("LHV strategy enumeration", "check_lhvt_enumeration"),
        ("LHV cumulant closed forms", "check_lhvt_cumulants"),
        ("quantum cumulant closed forms", "check_quantum_cumulants"),
        ("PR box", "check_pr_box"),
        ("non-steering ensembles", "check_nonsteering"),
    )

    def run(self):
        results = []
        for name, method in self.CHECKS:
            try:
                passed, detail = getattr(self, method)()
            except Exception as exc:  # a crashing check is a failing check
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, bool(passed), detail))
        return results


def run_verify(seed=DEFAULT_SEED, inject_fault=False):
    return Suite(seed=seed, inject_fault=inject_fault).run()
