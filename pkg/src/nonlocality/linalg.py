"""Small dense complex linear algebra for 2x2 and 4x4 Hermitian operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Only the
dimensions 2 (one qubit) and 4 (two qubits) are accepted. Eigenvalues are
computed here rather than delegated to LAPACK: a closed form for 2x2 and a
cyclic complex Jacobi sweep for 4x4.
"""

import numpy as np

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
TRACE_IMAG_TOL = 1e-10

ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class UsageError(ValueError):
    """Bad argument shape, range or combination."""


class DomainError(ValueError):
    """Argument is well formed but mathematically invalid (non-Hermitian, not a state, ...)."""


class ConvergenceError(RuntimeError):
    pass


def as_matrix(a):
    """Return ``a`` as a complex square matrix of dimension 2 or 4."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise UsageError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def _same_dim(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise UsageError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def is_hermitian(a, tol=HERMITIAN_TOL):
    a = as_matrix(a)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def matmul(a, b):
    a, b = _same_dim(a, b)
    return a @ b


def kron(a, b):
    """Kronecker product of two qubit operators; ``a[0, 0] * b`` is the top-left block."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise UsageError("kron is defined for 2x2 factors only")
    out = np.empty((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = a[i, j] * b
    return out


def commutator(a, b):
    a, b = _same_dim(a, b)
    return a @ b - b @ a


def trace(a):
    return complex(np.trace(as_matrix(a)))


def _eig2(a):
    # real eigenvalues of [[p, c], [c*, q]] from trace and determinant
    p, q = a[0, 0].real, a[1, 1].real
    half_tr = 0.5 * (p + q)
    radius = np.hypot(0.5 * (p - q), abs(a[0, 1]))
    return np.array([half_tr + radius, half_tr - radius])


def _off_norm(a):
    return np.linalg.norm(a - np.diag(np.diag(a)))


def _jacobi(a):
    a = a.copy()
    n = a.shape[0]
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) <= JACOBI_TOL:
            return np.sort(np.diag(a).real)[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                # phase so that the (p, q) element becomes real and positive,
                # then a real Givens rotation annihilates it
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                u = np.eye(n, dtype=complex)
                u[p, p] = c
                u[q, q] = c
                u[p, q] = s * phase
                u[q, p] = -s * np.conj(phase)
                a = u.conj().T @ a @ u
                a[p, q] = a[q, p] = 0.0
                a = 0.5 * (a + a.conj().T)
    if _off_norm(a) <= JACOBI_TOL:
        return np.sort(np.diag(a).real)[::-1]
    raise ConvergenceError(f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def hermitian_eigenvalues(a):
    """Eigenvalues of a Hermitian matrix, sorted descending.

    Raises
    ------
    DomainError
        If ``a`` is not Hermitian to within ``HERMITIAN_TOL``.
    ConvergenceError
        If the 4x4 Jacobi iteration does not converge.
    """
    a = as_matrix(a)
    if not is_hermitian(a):
        raise DomainError("matrix is not Hermitian")
    if a.shape[0] == 2:
        return _eig2(a)
    return _jacobi(a)


def check_density_matrix(rho, tol=HERMITIAN_TOL, psd_tol=1e-10):
    """Validate a density matrix and return it as an array.

    Hermitian and unit trace to ``tol``; eigenvalues no lower than ``-psd_tol``.
    """
    rho = as_matrix(rho)
    if not is_hermitian(rho, tol):
        raise DomainError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise DomainError(f"density matrix has trace {np.trace(rho).real:.15g}")
    if hermitian_eigenvalues(rho)[-1] < -psd_tol:
        raise DomainError("density matrix is not positive semidefinite")
    return rho


def trace_expectation(rho, obs):
    """Real expectation value ``Tr[rho obs]`` of a Hermitian observable."""
    rho, obs = _same_dim(rho, obs)
    check_density_matrix(rho)
    if not is_hermitian(obs):
        raise DomainError("observable is not Hermitian")
    val = np.trace(rho @ obs)
    if abs(val.imag) > TRACE_IMAG_TOL:
        raise DomainError(f"expectation has imaginary part {val.imag:.3g}")
    return float(val.real)


def bloch_operator(vec):
    """``n . sigma`` for a real 3-vector ``n``."""
    nx, ny, nz = np.asarray(vec, dtype=float)
    return nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z
