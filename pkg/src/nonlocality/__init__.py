"""Hierarchy of nonlocal correlation models for two qubits and cumulant-order
nonlocality witnesses built on the CHSH operator."""

from .cumulants import (
    CumulantReport,
    chsh_witness,
    classify,
    cumulants_from_moments,
    lhvt_cumulant_bounds,
    skewness_witness,
)
from .linalg import DomainError, UsageError
from .models import enumerate_strategies, lhvt_chsh_range, pr_box
from .scenario import canonical_scenario, correlator, mean_s, moment, s_operator, singlet

__version__ = "0.1.0"
