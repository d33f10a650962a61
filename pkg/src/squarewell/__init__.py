"""Finite square well: spectrum, position- and momentum-space eigenfunctions,
and the momentum moments <p^2>, <p^4> computed two independent ways."""

from .errors import (
    BracketError,
    BranchError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    SquareWellError,
)
from .model import BoundState, IswState, Parity, UnitSystem, WellSpec, derive_state_quantities, gamma
from .momentum import asymptotic_envelope, intensity, isw_phi, phi, phi_in_out
from .position import isw_p2, isw_psi, p2_expectation, p4_expectation, psi
from .spectrum import SpectrumRequest, count_bound_states, isw_state, solve_all

__version__ = "0.1.0"

__all__ = [
    "BoundState",
    "BracketError",
    "BranchError",
    "ConsistencyError",
    "ConvergenceError",
    "DomainError",
    "IswState",
    "Parity",
    "SpectrumRequest",
    "SquareWellError",
    "UnitSystem",
    "WellSpec",
    "asymptotic_envelope",
    "count_bound_states",
    "derive_state_quantities",
    "gamma",
    "intensity",
    "isw_p2",
    "isw_phi",
    "isw_psi",
    "isw_state",
    "p2_expectation",
    "p4_expectation",
    "phi",
    "phi_in_out",
    "psi",
    "solve_all",
]
