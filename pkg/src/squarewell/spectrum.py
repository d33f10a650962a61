"""Bound-state spectrum of the finite square well, plus infinite-well references.

Roots are sought in ``d = beta a / 2`` on ``(0, gamma a / 2]``.  For fixed
``d`` the decay rate follows from ``alpha = sqrt(gamma**2 - beta**2)``.  State
``k`` (0-based) lives in the window ``(k pi/2, (k+1) pi/2)``, clipped at
``gamma a / 2``.  Even states take the even residual ``beta sin d - alpha cos d``
and odd states take ``alpha sin d + beta cos d``.  The residual changes sign
across each window, so plain bisection always converges.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

from .errors import ConsistencyError, DomainError
from .model import (
    BoundState,
    IswState,
    Parity,
    UnitSystem,
    WellSpec,
    derive_state_quantities,
    eigenvalue_residual,
)
from .numerics.roots import find_root_bracketed

log = logging.getLogger(__name__)

#: Distance in ``d`` from ``gamma a / 2`` below which a state counts as threshold.
THRESHOLD_GAP = 1e-9


@dataclass(frozen=True)
class SpectrumRequest:
    well: WellSpec
    tol_root: float = 1e-12
    max_iter: int = 200
    tol_d: float = 1e-14

    def __post_init__(self):
        if not self.tol_root > 0:
            raise DomainError("tol_root must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be positive")


def count_bound_states(well: WellSpec) -> int:
    """Number of bound states, ``floor(gamma a / pi) + 1``."""
    return math.floor(well.gamma * well.a / math.pi) + 1


def residual_in_d(well: WellSpec, parity: Parity):
    """The pole-free eigenvalue function as a function of ``d`` alone."""
    g2 = well.gamma**2
    a = well.a

    def f(d: float) -> float:
        beta = 2.0 * d / a
        alpha = math.sqrt(max(g2 - beta * beta, 0.0))
        return eigenvalue_residual(parity, alpha, beta, d)

    return f


def brackets(well: WellSpec) -> list[tuple[Parity, float, float]]:
    """Half-period windows in ``d`` that each hold exactly one root."""
    d_max = 0.5 * well.gamma * well.a
    out = []
    for k in range(count_bound_states(well)):
        lo = 0.5 * k * math.pi
        hi = min(0.5 * (k + 1) * math.pi, d_max)
        out.append((Parity.for_index(k), lo, hi))
    return out


def solve_all(req: SpectrumRequest | WellSpec) -> list[BoundState]:
    """Solve every bound state, ordered by energy.

    Raises
    ------
    ConvergenceError
        Bisection ran out of iterations (carries the bracket).
    ConsistencyError
        An expected bracket shows no sign change, or the resulting states
        violate ordering or parity alternation.
    """
    if isinstance(req, WellSpec):
        req = SpectrumRequest(req)
    well = req.well
    units = well.units
    d_max = 0.5 * well.gamma * well.a
    states: list[BoundState] = []
    for n, (parity, lo, hi) in enumerate(brackets(well)):
        f = residual_in_d(well, parity)
        if lo >= hi:
            # gamma a / pi is an integer: the last state sits exactly at threshold
            d = hi
        else:
            try:
                # tol_f=0: run to the d tolerance (or float resolution); residual checked below
                d = find_root_bracketed(f, lo, hi, req.tol_d, 0.0, req.max_iter)
            except ValueError as exc:
                raise ConsistencyError(
                    f"state {n} ({parity.value}): expected a sign change on [{lo}, {hi}]"
                ) from exc
        if abs(f(d)) > req.tol_root * max(1.0, well.gamma):
            raise ConsistencyError(f"state {n}: residual {f(d):.2e} above tolerance at d={d!r}")
        beta = 2.0 * d / well.a
        energy = units.energy_from_wavenumber(beta)
        at_threshold = d_max - d < THRESHOLD_GAP
        if at_threshold:
            log.warning("state %d is within %.0e of the continuum threshold", n, THRESHOLD_GAP)
            energy = min(energy, math.nextafter(well.v0, 0.0))
        # residual of the bisected root is <= tol_root up to the E round trip
        tol = max(10 * req.tol_root, 1e-12 * well.gamma)
        if at_threshold:
            tol = math.inf
        state = derive_state_quantities(well, energy, parity, n, tol=tol)
        if at_threshold and not state.at_threshold:
            state = replace(state, at_threshold=True)
        states.append(state)

    for prev, cur in zip(states, states[1:]):
        if not cur.energy > prev.energy:
            raise ConsistencyError(f"energies not increasing at n={cur.n}")
    for s in states:
        if s.parity is not Parity.for_index(s.n):
            raise ConsistencyError(f"parity does not alternate at n={s.n}")
    return states


def isw_state(n: int, a: float, units: UnitSystem | None = None) -> IswState:
    """Infinite-well eigenstate ``n >= 1``: ``beta_n = n pi / a``.

    The node condition at ``x = +-a/2`` fixes ``E_n = hbar**2 n**2 pi**2 / (2 m a**2)``.
    """
    if units is None:
        units = UnitSystem()
    if n < 1:
        raise DomainError(f"infinite-well quantum number must be >= 1, got {n}")
    if not a > 0:
        raise DomainError(f"well width must be positive, got {a}")
    beta = n * math.pi / a
    return IswState(n=n, a=a, units=units, beta_n=beta, energy=units.energy_from_wavenumber(beta))
