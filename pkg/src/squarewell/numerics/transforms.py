"""Numerical Fourier transform of psi(x) and truncated momentum moments.

These are the independent numerical counterparts to the closed forms in
:mod:`squarewell.momentum` and :mod:`squarewell.position`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceError, DomainError
from ..model import BoundState, IswState
from ..momentum import (
    asymptotic_envelope,
    intensity,
    isw_asymptotic_envelope,
    isw_intensity,
)
from ..position import psi
from .quadrature import QuadratureResult, integrate

#: Exterior decay lengths kept by the Fourier oracle; exp(-40) ~ 4e-18.
DECAY_LENGTHS = 40.0


@dataclass(frozen=True)
class MomentResult(QuadratureResult):
    """Truncated moment plus a separately reported tail model.

    ``value`` is the quadrature over ``[-P, P]`` alone; ``tail`` is the
    modelled contribution of ``|p| > P`` (zero when not requested).
    """

    tail: float = 0.0
    cutoff: float = 0.0

    @property
    def total(self) -> float:
        return self.value + self.tail


@dataclass(frozen=True)
class MomentRequest:
    state: BoundState
    s: int
    P: float = 100.0
    tol: float = 1e-9
    include_tail_estimate: bool = False

    def __post_init__(self):
        if self.s not in (0, 2, 4):
            raise DomainError(f"moment order must be 0, 2 or 4, got {self.s}")
        if not self.P > self.state.units.hbar * self.state.beta:
            raise DomainError(
                f"cutoff P={self.P} must exceed hbar*beta={self.state.units.hbar * self.state.beta}"
            )
        if not self.tol > 0:
            raise DomainError("tol must be positive")


def oracle_extent(state: BoundState) -> float:
    """Half-length of the x-domain used by :func:`fourier_oracle`."""
    return state.well.half_width + DECAY_LENGTHS / state.alpha


def fourier_oracle(state: BoundState, p: float, tol: float = 1e-11, strict: bool = True) -> complex:
    """Transform ``psi`` to momentum space by direct quadrature.

    Real and imaginary parts are integrated separately over ``[-L, L]``,
    ``L = a/2 + 40/alpha``, with seams at ``x = +-a/2`` and initial panels
    about two oscillation periods long.

    Raises
    ------
    ConvergenceError
        Either quadrature failed to reach ``tol`` (only when ``strict``).
    """
    hbar = state.units.hbar
    z = float(p) / hbar
    h = state.well.half_width
    L = oracle_extent(state)
    seams = [-h, h]
    if z != 0.0:
        # starting panels about two oscillation periods long
        n = int(L * abs(z) / (2.0 * math.pi)) + 1
        seams += list(np.linspace(-L, L, n + 1)[1:-1])
    re = integrate(lambda x: psi(state, x) * np.cos(z * x), -L, L, tol, seams, max_panels=20000)
    im = integrate(lambda x: -psi(state, x) * np.sin(z * x), -L, L, tol, seams, max_panels=20000)
    if strict and not (re.converged and im.converged):
        raise ConvergenceError(
            f"Fourier quadrature at p={p} did not converge "
            f"(errors {re.abs_error_estimate:.2e}, {im.abs_error_estimate:.2e})"
        )
    return complex(re.value, im.value) / math.sqrt(2.0 * math.pi * hbar)


def momentum_seams(P: float, period: float, singular: float) -> list[float]:
    """Panel seams on ``[-P, P]``: every ``period`` and at ``+-singular``."""
    k = int(P // period)
    grid = [j * period for j in range(-k, k + 1)]
    return sorted({*grid, singular, -singular})


def _tail_coefficient(envelope: float, s: int, P: float, decay: int) -> float:
    """Mean-value tail ``2 * int_P^inf (envelope/2) p^(s - decay) dp``."""
    power = s - decay
    if power >= -1:
        return math.inf
    return envelope * P ** (power + 1) / (-(power + 1))


def momentum_moment(req: MomentRequest) -> MomentResult:
    """``int_{-P}^{P} p^s I(p) dp`` for a finite-well state.

    Seams sit every ``2 pi hbar / a`` (the period of the oscillating factor)
    and at the removable points ``p = +-hbar beta``.  With
    ``include_tail_estimate`` the tail beyond ``P`` is modelled as
    ``C sin^2(...) / p^(6 - s)`` averaged to ``C / (2 p^(6 - s))``.
    """
    st, s, P = req.state, req.s, req.P
    hbar = st.units.hbar
    seams = momentum_seams(P, 2.0 * math.pi * hbar / st.well.a, hbar * st.beta)
    res = integrate(lambda p: p**s * intensity(st, p), -P, P, req.tol, seams, max_panels=20000)
    tail = _tail_coefficient(asymptotic_envelope(st), s, P, 6) if req.include_tail_estimate else 0.0
    return MomentResult(res.value, res.abs_error_estimate, res.panels, res.converged, tail, P)


def isw_moment(
    state: IswState,
    s: int,
    P: float,
    tol: float = 1e-9,
    include_tail_estimate: bool = True,
) -> MomentResult:
    """Truncated ``p^s`` moment of the infinite-well distribution.

    ``I(p)`` falls off only as ``p^-4``, so ``s = 2`` converges slowly, like
    ``1/P``.  Its tail model is on by default.  For ``s = 4`` the integral
    grows linearly in ``P``.  No finite tail exists there, so ``tail`` is
    left at zero whatever ``include_tail_estimate`` says.
    """
    if s not in (0, 2, 4):
        raise DomainError(f"moment order must be 0, 2 or 4, got {s}")
    hbar = state.units.hbar
    if not P > hbar * state.beta_n:
        raise DomainError(f"cutoff P={P} must exceed n*pi*hbar/a={hbar * state.beta_n}")
    seams = momentum_seams(P, 2.0 * math.pi * hbar / state.a, hbar * state.beta_n)
    res = integrate(lambda p: p**s * isw_intensity(state, p), -P, P, tol, seams, max_panels=20000)
    tail = 0.0
    if include_tail_estimate and s < 4:
        tail = _tail_coefficient(isw_asymptotic_envelope(state), s, P, 4)
    return MomentResult(res.value, res.abs_error_estimate, res.panels, res.converged, tail, P)
