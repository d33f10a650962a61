"""Position-space eigenfunctions and closed-form momentum moments.

``<p^2>`` and ``<p^4>`` are obtained without differentiating ``psi`` across
the walls.  The Schroedinger equation gives ``p^2 psi = 2m (E - V) psi``, and
because ``p^2`` is Hermitian,

    <p^2> = 2m <E - V>,        <p^4> = <p^2 psi | p^2 psi> = (2m)^2 <(E - V)^2>.

``V`` is piecewise constant, so both reduce to the exterior probability
``P_out = A^2 c^2 / alpha`` (``c = cos d`` or ``sin d``)::

    <p^2> = 2m (E - V0 P_out)
    <p^4> = (2m)^2 (E^2 + (V0^2 - 2 V0 E) P_out)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import BoundState, IswState, Parity


class Region(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class PositionAmplitude:
    value: float
    region: Region


def psi(state: BoundState, x):
    """Eigenfunction ``psi(x)``; scalar in, float out, array in, array out."""
    xa = np.asarray(x, dtype=float)
    h = state.well.half_width
    ax = np.abs(xa)
    inside = ax <= h
    # tail: A c exp(-alpha (|x| - a/2)), odd states carry sgn(x)
    tail = state.norm * state.boundary_amplitude * np.exp(-state.alpha * np.maximum(ax - h, 0.0))
    if state.parity is Parity.EVEN:
        out = np.where(inside, state.norm * np.cos(state.beta * xa), tail)
    else:
        out = np.where(inside, state.norm * np.sin(state.beta * xa), np.sign(xa) * tail)
    return out if out.ndim else float(out)


def psi_derivative(state: BoundState, x):
    """Analytic ``dpsi/dx`` on each side of the walls."""
    xa = np.asarray(x, dtype=float)
    h = state.well.half_width
    ax = np.abs(xa)
    inside = ax <= h
    tail = -state.alpha * state.norm * state.boundary_amplitude * np.exp(
        -state.alpha * np.maximum(ax - h, 0.0)
    )
    if state.parity is Parity.EVEN:
        out = np.where(inside, -state.beta * state.norm * np.sin(state.beta * xa), np.sign(xa) * tail)
    else:
        out = np.where(inside, state.beta * state.norm * np.cos(state.beta * xa), tail)
    return out if out.ndim else float(out)


def psi_amplitude(state: BoundState, x: float) -> PositionAmplitude:
    region = Region.INSIDE if abs(x) <= state.well.half_width else Region.OUTSIDE
    return PositionAmplitude(psi(state, float(x)), region)


def potential_moments(state: BoundState) -> tuple[float, float]:
    """Return ``(<E - V>, <(E - V)^2>)`` in closed form."""
    e = state.energy
    v0 = state.well.v0
    p_out = state.outside_probability
    first = e - v0 * p_out
    second = e * e + (v0 * v0 - 2.0 * v0 * e) * p_out
    return first, second


def p2_expectation(state: BoundState) -> float:
    """``<p^2>``, i.e. ``hbar^2 [beta^2 - 2 m V0 A^2 c^2 / (alpha hbar^2)]``."""
    return 2.0 * state.units.mass * potential_moments(state)[0]


def p4_expectation(state: BoundState) -> float:
    """``<p^4> = hbar^4 beta^4 + (2m)^2 (A^2/alpha) (V0^2 - 2 V0 E) c^2``."""
    two_m = 2.0 * state.units.mass
    return two_m * two_m * potential_moments(state)[1]


def isw_psi(state: IswState, x):
    """Infinite-well eigenfunction; zero outside ``|x| <= a/2``."""
    xa = np.asarray(x, dtype=float)
    amp = math.sqrt(2.0 / state.a)
    if state.n % 2 == 1:
        inner = amp * np.cos(state.beta_n * xa)
    else:
        inner = amp * np.sin(state.beta_n * xa)
    out = np.where(np.abs(xa) <= 0.5 * state.a, inner, 0.0)
    return out if out.ndim else float(out)


def isw_p2(state: IswState) -> float:
    return state.units.hbar**2 * state.beta_n**2
