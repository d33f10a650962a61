"""Momentum-space eigenfunctions of the finite and infinite square wells.

The transform convention is

    phi(p) = (2 pi hbar)^(-1/2) * integral psi(x) exp(-i p x / hbar) dx.

With ``z = p / hbar``, ``h = a / 2`` and the matching condition used to
cancel the ``1/p`` pieces, the finite-well amplitudes are::

    even:  phi =  K cos d * g_e(z) / ((z^2 + alpha^2)(z^2 - beta^2))
           g_e = -alpha cos(z h) + z sin(z h)
    odd:   phi = +i K sin d * g_o(z) / ((z^2 + alpha^2)(z^2 - beta^2))
           g_o =  alpha sin(z h) + z cos(z h)

where ``K = 2 A gamma^2 / sqrt(2 pi hbar)``.  Both numerators vanish at
``z = +-beta`` (that is the eigenvalue condition), so ``z = +-beta`` is a
removable singularity.  Near it the quotient ``g(z) / (z - beta)`` is
replaced by its Taylor polynomial about ``beta``.  The leading term gives the
limits

    lim g_e / (z^2 - beta^2) = [(alpha a + 2) sin d + 2 d cos d] / (4 beta)
    lim g_o / (z^2 - beta^2) = [(alpha a + 2) cos d - 2 d sin d] / (4 beta)

The even limit carries ``+ 2 d cos d``.  This follows from differentiating
``g_e`` directly and is confirmed by a high-precision limit sequence in the
test suite.  A ``- 2 d cos d`` variant fails that check by about 20 %.

Even amplitudes are real and even in ``p``; odd ones are imaginary and odd.
The odd amplitude has a leading ``+i``.  That is the sign the transform above
actually produces, and it is what makes ``phi == phi_in + phi_out`` hold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError
from .model import BoundState, IswState, Parity


class Branch(enum.Enum):
    REGULAR = "regular"
    NEAR_SINGULAR_LIMIT = "near_singular_limit"


@dataclass(frozen=True)
class SingularityWindow:
    """Half-width of the window around ``|z| = beta`` that uses the Taylor branch.

    ``delta`` is absolute (in ``z``); when left as ``None`` the half-width
    is ``rel * beta``.
    """

    delta: float | None = None
    rel: float = 1e-4

    def half_width(self, beta: float) -> float:
        w = self.rel * beta if self.delta is None else self.delta
        if not w > 0:
            raise ValueError("singularity window half-width must be positive")
        return w


DEFAULT_WINDOW = SingularityWindow()


@dataclass(frozen=True)
class MomentumAmplitude:
    value: complex
    branch: Branch
    z: float


def _numerator_derivs(parity: Parity, alpha: float, h: float, z):
    """``g, g', g'', g'''`` of the parity's numerator at ``z``."""
    s, c = np.sin(z * h), np.cos(z * h)
    ah = alpha * h
    if parity is Parity.EVEN:
        g0 = -alpha * c + z * s
        g1 = (ah + 1.0) * s + z * h * c
        g2 = (ah * h + 2.0 * h) * c - z * h * h * s
        g3 = -(ah * h * h + 3.0 * h * h) * s - z * h**3 * c
    else:
        g0 = alpha * s + z * c
        g1 = (ah + 1.0) * c - z * h * s
        g2 = -(ah * h + 2.0 * h) * s - z * h * h * c
        g3 = -(ah * h * h + 3.0 * h * h) * c + z * h**3 * s
    return g0, g1, g2, g3


def _quotient_over(w, beta, g0, derivs_at_beta, delta):
    """``g(w) / (w - beta)`` with the Taylor form inside ``|w - beta| < delta``."""
    _, g1, g2, g3 = derivs_at_beta
    t = w - beta
    near = np.abs(t) < delta
    taylor = g1 + t * (0.5 * g2 + t * g3 / 6.0)
    safe_t = np.where(near, 1.0, t)
    return np.where(near, taylor, g0 / safe_t), near


def _ratio(state: BoundState, w, delta, force_taylor=False):
    """``g(w) / ((w^2 + alpha^2)(w^2 - beta^2))`` for ``w >= 0``, and the Taylor mask."""
    alpha, beta, h = state.alpha, state.beta, state.well.half_width
    g0 = _numerator_derivs(state.parity, alpha, h, w)[0]
    at_beta = _numerator_derivs(state.parity, alpha, h, beta)
    q, near = _quotient_over(w, beta, g0, at_beta, math.inf if force_taylor else delta)
    return q / ((w + beta) * (w * w + alpha * alpha)), near


def _prefactor(state: BoundState) -> complex:
    k = 2.0 * state.norm * state.gamma**2 / math.sqrt(2.0 * math.pi * state.units.hbar)
    if state.parity is Parity.EVEN:
        return k * math.cos(state.d)
    return 1j * k * math.sin(state.d)


def _assemble(state: BoundState, p, delta, force_taylor=False):
    z = np.asarray(p, dtype=float) / state.units.hbar
    w = np.abs(z)
    r, near = _ratio(state, w, delta, force_taylor)
    if state.parity is Parity.ODD:
        r = np.sign(z) * r
    return _prefactor(state) * r, near, z


def phi(state: BoundState, p, window: SingularityWindow = DEFAULT_WINDOW):
    """Momentum amplitude ``phi(p)``, total in ``p`` (complex array or scalar)."""
    delta = window.half_width(state.beta)
    val, _, _ = _assemble(state, p, delta)
    return val if np.ndim(val) else complex(val)


def phi_amplitude(
    state: BoundState, p: float, window: SingularityWindow = DEFAULT_WINDOW
) -> MomentumAmplitude:
    delta = window.half_width(state.beta)
    val, near, z = _assemble(state, float(p), delta)
    branch = Branch.NEAR_SINGULAR_LIMIT if bool(near) else Branch.REGULAR
    return MomentumAmplitude(complex(val), branch, float(z))


def phi_limit_branch(state: BoundState, p):
    """The Taylor-branch formula evaluated at ``p`` regardless of the window.

    Only meaningful close to ``|p| = hbar beta``; exposed to test the
    stitching between branches.
    """
    val, _, _ = _assemble(state, p, 0.0, force_taylor=True)
    return val if np.ndim(val) else complex(val)


def singular_limit(state: BoundState) -> float:
    """``lim_{z -> beta} g(z) / (z^2 - beta^2) = g'(beta) / (2 beta)``."""
    g1 = _numerator_derivs(state.parity, state.alpha, state.well.half_width, state.beta)[1]
    return float(g1) / (2.0 * state.beta)


def phi_in_out(state: BoundState, p, window: SingularityWindow = DEFAULT_WINDOW):
    """Interior and exterior contributions to ``phi`` before simplification.

    Each part decays only like ``1/p``; their sum reproduces :func:`phi`.

    Raises
    ------
    BranchError
        Some ``|z|`` lies inside the singularity window, where both parts are 0/0.
    """
    z = np.asarray(p, dtype=float) / state.units.hbar
    delta = window.half_width(state.beta)
    if np.any(np.abs(np.abs(z) - state.beta) < delta):
        raise BranchError("phi_in_out is undefined near |p| = hbar*beta; use phi()")
    a_, alpha, beta, d, h = state.norm, state.alpha, state.beta, state.d, state.well.half_width
    root = math.sqrt(2.0 * math.pi * state.units.hbar)
    s, c = np.sin(z * h), np.cos(z * h)
    if state.parity is Parity.EVEN:
        inner = 2 * a_ * (beta * c * math.sin(d) - z * s * math.cos(d)) / (root * (beta**2 - z**2))
        outer = 2 * a_ * (alpha * c - z * s) * math.cos(d) / (root * (z**2 + alpha**2))
        inner, outer = inner + 0j, outer + 0j
    else:
        inner = 2j * a_ * (beta * math.cos(d) * s - z * math.sin(d) * c) / (root * (beta**2 - z**2))
        outer = -2j * a_ * (alpha * s + z * c) * math.sin(d) / (root * (z**2 + alpha**2))
    if np.ndim(inner) == 0:
        return complex(inner), complex(outer)
    return inner, outer


def intensity(state: BoundState, p, window: SingularityWindow = DEFAULT_WINDOW):
    """Momentum distribution ``I(p) = |phi(p)|^2``."""
    val = phi(state, p, window)
    out = np.abs(val) ** 2
    return out if np.ndim(out) else float(out)


def asymptotic_envelope(state: BoundState) -> float:
    """``C = limsup p^6 I(p)``, i.e. ``(2 A gamma^2 c hbar^3 / sqrt(2 pi hbar))^2``."""
    hbar = state.units.hbar
    k = 2.0 * state.norm * state.gamma**2 * state.boundary_amplitude * hbar**3
    return k * k / (2.0 * math.pi * hbar)


# -- infinite well ----------------------------------------------------------


def _isw_norm(state: IswState) -> float:
    """``N_n = sqrt(4 a n^2 pi hbar^3)``, magnitude only."""
    return math.sqrt(4.0 * state.a * state.n**2 * math.pi * state.units.hbar**3)


def _isw_phase(state: IswState) -> complex:
    # phase that matches the transform convention above: real for odd n, imaginary for even n
    n = state.n
    if n % 2 == 1:
        return (-1) ** ((n - 1) // 2)
    return 1j * (-1) ** (n // 2)


def isw_phi(state: IswState, p, window: SingularityWindow = DEFAULT_WINDOW):
    """Infinite-well amplitude ``N_n f(p a / 2 hbar) / (n^2 pi^2 hbar^2 - p^2 a^2)``.

    ``f`` is ``cos`` for odd ``n`` and ``sin`` for even ``n``.  The poles at
    ``p = +-n pi hbar / a`` are removable; there ``I = a / (4 pi hbar)``.
    """
    hbar, a, beta = state.units.hbar, state.a, state.beta_n
    h = 0.5 * a
    z = np.asarray(p, dtype=float) / hbar
    w = np.abs(z)
    delta = window.half_width(beta)
    s, c = np.sin(w * h), np.cos(w * h)
    sb, cb = math.sin(beta * h), math.cos(beta * h)
    if state.n % 2 == 1:
        g0 = c
        derivs = (cb, -h * sb, -h * h * cb, h**3 * sb)
    else:
        g0 = s
        derivs = (sb, h * cb, -h * h * sb, -(h**3) * cb)
    q, _ = _quotient_over(w, beta, g0, derivs, delta)
    # f / (beta^2 - z^2) = -[f / (z - beta)] / (z + beta)
    r = -q / (w + beta)
    if state.n % 2 == 0:
        r = np.sign(z) * r
    val = _isw_phase(state) * _isw_norm(state) / (hbar * hbar * a * a) * r
    return val if np.ndim(val) else complex(val)


def isw_intensity(state: IswState, p, window: SingularityWindow = DEFAULT_WINDOW):
    out = np.abs(isw_phi(state, p, window)) ** 2
    return out if np.ndim(out) else float(out)


def isw_singular_intensity(state: IswState) -> float:
    """``I(n pi hbar / a) = a / (4 pi hbar)``."""
    return state.a / (4.0 * math.pi * state.units.hbar)


def isw_asymptotic_envelope(state: IswState) -> float:
    """``limsup p^4 I(p) = N_n^2 / a^4``."""
    return _isw_norm(state) ** 2 / state.a**4
