"""Physical parameters of the square well and per-state derived quantities.

Conventions
-----------
The well is ``V(x) = 0`` for ``|x| < a/2`` and ``V(x) = V0`` outside.  For a
bound state of energy ``0 < E < V0``::

    alpha = sqrt(2 m (V0 - E)) / hbar     decay rate outside the well
    beta  = sqrt(2 m E) / hbar            wavenumber inside the well
    gamma = sqrt(2 m V0) / hbar           alpha**2 + beta**2 == gamma**2
    d     = beta * a / 2
    z     = p / hbar

Every formula carries ``m`` and ``hbar`` explicitly.  The default
:class:`UnitSystem` has ``2m = 1`` and ``hbar = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, DomainError

#: Default absolute tolerance on the pole-free eigenvalue residual.
EIGEN_TOL = 1e-9

#: Floor applied to ``alpha`` for states sitting on the continuum threshold.
ALPHA_FLOOR = 1e-300


@dataclass(frozen=True)
class UnitSystem:
    """Mass and reduced Planck constant.  Defaults give ``2m = 1 = hbar``."""

    mass: float = 0.5
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise DomainError(f"mass must be positive and finite, got {self.mass!r}")
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be positive and finite, got {self.hbar!r}")

    def energy_from_wavenumber(self, k):
        """``hbar**2 k**2 / (2m)``."""
        return self.hbar**2 * k**2 / (2.0 * self.mass)

    def wavenumber_from_energy(self, energy):
        """``sqrt(2 m E) / hbar``."""
        return math.sqrt(2.0 * self.mass * energy) / self.hbar


@dataclass(frozen=True)
class WellSpec:
    """Depth ``v0`` and full width ``a`` of a symmetric finite square well."""

    v0: float
    a: float
    units: UnitSystem = field(default_factory=UnitSystem)

    def __post_init__(self):
        if not (self.v0 > 0 and math.isfinite(self.v0)):
            raise DomainError(f"well depth v0 must be positive, got {self.v0!r}")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DomainError(f"well width a must be positive, got {self.a!r}")

    @property
    def half_width(self) -> float:
        return 0.5 * self.a

    @property
    def gamma(self) -> float:
        return gamma(self)

    def potential(self, x):
        """``V(x)``; works elementwise on arrays."""
        return np.where(np.abs(x) < self.half_width, 0.0, self.v0)


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @property
    def sign(self) -> int:
        """``+1`` for even, ``-1`` for odd, i.e. ``psi(-x) = sign * psi(x)``."""
        return 1 if self is Parity.EVEN else -1

    @classmethod
    def for_index(cls, n: int) -> "Parity":
        """Parity of the ``n``-th state (0-based) of a symmetric well."""
        return cls.EVEN if n % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class BoundState:
    """One solved eigenstate of a :class:`WellSpec`.

    ``norm`` is the position-space normalisation constant (``A_e`` or
    ``A_o``).  ``at_threshold`` is set when the state sits so close to the
    continuum that ``alpha`` had to be clamped to :data:`ALPHA_FLOOR`.
    """

    parity: Parity
    n: int
    energy: float
    alpha: float
    beta: float
    d: float
    norm: float
    well: WellSpec
    at_threshold: bool = False

    @property
    def units(self) -> UnitSystem:
        return self.well.units

    @property
    def gamma(self) -> float:
        return self.well.gamma

    @property
    def boundary_amplitude(self) -> float:
        """``cos d`` for even states, ``sin d`` for odd ones."""
        return math.cos(self.d) if self.parity is Parity.EVEN else math.sin(self.d)

    @property
    def outside_probability(self) -> float:
        """Probability of finding the particle in ``|x| > a/2``.

        Closed form ``A**2 c**2 / alpha`` with ``c = boundary_amplitude``:
        each exterior tail is ``A c exp(-alpha t)`` for ``t > 0`` and
        integrates (squared) to ``A**2 c**2 / (2 alpha)``.
        """
        return self.norm**2 * self.boundary_amplitude**2 / self.alpha

    @property
    def eigen_residual(self) -> float:
        return eigenvalue_residual(self.parity, self.alpha, self.beta, self.d)


@dataclass(frozen=True)
class IswState:
    """Eigenstate ``n >= 1`` of the infinite well of width ``a``."""

    n: int
    a: float
    units: UnitSystem
    beta_n: float
    energy: float

    @property
    def parity(self) -> Parity:
        # n = 1 is the even ground state
        return Parity.EVEN if self.n % 2 == 1 else Parity.ODD


def gamma(well: WellSpec) -> float:
    """Return ``sqrt(2 m V0) / hbar``."""
    return math.sqrt(2.0 * well.units.mass * well.v0) / well.units.hbar


def eigenvalue_residual(parity: Parity, alpha: float, beta: float, d: float) -> float:
    """Pole-free form of the matching condition.

    Even states need ``tan d = alpha/beta``, written as ``beta sin d - alpha cos d``.
    Odd states need ``tan d = -beta/alpha``, written as ``alpha sin d + beta cos d``.
    """
    if parity is Parity.EVEN:
        return beta * math.sin(d) - alpha * math.cos(d)
    return alpha * math.sin(d) + beta * math.cos(d)


def normalization_constant(parity: Parity, alpha: float, beta: float, d: float, a: float) -> float:
    """Normalisation constant of the even or odd eigenfunction."""
    if parity is Parity.EVEN:
        bracket = (1.0 + math.cos(2 * d)) / alpha + math.sin(2 * d) / beta + a
    else:
        bracket = (1.0 - math.cos(2 * d)) / alpha - math.sin(2 * d) / beta + a
    return math.sqrt(2.0 / bracket)


def derive_state_quantities(
    well: WellSpec,
    energy: float,
    parity: Parity,
    n: int,
    tol: float = EIGEN_TOL,
) -> BoundState:
    """Build a :class:`BoundState` from an eigen-energy.

    Raises
    ------
    DomainError
        ``energy`` is not inside ``(0, v0)`` or ``n`` is negative.
    ConsistencyError
        The matching condition for ``parity`` is violated by more than ``tol``,
        i.e. ``energy`` is not an eigenvalue.
    """
    if n < 0:
        raise DomainError(f"state index must be non-negative, got {n}")
    if not (0.0 < energy < well.v0):
        raise DomainError(f"bound-state energy must lie in (0, {well.v0}), got {energy!r}")
    u = well.units
    beta = math.sqrt(2.0 * u.mass * energy) / u.hbar
    alpha = math.sqrt(2.0 * u.mass * (well.v0 - energy)) / u.hbar
    at_threshold = False
    if alpha < ALPHA_FLOOR:
        alpha = ALPHA_FLOOR
        at_threshold = True
    d = 0.5 * beta * well.a
    residual = eigenvalue_residual(parity, alpha, beta, d)
    if not abs(residual) <= tol:
        raise ConsistencyError(
            f"E={energy!r} is not a {parity.value} eigenvalue: residual {residual:.3e} > {tol:.1e}"
        )
    norm = normalization_constant(parity, alpha, beta, d, well.a)
    return BoundState(
        parity=parity,
        n=n,
        energy=energy,
        alpha=alpha,
        beta=beta,
        d=d,
        norm=norm,
        well=well,
        at_threshold=at_threshold,
    )
