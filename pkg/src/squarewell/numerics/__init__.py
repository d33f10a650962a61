"""Numerical kernel: root finding, adaptive quadrature, transforms and moments."""

from .quadrature import QuadratureResult, integrate
from .roots import find_root_bracketed

__all__ = ["QuadratureResult", "find_root_bracketed", "integrate"]
