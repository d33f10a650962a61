"""Bracketed scalar root finding."""

from __future__ import annotations

import math
from typing import Callable

from ..errors import BracketError, ConvergenceError


def find_root_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol_x: float = 1e-14,
    tol_f: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Locate a sign change of ``f`` in ``[lo, hi]`` by bisection.

    Stops as soon as ``|f(x)| <= tol_f``, or the bracket is no wider than
    ``tol_x``, or it cannot be halved in floating point.  Returns the point
    that met ``tol_f`` or else the midpoint of the final bracket.

    Raises
    ------
    BracketError
        ``lo >= hi`` or ``f(lo)`` and ``f(hi)`` share a sign.
    ConvergenceError
        ``max_iter`` halvings did not reach either tolerance.  The exception
        carries the last midpoint and bracket.
    """
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]", lo, hi)
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo:.3e}, f(hi)={fhi:.3e}", lo, hi
        )
    for _ in range(max_iter):
        mid = lo + 0.5 * (hi - lo)
        fmid = f(mid)
        if abs(fmid) <= tol_f or (hi - lo) <= tol_x:
            return mid
        if not lo < mid < hi:
            # bracket is down to adjacent floats
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    raise ConvergenceError(
        f"bisection did not converge in {max_iter} iterations on [{lo}, {hi}]",
        best=lo + 0.5 * (hi - lo),
        bracket=(lo, hi),
    )
