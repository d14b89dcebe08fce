"""Bracketed scalar root finding for the cutoff solvers."""

from __future__ import annotations

from typing import Callable

__all__ = ["SolverError", "solve_bracketed"]


class SolverError(RuntimeError):
    pass


def solve_bracketed(func: Callable[[float], float], lo: float, hi: float, *,
                    x_tol: float, f_tol: float = 0.0, max_iter: int = 200) -> float:
    """Root of ``func`` inside [lo, hi], which must bracket a sign change.

    Secant (regula falsi with Illinois damping) steps refined by midpoint
    fallback; the bracket never widens. Stops once the bracket is narrower
    than ``x_tol`` or |func| drops to ``f_tol``.
    """
    flo = func(lo)
    fhi = func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise SolverError(
            f"root not bracketed in [{lo:g}, {hi:g}]: f(lo)={flo:g}, f(hi)={fhi:g}")

    side = 0
    for _ in range(max_iter):
        width = hi - lo
        if width <= x_tol:
            break
        x = hi - fhi * width / (fhi - flo)
        # keep the step strictly interior, else bisect
        if not (lo + 0.001 * width <= x <= hi - 0.001 * width):
            x = lo + 0.5 * width
        fx = func(x)
        if fx == 0.0 or abs(fx) <= f_tol:
            return x
        if (fx > 0.0) == (flo > 0.0):
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = x, fx
            if side == 1:
                flo *= 0.5
            side = 1
    return 0.5 * (lo + hi)
