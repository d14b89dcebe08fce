"""Rayleigh fading channel model over received SNR.

The channel is described entirely by the distribution of the received SNR
gamma (linear power ratio) with mean ``mean_snr``. Everything downstream
(cutoff solvers, spectral-efficiency integrals, Monte Carlo sampling) works
through this module: density, tail probabilities, inverse-cdf sampling and
adaptive quadrature of expectations E[f(gamma)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

__all__ = [
    "ChannelModel",
    "Quadrature",
    "DEFAULT_QUADRATURE",
    "IntegrationError",
    "db_to_linear",
    "linear_to_db",
    "exp_integral_e1",
    "exp_integral_e1_scaled",
]

_EULER_GAMMA = 0.5772156649015328606


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * math.log10(value)


class IntegrationError(RuntimeError):
    """Adaptive quadrature did not converge; carries the best estimate."""

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class Quadrature:
    """Tolerances for expectations integrated against the fading density."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if self.rel_tol <= 0.0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.abs_tol < 0.0:
            raise ValueError(f"abs_tol must be non-negative, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


DEFAULT_QUADRATURE = Quadrature()


@dataclass(frozen=True)
class ChannelModel:
    """Block-fading channel: distribution of the received SNR.

    ``mean_snr`` is the average received SNR as a linear power ratio.
    External interfaces talk dB; use :meth:`from_db` there.
    """

    mean_snr: float
    kind: str = "rayleigh"

    def __post_init__(self):
        if not (self.mean_snr > 0.0) or not math.isfinite(self.mean_snr):
            raise ValueError(f"mean_snr must be positive and finite, got {self.mean_snr}")
        if self.kind != "rayleigh":
            raise ValueError(f"unsupported fading kind: {self.kind!r}")

    @classmethod
    def from_db(cls, mean_snr_db: float, kind: str = "rayleigh") -> "ChannelModel":
        return cls(db_to_linear(mean_snr_db), kind)

    def pdf(self, gamma):
        """Density of the received SNR: exp(-gamma/mean)/mean."""
        g = np.asarray(gamma, dtype=float)
        if np.any(g < 0.0):
            raise ValueError("SNR must be non-negative")
        out = np.exp(-g / self.mean_snr) / self.mean_snr
        return out if g.ndim else float(out)

    def cdf(self, gamma):
        """P(SNR <= gamma) = 1 - exp(-gamma/mean)."""
        g = np.asarray(gamma, dtype=float)
        if np.any(g < 0.0):
            raise ValueError("SNR must be non-negative")
        out = -np.expm1(-g / self.mean_snr)
        return out if g.ndim else float(out)

    def inverse_cdf(self, u):
        """Quantile of the SNR distribution; u in [0, 1)."""
        q = np.asarray(u, dtype=float)
        if np.any(q < 0.0) or np.any(q >= 1.0):
            raise ValueError("quantile argument must lie in [0, 1)")
        out = -self.mean_snr * np.log1p(-q)
        return out if q.ndim else float(out)

    def sample(self, rng: np.random.Generator, size=None):
        """Draw SNR values by inverse-cdf from ``rng`` (owned by the caller)."""
        return self.inverse_cdf(rng.random(size))

    def integrate_tail(self, integrand: Callable[[float], float], lower: float,
                       quad: Quadrature = DEFAULT_QUADRATURE) -> float:
        """Integral of integrand(gamma) * pdf(gamma) over [lower, inf)."""
        return self.integrate_interval(integrand, lower, math.inf, quad)

    def integrate_interval(self, integrand: Callable[[float], float], lower: float,
                           upper: float = math.inf,
                           quad: Quadrature = DEFAULT_QUADRATURE) -> float:
        """Integral of integrand(gamma) * pdf(gamma) over [lower, upper].

        The exponential cdf is substituted so the density weight becomes
        uniform and the infinite tail becomes a finite interval. The range
        is split at gamma = mean_snr: below it the variable is
        v = cdf(gamma) = 1 - exp(-gamma/mean), above it u = exp(-gamma/mean).
        Each map is evaluated with expm1/log1p on its own side, which keeps
        the recovered gamma accurate both deep in the head (gamma << mean)
        and far out in the tail.
        """
        if lower < 0.0:
            raise ValueError("lower integration limit must be non-negative")
        if upper < lower:
            raise ValueError("upper integration limit must not be below lower")
        if upper == lower:
            return 0.0
        gbar = self.mean_snr
        pieces = []
        head_hi = min(upper, gbar)
        if lower < head_hi:
            v_lo = -math.expm1(-lower / gbar)
            v_hi = -math.expm1(-head_hi / gbar)
            pieces.append((lambda v: integrand(-gbar * math.log1p(-v)), v_lo, v_hi))
        tail_lo = max(lower, gbar)
        if tail_lo < upper:
            u_hi = math.exp(-tail_lo / gbar)
            u_lo = math.exp(-upper / gbar)
            pieces.append((lambda u: integrand(-gbar * math.log(u)), u_lo, u_hi))

        total = 0.0
        bound = 0.0
        for func, a, b in pieces:
            if a == b:
                continue
            result = integrate.quad(func, a, b, epsabs=quad.abs_tol,
                                    epsrel=quad.rel_tol,
                                    limit=quad.max_subdivisions, full_output=True)
            if len(result) == 4:
                value, piece_bound = result[0], result[1]
                raise IntegrationError(str(result[3]).strip(),
                                       total + value, bound + piece_bound)
            total += result[0]
            bound += result[1]
        return total


def exp_integral_e1(x: float) -> float:
    """Exponential integral E1(x) = integral of exp(-t)/t over [x, inf).

    Power series for x <= 1, modified-Lentz continued fraction above;
    relative error is at machine level across both branches. For x beyond
    ~745 the result underflows to 0.0; use the scaled variant there.
    """
    x = float(x)
    if not (x > 0.0):
        raise ValueError(f"E1 argument must be positive, got {x}")
    if x <= 1.0:
        return _e1_series(x)
    return math.exp(-x) * _e1_cf_scaled(x)


def exp_integral_e1_scaled(x: float) -> float:
    """exp(x) * E1(x), safe from underflow for large x."""
    x = float(x)
    if not (x > 0.0):
        raise ValueError(f"E1 argument must be positive, got {x}")
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    return _e1_cf_scaled(x)


def _e1_series(x: float) -> float:
    total = -_EULER_GAMMA - math.log(x)
    term = x
    k = 1
    while True:
        total += term
        k += 1
        term *= -x * (k - 1) / (k * k)
        if abs(term) <= 1e-17 * abs(total) + 5e-324:
            return total
        if k > 60:  # series converges in <30 terms for x <= 1
            return total


def _e1_cf_scaled(x: float) -> float:
    # exp(x)*E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(x+7- ...)))), modified Lentz
    b = x + 1.0
    c = 1e308
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h
