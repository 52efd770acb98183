"""Massless scalar Wightman function in 3+1 dimensions.

``D+(x', x) = <0|phi(x') phi(x)|0> = -1 / (4 pi^2 [(t' - t - i eps)^2 - |x' - x|^2])``

together with its closed forms along the hyperbolic worldlines, and the
Richardson extrapolation used to take ``eps -> 0`` in integrals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

FOUR_PI2 = 4.0 * math.pi ** 2

DEFAULT_LADDER = (1e-2, 5e-3, 2.5e-3, 1.25e-3)


@dataclass(frozen=True)
class Regulator:
    """iε regulator.  ``ladder`` is relative to ``scale`` (a time)."""

    ladder: tuple = DEFAULT_LADDER
    scale: float = 1.0

    def __post_init__(self):
        ladder = tuple(float(e) for e in self.ladder)
        if not ladder or any(e <= 0 for e in ladder):
            raise InvalidInputError("regulator values must be positive")
        if any(b >= a for a, b in zip(ladder, ladder[1:])):
            raise InvalidInputError("regulator ladder must be strictly decreasing")
        if not self.scale > 0:
            raise InvalidInputError("regulator scale must be positive")
        object.__setattr__(self, "ladder", ladder)

    @property
    def values(self):
        return tuple(e * self.scale for e in self.ladder)

    @property
    def epsilon(self):
        return self.values[-1]

    def rescaled(self, scale):
        return Regulator(self.ladder, float(scale))


def _check_eps(eps):
    if not eps > 0:
        raise InvalidInputError(f"regulator must be positive, got {eps}")


def wightman_minkowski(dt, dx, eps):
    """D+ for time difference ``dt = t' - t`` and spatial difference ``dx``.

    ``dx`` may be a 3-vector (or array of them, last axis) or a distance.
    """
    _check_eps(eps)
    dx = np.asarray(dx, dtype=float)
    r2 = np.sum(dx * dx, axis=-1) if dx.ndim and dx.shape[-1] == 3 else dx * dx
    z = np.asarray(dt, dtype=float) - 1j * eps
    return -1.0 / (FOUR_PI2 * (z * z - r2))


def _check_L(L):
    if not L > 0:
        raise InvalidInputError(f"hyperbolic scale must be positive, got {L}")


def wightman_hyperbolic_same(dtau, L, eps):
    """D+ between two points of one hyperbolic branch, ``dtau = tau' - tau``."""
    _check_L(L)
    _check_eps(eps)
    z = (np.asarray(dtau, dtype=float) - 1j * eps) / L
    return -1.0 / (FOUR_PI2 * L * L * np.sinh(z) ** 2)


def wightman_hyperbolic_cross(tau_sum, L, eps=0.0):
    """D+ between the left and right branches, ``tau_sum = tau_A + tau_B``.

    Finite at ``eps = 0``: the two wedges are spacelike.
    """
    _check_L(L)
    if eps < 0:
        raise InvalidInputError("regulator must be non-negative")
    z = (np.asarray(tau_sum, dtype=float) - 1j * eps) / L
    val = 1.0 / (FOUR_PI2 * L * L * np.cosh(z) ** 2)
    return val.real if eps == 0 else val


def sinh_subtracted(z):
    """``1/sinh(z)^2 - 1/z^2``, analytic at the origin."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 2e-2
    zs = np.where(small, 1.0, z)
    zz = z * z
    series = -1.0 / 3.0 + zz / 15.0 - 2.0 * zz * zz / 189.0 + zz ** 3 / 675.0
    with np.errstate(all="ignore"):
        direct = 1.0 / np.sinh(zs) ** 2 - 1.0 / (zs * zs)
    return np.where(small, series, direct)


def richardson(eps, values):
    """Polynomial extrapolation of ``values(eps)`` to ``eps = 0``.

    Neville's scheme on the full ladder.  Returns ``(limit, error)`` where
    the error is the change between the two highest extrapolation orders.
    """
    eps = np.asarray(eps, dtype=float)
    p = [complex(v) for v in values]
    n = len(p)
    if n != len(eps) or n == 0:
        raise InvalidInputError("need one value per regulator")
    if n == 1:
        return p[0], abs(p[0])
    prev = None
    for k in range(1, n):
        for i in range(n - k):
            j = i + k
            p[i] = (eps[j] * p[i] - eps[i] * p[i + 1]) / (eps[j] - eps[i])
        if k == n - 2:
            prev = p[1]  # same order on the finer sub-ladder
    if prev is None:  # two-point ladder
        prev = complex(values[-1])
    return p[0], abs(p[0] - prev)
