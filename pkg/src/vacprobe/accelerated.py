"""Pole-ladder evaluation of the accelerated-pair ratio.

For the left/right hyperbolic pair of scale ``L`` the emission integral
picks up poles spaced ``i pi L`` starting one step off the real axis, the
exchange integral poles at half-integer steps.  The residue prefactors are
common to both ladders, so the ratio ``|<0|X_AB>| / |E_A|^2`` reduces to a
ratio of geometric series in ``exp(-pi Omega L)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .amplitudes import default_tau_max, emission_time_domain, exchange_vac_time_domain, hyperbolic_pair
from .errors import InvalidInputError


def _check(omega, L):
    if not omega > 0:
        raise InvalidInputError(f"gap must be positive, got {omega}")
    if not L > 0:
        raise InvalidInputError(f"scale must be positive, got {L}")


@dataclass(frozen=True)
class PoleSeries:
    kind: str            # "emission" or "exchange"
    terms: tuple         # ((n, magnitude), ...)
    partial_sum: float
    closed_form: float   # sum of the untruncated series


def pole_series(kind, omega, L, n_terms):
    """Magnitude ladder of the pole contributions, ``n_terms`` terms.

    Emission: ``exp(-pi n Omega L)`` for ``n = 1, 2, ...``; exchange:
    ``exp(-pi (n + 1/2) Omega L)`` for ``n = 0, 1, ...``.
    """
    _check(omega, L)
    if n_terms < 1:
        raise InvalidInputError("need at least one term")
    x = math.pi * omega * L
    r = math.exp(-x)
    if kind == "emission":
        terms = tuple((n, math.exp(-x * n)) for n in range(1, n_terms + 1))
        closed = r / (1.0 - r) if r < 1 else math.inf
    elif kind == "exchange":
        terms = tuple((n, math.exp(-x * (n + 0.5))) for n in range(n_terms))
        closed = math.exp(-0.5 * x) / (1.0 - r) if r < 1 else math.inf
    else:
        raise InvalidInputError(f"kind must be 'emission' or 'exchange', got {kind!r}")
    return PoleSeries(kind, terms, math.fsum(m for _, m in terms), closed)


def ratio_closed_form(omega, L):
    """``exp(pi Omega L / 2)``."""
    _check(omega, L)
    return math.exp(0.5 * math.pi * omega * L)


def ratio_series(omega, L, n_max):
    """Ratio of the exchange and emission ladders, ``n_max`` terms each."""
    ex = pole_series("exchange", omega, L, n_max)
    em = pole_series("emission", omega, L, n_max)
    return ex.partial_sum / em.partial_sum


def ratio_numeric_check(omega, L, tau_max=None, settings=None):
    """Quadrature estimate of ``|<0|X_AB>| / |E_A|^2`` for box switching on
    ``[-tau_max, tau_max]``.

    Returns ``(ratio, reference, rel_err)`` with ``reference`` the closed
    form.  Both amplitudes are the parts growing linearly with duration.
    """
    _check(omega, L)
    tau_max = default_tau_max(omega, L) if tau_max is None else tau_max
    if tau_max * omega < 3:
        warnings.warn(f"tau_max * Omega = {tau_max * omega:.3g} is not large; expect a poor ratio")
    pair = hyperbolic_pair(omega, L, tau_max, quad_settings=settings)
    em, _ = emission_time_domain(pair.probe_a, pair.regulator, pair.quad)
    ex, _ = exchange_vac_time_domain(pair)
    ratio = abs(ex) / em
    ref = ratio_closed_form(omega, L)
    return ratio, ref, abs(ratio - ref) / ref
