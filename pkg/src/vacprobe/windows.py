"""Switching functions for the probe-field coupling.

All windows are real, non-negative, even about their centre and compactly
supported.  Fourier transforms use the convention

    ft(w) = integral of eps(t) * exp(i w t) dt

with no 1/(2 pi) prefactor, so for even windows ``ft`` is real and even.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import wofz

from .errors import InvalidInputError

# half-width (in units of 1/T) of the band around a removable singularity
# in which the stable three-sinc form replaces the factored closed form
_POLE_BAND = 1e-4


def _sinc(x):
    # sin(x)/x, exact at 0
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


@dataclass(frozen=True)
class CosineSquared:
    """``amplitude * cos^2(pi t / T)`` on ``|t| <= T/2``, zero outside."""

    T: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.T > 0:
            raise InvalidInputError(f"window duration must be positive, got {self.T}")
        if not self.amplitude > 0:
            raise InvalidInputError(f"window amplitude must be positive, got {self.amplitude}")

    kind = "cos2"

    @property
    def support(self):
        return (-0.5 * self.T, 0.5 * self.T)

    @property
    def duration(self):
        return self.T

    @property
    def bandwidth(self):
        return 2.0 * math.pi / self.T

    def value(self, t):
        t = np.asarray(t, dtype=float)
        inside = np.abs(t) <= 0.5 * self.T
        return np.where(inside, self.amplitude * np.cos(np.pi * t / self.T) ** 2, 0.0)

    def ft(self, omega):
        w = np.asarray(omega, dtype=float)
        T = self.T
        a = 2.0 * math.pi / T
        # cos^2 = (1 + cos(a t)) / 2 gives three box transforms
        three_sinc = T * (0.5 * _sinc(0.5 * w * T)
                          + 0.25 * _sinc(0.5 * (w + a) * T)
                          + 0.25 * _sinc(0.5 * (w - a) * T))
        band = _POLE_BAND / T
        near = (np.abs(w) < band) | (np.abs(np.abs(w) - a) < band)
        with np.errstate(divide="ignore", invalid="ignore"):
            factored = a * a * np.sin(0.5 * w * T) / (w * (a * a - w * w))
        out = np.where(near, three_sinc, factored)
        return self.amplitude * out

    def ft_tail(self):
        """(C, p, w0) with ``|ft(w)| <= C / |w|**p`` for ``|w| >= w0``."""
        a = 2.0 * math.pi / self.T
        return (4.0 / 3.0) * self.amplitude * a * a, 3, 2.0 * a


@dataclass(frozen=True)
class Gaussian:
    """Gaussian window truncated at ``+-half_width`` (default 5 sigma).

    The truncation level is subtracted so the window is continuous at the
    cut; otherwise the jump would act as a sudden switch.
    """

    sigma: float = 0.2
    amplitude: float = 1.0
    half_width: float | None = None

    def __post_init__(self):
        if not self.sigma > 0:
            raise InvalidInputError(f"sigma must be positive, got {self.sigma}")
        if not self.amplitude > 0:
            raise InvalidInputError(f"window amplitude must be positive, got {self.amplitude}")
        if self.half_width is None:
            object.__setattr__(self, "half_width", 5.0 * self.sigma)
        if not self.half_width > 0:
            raise InvalidInputError("truncation half-width must be positive")

    kind = "gaussian"

    @property
    def support(self):
        return (-self.half_width, self.half_width)

    @property
    def duration(self):
        return 2.0 * self.half_width

    @property
    def bandwidth(self):
        return 3.0 / self.sigma

    @property
    def _floor(self):
        return math.exp(-0.5 * (self.half_width / self.sigma) ** 2)

    def value(self, t):
        t = np.asarray(t, dtype=float)
        body = np.exp(-0.5 * (t / self.sigma) ** 2) - self._floor
        return np.where(np.abs(t) <= self.half_width, self.amplitude * body, 0.0)

    def ft(self, omega):
        w = np.asarray(omega, dtype=float)
        s, h = self.sigma, self.half_width
        # truncated Gaussian via the Faddeeva function (no overflow at large w)
        zeta = (w * s * s + 1j * h) / (s * math.sqrt(2.0))
        gauss = np.exp(-0.5 * (w * s) ** 2) - math.exp(-0.5 * (h / s) ** 2) * np.exp(1j * h * w) * wofz(zeta)
        gauss = s * math.sqrt(2.0 * math.pi) * gauss.real
        box = 2.0 * h * _sinc(w * h)
        return self.amplitude * (gauss - self._floor * box)

    def ft_tail(self):
        # asymptotic envelope from the derivative jump at the cut; not rigorous
        s, h = self.sigma, self.half_width
        jump = (h / (s * s)) * self._floor
        return self.amplitude * (3.0 * jump + 1e-3 / s), 2, 8.0 / s


@dataclass(frozen=True)
class Box:
    """Hard on/off switching over ``|t| <= half_width``.

    Used for the long-duration accelerated runs.  Amplitudes built on box
    windows keep only the part growing linearly with the duration (see
    ``amplitudes``); the sudden-switching transient is divergent as the
    regulator is removed and is discarded.
    """

    half_width: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.half_width > 0:
            raise InvalidInputError("box half-width must be positive")
        if not self.amplitude > 0:
            raise InvalidInputError(f"window amplitude must be positive, got {self.amplitude}")

    kind = "box"

    @property
    def support(self):
        return (-self.half_width, self.half_width)

    @property
    def duration(self):
        return 2.0 * self.half_width

    @property
    def bandwidth(self):
        return 0.0

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(np.abs(t) <= self.half_width, self.amplitude, 0.0)

    def ft(self, omega):
        w = np.asarray(omega, dtype=float)
        return self.amplitude * 2.0 * self.half_width * _sinc(w * self.half_width)

    def ft_tail(self):
        return 2.0 * self.amplitude, 1, 0.0


CouplingWindow = CosineSquared | Gaussian | Box


def window_value(w, t):
    """Evaluate the switching function ``w`` at time(s) ``t``."""
    return w.value(t)


def window_ft(w, omega):
    """Fourier transform of ``w`` at angular frequency ``omega``."""
    return w.ft(omega)


def window_from_dict(d):
    """Build a window from a flat mapping such as ``{"kind": "cos2", "T": 1}``."""
    d = dict(d)
    kind = d.pop("kind", "cos2")
    try:
        cls = {"cos2": CosineSquared, "gaussian": Gaussian, "box": Box}[kind]
    except KeyError:
        raise InvalidInputError(f"unknown window kind {kind!r}") from None
    return cls(**d)


def window_to_dict(w):
    from dataclasses import asdict
    return {"kind": w.kind, **asdict(w)}
