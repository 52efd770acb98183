"""Probe worldlines: inertial points and uniformly accelerated hyperbolae.

Natural units (hbar = c = 1).  A hyperbolic branch of scale ``L`` has
proper acceleration ``2/L`` and passes through ``x = -+L/2`` at ``t = 0``;
the left branch lives in the wedge ``x < -|t|``, the right one in
``x > |t|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class Inertial:
    position: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        pos = tuple(float(c) for c in self.position)
        if len(pos) != 3:
            raise InvalidInputError("position must be a 3-vector")
        object.__setattr__(self, "position", pos)


@dataclass(frozen=True)
class Hyperbolic:
    branch: str = "right"
    L: float = 1.0

    def __post_init__(self):
        if self.branch not in ("left", "right"):
            raise InvalidInputError(f"branch must be 'left' or 'right', got {self.branch!r}")
        if not self.L > 0:
            raise InvalidInputError(f"hyperbolic scale must be positive, got {self.L}")

    @property
    def sign(self):
        return -1.0 if self.branch == "left" else 1.0


Trajectory = Inertial | Hyperbolic


@dataclass(frozen=True)
class ProbeParams:
    """One two-level probe: gap, worldline and switching.

    ``t_offset`` shifts the switching window along the probe's proper time.
    """

    gap: float
    trajectory: Trajectory = field(default_factory=Inertial)
    window: object = None
    t_offset: float = 0.0

    def __post_init__(self):
        if not self.gap > 0:
            raise InvalidInputError(f"energy gap must be positive, got {self.gap}")
        if self.window is None:
            from .windows import CosineSquared
            object.__setattr__(self, "window", CosineSquared())

    @property
    def support(self):
        a, b = self.window.support
        return a + self.t_offset, b + self.t_offset


def position_at(traj, tau):
    """Minkowski coordinates ``(t, x)`` of the probe at proper time ``tau``.

    ``tau`` may be an array; ``x`` then has shape ``tau.shape + (3,)``.
    """
    tau = np.asarray(tau, dtype=float)
    if isinstance(traj, Inertial):
        x = np.broadcast_to(np.array(traj.position), tau.shape + (3,)).copy()
        return tau.copy() if tau.ndim else float(tau), x
    if isinstance(traj, Hyperbolic):
        h = 0.5 * traj.L
        arg = 2.0 * tau / traj.L
        t = h * np.sinh(arg)
        x = np.zeros(tau.shape + (3,))
        x[..., 0] = traj.sign * h * np.cosh(arg)
        return (t if tau.ndim else float(t)), x
    raise InvalidInputError(f"unknown trajectory {traj!r}")


def separation(traj_a, traj_b):
    """Probe separation ``L``: spatial distance for inertial probes, the
    distance of closest approach (``L``) for a left/right hyperbolic pair."""
    if isinstance(traj_a, Inertial) and isinstance(traj_b, Inertial):
        return float(np.linalg.norm(np.subtract(traj_a.position, traj_b.position)))
    if isinstance(traj_a, Hyperbolic) and isinstance(traj_b, Hyperbolic):
        if traj_a.branch == traj_b.branch:
            return 0.0
        return 0.5 * (traj_a.L + traj_b.L)
    raise InvalidInputError("mixed inertial/hyperbolic pairs are not supported")


def _check_support(window):
    a, b = window.support
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InvalidInputError("window support must be bounded")


def causally_disconnected(traj_a, window_a, traj_b, window_b, offset_a=0.0, offset_b=0.0):
    """True iff every event on A's active segment is spacelike to every
    event on B's active segment."""
    _check_support(window_a)
    _check_support(window_b)
    a0, a1 = (s + offset_a for s in window_a.support)
    b0, b1 = (s + offset_b for s in window_b.support)
    if isinstance(traj_a, Inertial) and isinstance(traj_b, Inertial):
        r = separation(traj_a, traj_b)
        # largest time difference between the two active intervals
        return max(a1 - b0, b1 - a0) < r
    if isinstance(traj_a, Hyperbolic) and isinstance(traj_b, Hyperbolic):
        # opposite Rindler wedges are mutually spacelike; a single wedge is not
        return traj_a.branch != traj_b.branch
    # mixed pair: check the interval on a dense grid of the two segments
    ta, xa = position_at(traj_a, np.linspace(a0, a1, 301))
    tb, xb = position_at(traj_b, np.linspace(b0, b1, 301))
    dt = ta[:, None] - tb[None, :]
    dx = np.linalg.norm(xa[:, None, :] - xb[None, :, :], axis=-1)
    return bool(np.all(dx * dx - dt * dt > 0))
