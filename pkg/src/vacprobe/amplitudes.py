"""Second-order probe amplitudes and the reduced two-probe density matrix.

With ``Phi_i^+ = int dtau eps_i(tau) exp(+i Omega_i tau) phi(x_i(tau))`` the
five scalars entering the density matrix are

    emission_A        |E_A|^2      = <0| Phi_A^+dag Phi_A^+ |0>
    emission_B        |E_B|^2
    exchange_vac      <0|X_AB>     = <0| Phi_A^+ Phi_B^+ |0>
    emission_overlap  <E_B|E_A>    = <0| Phi_B^+dag Phi_A^+ |0>
    x_norm_sq         |X_AB|^2     = <0| Phi_B^+dag Phi_A^+dag Phi_A^+ Phi_B^+ |0>

Each is a double integral of a Wightman function against two "legs"
``g(tau) = eps(tau - offset) exp(i f tau)``.  For free fields the four-point
function in ``|X_AB|^2`` splits into three pairings, giving

    |X_AB|^2 = |E_A|^2 |E_B|^2 + |<E_B|E_A>|^2 + |<0|X_AB>|^2

so no quadruple integral is needed.

Two independent routes are provided.  The time-domain route reduces the
double integral to a lag integral of the Wightman function against a
window-correlation kernel, subtracts the light-cone poles analytically and
extrapolates the iε regulator to zero.  The frequency-domain route (inertial
probes only) inserts the mode sum of the Wightman function and integrates
products of window Fourier transforms.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .correlators import (FOUR_PI2, Regulator, richardson, sinh_subtracted,
                          wightman_hyperbolic_cross)
from .errors import InvalidInputError, NumericError, PerturbativeRegimeError
from .qubit_pair import TOL_EIG, TOL_POS, DensityMatrix4, EntanglementReport, ppt_verdict
from .trajectories import Hyperbolic, Inertial, ProbeParams, causally_disconnected, separation
from .windows import Box

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class QuadSettings:
    epsrel: float = 1e-10
    epsabs: float = 1e-15
    limit: int = 2000          # max adaptive subdivisions per lag integral
    tail_rtol: float = 1e-8    # frequency-domain tail bound / accumulated value
    omega_max: float = 1e5     # hard cap on the frequency cutoff
    gl_nodes: int = 32         # nodes per frequency panel


@dataclass(frozen=True)
class PairConfig:
    """Two probes plus numerical settings.

    ``regulator`` left as ``None`` picks the default ladder scaled to the
    shortest time scale in the problem (window duration, or ``L`` for
    hyperbolic probes).  Causal disconnection is recorded in ``causal``;
    with ``strict=True`` a connected pair is rejected.
    """

    probe_a: ProbeParams
    probe_b: ProbeParams
    regulator: Regulator | None = None
    quad: QuadSettings = field(default_factory=QuadSettings)
    strict: bool = False

    def __post_init__(self):
        if self.regulator is None:
            object.__setattr__(self, "regulator", Regulator(scale=self._natural_scale()))
        if self.strict and not self.causal:
            raise InvalidInputError("probes are not causally disconnected")

    def _natural_scale(self):
        scales = [self.probe_a.window.duration, self.probe_b.window.duration]
        for p in (self.probe_a, self.probe_b):
            if isinstance(p.trajectory, Hyperbolic):
                scales.append(p.trajectory.L)
        return min(scales)

    @property
    def separation(self):
        return separation(self.probe_a.trajectory, self.probe_b.trajectory)

    @property
    def causal(self):
        return causally_disconnected(self.probe_a.trajectory, self.probe_a.window,
                                     self.probe_b.trajectory, self.probe_b.window,
                                     self.probe_a.t_offset, self.probe_b.t_offset)

    @property
    def equal_gaps(self):
        return self.probe_a.gap == self.probe_b.gap

    def swapped(self):
        return PairConfig(self.probe_b, self.probe_a, self.regulator, self.quad, self.strict)


def inertial_pair(omega, L, window=None, quad_settings=None, regulator=None):
    """Two identical inertial probes on the x-axis at ``-L/2`` and ``+L/2``."""
    from .windows import CosineSquared
    window = window or CosineSquared(1.0)
    a = ProbeParams(omega, Inertial((-0.5 * L, 0.0, 0.0)), window)
    b = ProbeParams(omega, Inertial((0.5 * L, 0.0, 0.0)), window)
    return PairConfig(a, b, regulator, quad_settings or QuadSettings())


def default_tau_max(omega, L):
    return max(6.0 / omega, 3.0 * L)


def hyperbolic_pair(omega, L, tau_max=None, amplitude=1e-2, quad_settings=None, regulator=None):
    """Left/right uniformly accelerated probes with box switching on
    ``[-tau_max, tau_max]``."""
    tau_max = default_tau_max(omega, L) if tau_max is None else tau_max
    w = Box(tau_max, amplitude)
    a = ProbeParams(omega, Hyperbolic("left", L), w)
    b = ProbeParams(omega, Hyperbolic("right", L), w)
    return PairConfig(a, b, regulator, quad_settings or QuadSettings())


@dataclass(frozen=True)
class AmplitudeSet:
    emission_A: float
    emission_B: float
    exchange_vac: complex
    emission_overlap: complex
    x_norm_sq: float
    method: str = "given"
    errors: dict = field(default_factory=dict)

    @property
    def connected_x_norm_sq(self):
        """``|X_AB|^2`` with the vacuum component removed."""
        return self.x_norm_sq - abs(self.exchange_vac) ** 2

    @property
    def err_max(self):
        """Largest relative error estimate over the entries."""
        vals = {"emission_A": self.emission_A, "emission_B": self.emission_B,
                "exchange_vac": self.exchange_vac, "emission_overlap": self.emission_overlap,
                "x_norm_sq": self.x_norm_sq}
        rel = [self.errors[k] / abs(v) for k, v in vals.items() if k in self.errors and v != 0]
        return max(rel, default=0.0)

    def scaled(self, lam):
        """Amplitudes for all window amplitudes multiplied by ``lam``."""
        l2, l4 = lam ** 2, lam ** 4
        errs = {k: v * (l4 if k == "x_norm_sq" else l2) for k, v in self.errors.items()}
        return AmplitudeSet(self.emission_A * l2, self.emission_B * l2, self.exchange_vac * l2,
                            self.emission_overlap * l2, self.x_norm_sq * l4, self.method, errs)


def amplitude_set(emission_A, emission_B, exchange_vac, emission_overlap,
                  x_norm_sq=None, method="given", errors=None):
    """Build an :class:`AmplitudeSet`, filling ``x_norm_sq`` from the
    pairing formula when not given."""
    if x_norm_sq is None:
        x_norm_sq = emission_A * emission_B + abs(emission_overlap) ** 2 + abs(exchange_vac) ** 2
    return AmplitudeSet(float(emission_A), float(emission_B), complex(exchange_vac),
                        complex(emission_overlap), float(x_norm_sq), method, dict(errors or {}))


# ---------------------------------------------------------------------------
# time-domain route


@dataclass(frozen=True)
class _Leg:
    probe: ProbeParams
    freq: float

    @property
    def support(self):
        return self.probe.support

    def __call__(self, tau):
        p = self.probe
        return p.window.value(tau - p.t_offset) * np.exp(1j * self.freq * tau)


class _Geometry:
    """Wightman function between two worldlines as a function of a single
    combination ``u`` of the proper times: ``tau1 - tau2`` (mode ``diff``) or
    ``tau1 + tau2`` (mode ``sum``).  ``poles`` lists ``(coef, x0, order)``
    such that ``D(u) = sum coef / (u - x0 - i eps)**order + smooth(u)``."""

    def __init__(self, traj1, traj2):
        if isinstance(traj1, Inertial) and isinstance(traj2, Inertial):
            self.mode = "diff"
            r = separation(traj1, traj2)
            self.r = r
            if r == 0.0:
                self.poles = [(-1.0 / FOUR_PI2, 0.0, 2)]
            else:
                c = 1.0 / (2.0 * FOUR_PI2 * r)
                self.poles = [(-c, r, 1), (c, -r, 1)]
            self.smooth = None
        elif isinstance(traj1, Hyperbolic) and isinstance(traj2, Hyperbolic):
            if traj1.L != traj2.L:
                raise InvalidInputError("hyperbolic probes must share the scale L")
            L = traj1.L
            if traj1.branch == traj2.branch:
                self.mode = "diff"
                self.poles = [(-1.0 / FOUR_PI2, 0.0, 2)]
                self.smooth = lambda u, eps: -sinh_subtracted((u - 1j * eps) / L) / (FOUR_PI2 * L * L)
            else:
                self.mode = "sum"
                self.poles = []
                self.smooth = lambda u, eps: wightman_hyperbolic_cross(u, L, eps)
        else:
            raise InvalidInputError("mixed inertial/hyperbolic pairs are not supported")


def _box_pair(leg1, leg2):
    w1, w2 = leg1.probe.window, leg2.probe.window
    b1, b2 = isinstance(w1, Box), isinstance(w2, Box)
    if b1 != b2:
        raise InvalidInputError("box windows can only be paired with box windows")
    if b1 and (w1.half_width != w2.half_width or leg1.probe.t_offset != leg2.probe.t_offset):
        raise InvalidInputError("paired box windows must coincide")
    return b1


class _Kernel:
    """Window-correlation kernel ``K(u)`` so that the double integral equals
    ``int du D(u) K(u)``."""

    def __init__(self, leg1, leg2, mode):
        self.leg1, self.leg2, self.mode = leg1, leg2, mode
        a1, b1 = leg1.support
        a2, b2 = leg2.support
        self.a1, self.b1, self.a2, self.b2 = a1, b1, a2, b2
        if mode == "diff":
            self.lo, self.hi = a1 - b2, b1 - a2
            phase = leg1.freq + leg2.freq
        else:
            self.lo, self.hi = a1 + a2, b1 + b2
            phase = leg2.freq - leg1.freq
        self.stationary = _box_pair(leg1, leg2)
        self.extensive_zero = self.stationary and phase != 0.0
        span = min(b1 - a1, b2 - a2)
        bw = abs(phase) + leg1.probe.window.bandwidth + leg2.probe.window.bandwidth
        self.panels = max(1, int(math.ceil(span * bw / math.pi)))
        self._eval = lru_cache(maxsize=None)(self._eval_scalar)

    def _eval_scalar(self, u):
        if u < self.lo or u > self.hi:
            return 0j
        l1, l2 = self.leg1, self.leg2
        if self.stationary:
            # extensive part only: duration times the v-independent integrand
            w = l1.probe.window
            dur = w.duration
            return complex(w.amplitude ** 2 * dur * np.exp(1j * l1.freq * u))
        if self.mode == "diff":
            v0, v1 = max(self.a1 - u, self.a2), min(self.b1 - u, self.b2)
        else:
            v0, v1 = max(u - self.b1, self.a2), min(u - self.a1, self.b2)
        if v1 <= v0:
            return 0j
        edges = np.linspace(v0, v1, self.panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        v = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
        wts = (half[:, None] * _GL_W[None, :]).ravel()
        first = l1(v + u) if self.mode == "diff" else l1(u - v)
        return complex(np.sum(wts * first * l2(v)))

    def __call__(self, u):
        return self._eval(float(u))

    def derivative(self, x):
        h = 1e-3 * (self.hi - self.lo)
        k = self
        return (-k(x + 2 * h) + 8 * k(x + h) - 8 * k(x - h) + k(x - 2 * h)) / (12 * h)


def _log_ratio(b, a, p):
    return np.log(b - p) - np.log(a - p)


def _lag_integral(kernel, geom, eps, settings):
    """``int K(u) D(u - i eps) du`` over the kernel support for one ``eps``."""
    lo, hi = kernel.lo, kernel.hi
    analytic = 0j
    inside = []
    for coef, x0, order in geom.poles:
        p = x0 + 1j * eps
        if lo <= x0 <= hi:
            k0 = kernel(x0)
            if order == 1:
                analytic += coef * k0 * _log_ratio(hi, lo, p)
                inside.append((coef, x0, order, p, k0, 0j))
            else:
                k1 = kernel.derivative(x0)
                inv = 1.0 / (lo - p) - 1.0 / (hi - p)
                analytic += coef * (k0 * inv + k1 * (_log_ratio(hi, lo, p) + (p - x0) * inv))
                inside.append((coef, x0, order, p, k0, k1))
        else:
            inside.append((coef, x0, order, p, None, None))

    smooth = geom.smooth

    def integrand(u):
        ku = kernel(u)
        val = 0j
        for coef, x0, order, p, k0, k1 in inside:
            if k0 is None:
                val += coef * ku / (u - p) ** order
            elif order == 1:
                val += coef * (ku - k0) / (u - p)
            else:
                val += coef * (ku - k0 - k1 * (u - x0)) / (u - p) ** 2
        if smooth is not None:
            val += ku * complex(smooth(u, eps))
        return val

    breaks = sorted({x0 for _, x0, *_ in geom.poles if lo < x0 < hi}
                    | {x0 + s * eps for _, x0, *_ in geom.poles for s in (-4, 4) if lo < x0 + s * eps < hi})
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            num, err = quad(integrand, lo, hi, points=breaks or None, limit=settings.limit,
                            epsabs=settings.epsabs, epsrel=settings.epsrel, complex_func=True)
        except IntegrationWarning as exc:
            warnings.simplefilter("ignore", IntegrationWarning)
            num, err = quad(integrand, lo, hi, points=breaks or None, limit=settings.limit,
                            epsabs=settings.epsabs, epsrel=settings.epsrel, complex_func=True)
            if not np.isfinite(num) or abs(err) > 1e-2 * max(abs(num + analytic), 1e-300):
                raise NumericError(f"lag quadrature did not converge: {exc}", estimate=num + analytic,
                                   diagnostics={"eps": eps, "abserr": err})
    return complex(num + analytic), float(abs(err))


def _time_domain(leg1, leg2, reg, settings):
    geom = _Geometry(leg1.probe.trajectory, leg2.probe.trajectory)
    kernel = _Kernel(leg1, leg2, geom.mode)
    if kernel.extensive_zero:
        return 0j, 0.0
    eps_values = reg.values
    vals, qerr = [], 0.0
    for eps in eps_values:
        v, e = _lag_integral(kernel, geom, eps, settings)
        vals.append(v)
        qerr = max(qerr, e)
    limit, rerr = richardson(eps_values, vals)
    return complex(limit), float(rerr + qerr)


def emission_time_domain(probe, reg=None, settings=None):
    """``|E|^2`` for one probe by the time-domain route.

    Returns ``(value, error_estimate)``.  A non-negligible imaginary
    residue is folded into the error estimate.
    """
    settings = settings or QuadSettings()
    reg = reg or Regulator(scale=probe.window.duration if isinstance(probe.trajectory, Inertial)
                           else min(probe.window.duration, probe.trajectory.L))
    val, err = _time_domain(_Leg(probe, -probe.gap), _Leg(probe, probe.gap), reg, settings)
    return float(val.real), float(err + abs(val.imag))


def exchange_vac_time_domain(pair):
    """``<0|X_AB>`` by the time-domain route; ``(value, error_estimate)``."""
    a, b = pair.probe_a, pair.probe_b
    return _time_domain(_Leg(a, a.gap), _Leg(b, b.gap), pair.regulator, pair.quad)


def emission_overlap_time_domain(pair):
    """``<E_B|E_A>`` by the time-domain route; ``(value, error_estimate)``."""
    a, b = pair.probe_a, pair.probe_b
    return _time_domain(_Leg(b, -b.gap), _Leg(a, a.gap), pair.regulator, pair.quad)


# ---------------------------------------------------------------------------
# frequency-domain route


def _require_inertial(*probes):
    for p in probes:
        if not isinstance(p.trajectory, Inertial):
            raise InvalidInputError("the frequency-domain route needs inertial probes")
        if isinstance(p.window, Box):
            raise InvalidInputError("box switching has no convergent frequency-domain form")


def _freq_integral(f, lo, panel, tail, settings):
    """Composite Gauss-Legendre of ``f`` on ``[lo, W]``, growing ``W`` panel
    block by block until ``tail(W) <= tail_rtol * |accumulated|``.

    Error estimate: difference against a half-order rule plus the tail bound.
    """
    n = settings.gl_nodes
    x, w = np.polynomial.legendre.leggauss(n)
    xh, wh = np.polynomial.legendre.leggauss(n // 2)
    block = 64
    acc, acc_lo, start = 0j, 0j, lo
    while True:
        edges = start + panel * np.arange(block + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        h = 0.5 * panel
        acc += np.sum(h * w[None, :] * f(mid[:, None] + h * x[None, :]))
        acc_lo += np.sum(h * wh[None, :] * f(mid[:, None] + h * xh[None, :]))
        start = edges[-1]
        bound = tail(start)
        if bound <= settings.tail_rtol * abs(acc):
            return complex(acc), float(abs(acc - acc_lo) + bound)
        if start > settings.omega_max:
            raise NumericError("frequency integral tail did not fall below tolerance",
                               estimate=complex(acc),
                               diagnostics={"omega_max": start, "tail_bound": bound})


def _panel(*lengths):
    return math.pi / (2.0 * max(lengths))


def emission_freq_domain(probe, settings=None):
    """``|E|^2 = (1/4 pi^2) int_0^inf w |ft(Omega + w)|^2 dw`` for an
    inertial probe; ``(value, error_estimate)``."""
    settings = settings or QuadSettings()
    _require_inertial(probe)
    win, om = probe.window, probe.gap
    C, p, w0 = win.ft_tail()
    if p < 2:
        raise InvalidInputError("window transform decays too slowly for a finite emission")

    def f(w):
        return w * win.ft(om + w) ** 2

    def tail(W):
        if om + W < w0:
            return math.inf
        return C * C / ((2 * p - 2) * (om + W) ** (2 * p - 2))

    val, err = _freq_integral(f, 0.0, _panel(win.duration), tail, settings)
    return float(val.real) / FOUR_PI2, err / FOUR_PI2


def _spatial_factor(r):
    if r == 0.0:
        return lambda w: w
    return lambda w: np.sin(w * r) / r


def exchange_vac_freq_domain(pair):
    """``<0|X_AB> = (1/4 pi^2 r) int_0^inf sin(w r) ft_A(Omega_A - w) ft_B(Omega_B + w) dw``."""
    a, b = pair.probe_a, pair.probe_b
    _require_inertial(a, b)
    r = pair.separation
    sf = _spatial_factor(r)
    oa, ob, sa, sb = a.gap, b.gap, a.t_offset, b.t_offset
    Ca, pa, wa = a.window.ft_tail()
    Cb, pb, wb = b.window.ft_tail()

    def f(w):
        val = sf(w) * a.window.ft(oa - w) * b.window.ft(ob + w)
        if sa or sb:
            val = val * np.exp(1j * ((oa - w) * sa + (ob + w) * sb))
        return val

    q0, q1 = pa + pb - 2, pa + pb - 1

    def tail(W):
        # |sin(w r)/r| <= min(w, 1/r); w <= 2 (w - Omega_A) once W >= 2 Omega_A
        if W - oa < max(wa, oa) or ob + W < wb:
            return math.inf
        b0 = 2.0 * Ca * Cb / (q0 * (W - oa) ** q0)
        return b0 if r == 0.0 else min(b0, Ca * Cb / (r * q1 * (W - oa) ** q1))

    lengths = [a.window.duration, b.window.duration] + ([r] if r else [])
    val, err = _freq_integral(f, 0.0, _panel(*lengths), tail, pair.quad)
    return val / FOUR_PI2, err / FOUR_PI2


def emission_overlap_freq_domain(pair):
    """``<E_B|E_A> = (1/4 pi^2 r) int_0^inf sin(w r) ft_A(Omega_A + w) ft_B(Omega_B + w) dw``."""
    a, b = pair.probe_a, pair.probe_b
    _require_inertial(a, b)
    r = pair.separation
    sf = _spatial_factor(r)
    oa, ob, sa, sb = a.gap, b.gap, a.t_offset, b.t_offset
    Ca, pa, wa = a.window.ft_tail()
    Cb, pb, wb = b.window.ft_tail()

    def f(w):
        val = sf(w) * a.window.ft(oa + w) * b.window.ft(ob + w)
        if sa or sb:
            val = val * np.exp(1j * ((oa + w) * sa - (ob + w) * sb))
        return val

    q0, q1 = pa + pb - 2, pa + pb - 1

    def tail(W):
        base = min(oa, ob) + W
        if base < max(wa, wb):
            return math.inf
        b0 = Ca * Cb / (q0 * base ** q0)
        return b0 if r == 0.0 else min(b0, Ca * Cb / (r * q1 * base ** q1))

    lengths = [a.window.duration, b.window.duration] + ([r] if r else [])
    val, err = _freq_integral(f, 0.0, _panel(*lengths), tail, pair.quad)
    return val / FOUR_PI2, err / FOUR_PI2


# ---------------------------------------------------------------------------
# assembly


def compute_amplitudes(pair, method="frequency"):
    """All five amplitudes for ``pair`` by the chosen route."""
    a, b = pair.probe_a, pair.probe_b
    if method == "frequency":
        ea, ea_err = emission_freq_domain(a, pair.quad)
        eb, eb_err = ea, ea_err
        if (b.window, b.gap) != (a.window, a.gap):
            eb, eb_err = emission_freq_domain(b, pair.quad)
        x0, x0_err = exchange_vac_freq_domain(pair)
        ov, ov_err = emission_overlap_freq_domain(pair)
    elif method == "time":
        ea, ea_err = emission_time_domain(a, pair.regulator, pair.quad)
        eb, eb_err = ea, ea_err
        if (b.window, b.gap, b.trajectory) != (a.window, a.gap, a.trajectory):
            eb, eb_err = emission_time_domain(b, pair.regulator, pair.quad)
        x0, x0_err = exchange_vac_time_domain(pair)
        ov, ov_err = emission_overlap_time_domain(pair)
    else:
        raise InvalidInputError(f"unknown method {method!r}")
    xn = ea * eb + abs(ov) ** 2 + abs(x0) ** 2
    xn_err = ea_err * abs(eb) + eb_err * abs(ea) + 2 * abs(ov) * ov_err + 2 * abs(x0) * x0_err
    errors = {"emission_A": ea_err, "emission_B": eb_err, "exchange_vac": x0_err,
              "emission_overlap": ov_err, "x_norm_sq": xn_err}
    return amplitude_set(ea, eb, x0, ov, xn, method, errors)


def emission_overlap(pair, method="frequency"):
    if method == "frequency":
        return emission_overlap_freq_domain(pair)
    return emission_overlap_time_domain(pair)


def x_norm_sq(amps):
    """``|X_AB|^2`` from the three Wick pairings."""
    return amps.emission_A * amps.emission_B + abs(amps.emission_overlap) ** 2 + abs(amps.exchange_vac) ** 2


def density_matrix_entries(amps):
    """The 4x4 matrix in the ``(dd, uu, du, ud)`` layout, unvalidated."""
    x0 = amps.exchange_vac
    ov = amps.emission_overlap
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = amps.x_norm_sq
    m[0, 1] = -np.conj(x0)      # -<X_AB|0>
    m[1, 0] = -x0               # -<0|X_AB>
    m[2, 2] = amps.emission_A
    m[3, 3] = amps.emission_B
    m[2, 3] = ov                # <E_B|E_A>
    m[3, 2] = np.conj(ov)
    m[0, 0] = 1.0 - amps.emission_A - amps.emission_B - amps.x_norm_sq
    return 0.5 * (m + m.conj().T)


def assemble_density(amps):
    """Reduced probe state to second order; raises
    :class:`PerturbativeRegimeError` if it is not positive."""
    m = density_matrix_entries(amps)
    lo = np.linalg.eigvalsh(m).min()
    if lo < -TOL_POS:
        raise PerturbativeRegimeError(
            f"second-order density matrix has eigenvalue {lo:.3g}; couplings too large",
            estimate=m, diagnostics={"min_eigenvalue": float(lo)})
    return DensityMatrix4(m)


def _ratio(num, den):
    if den > 0:
        return num / den
    return math.inf if num > 0 else 0.0


def conditions_report(amps, tol=TOL_EIG):
    """Both analytic non-separability conditions plus the PPT verdict."""
    r12 = _ratio(abs(amps.exchange_vac) ** 2, amps.emission_A * amps.emission_B)
    r13 = _ratio(abs(amps.emission_overlap) ** 2, amps.x_norm_sq)
    c12, c13 = r12 > 1.0, r13 > 1.0
    ppt = ppt_verdict(assemble_density(amps), tol)
    return EntanglementReport(
        ppt_min_eigenvalue=ppt.ppt_min_eigenvalue, negativity=ppt.negativity,
        entangled=ppt.entangled, ratio12=r12, cond_exchange=c12, ratio13=r13,
        cond_overlap=c13, conditions_agree=(c12 or c13) == ppt.entangled)
