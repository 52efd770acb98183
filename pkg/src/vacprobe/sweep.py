"""Parameter sweeps, CSV output and run manifests.

A sweep is described by a flat JSON-compatible mapping::

    {"scenario": "figure1",
     "grid": {"omega": [2, 16, 141]},
     "fixed": {"L": 1.0, "T": 1.0},
     "numeric": {"method": "frequency"}}

Grid entries are ``[min, max, steps]`` (linearly spaced) or
``{"values": [...]}``.  Rows come out in row-major order over the grid
parameters in the order they are listed.
"""
from __future__ import annotations

import copy
import csv
import hashlib
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import __version__
from .amplitudes import (QuadSettings, compute_amplitudes, conditions_report, default_tau_max,
                         hyperbolic_pair, inertial_pair)
from .correlators import DEFAULT_LADDER, Regulator
from .errors import InvalidInputError, NumericError, VacprobeError
from .qubit_pair import TOL_EIG, chsh_max, ppt_verdict, werner_state
from .windows import CosineSquared, Gaussian

SCENARIOS = ("figure1", "figure2", "accelerated", "werner", "custom")

CSV_HEADER = ("scenario,omega,L,T,emission_A,emission_B,exchange_abs,exchange_phase,overlap_abs,"
              "x_norm_sq,ratio12,ratio13,ppt_min_eig,negativity,entangled,err_max")
WERNER_HEADER = "scenario,x,ppt_min_eig,negativity,entangled,chsh_max"

MAX_FAILED_FRACTION = 0.10

DEFAULT_SPECS = {
    "figure1": {"grid": {"omega": [2.0, 16.0, 141]}, "fixed": {"L": 1.0, "T": 1.0}},
    "figure2": {"grid": {"L": [0.6, 2.0, 141]}, "fixed": {"omega": 9.5, "T": 1.0}},
    "accelerated": {"grid": {"omega": {"values": [0.5, 1.0, 2.0]}, "L": {"values": [0.5, 1.0, 2.0]}},
                    "fixed": {}},
    "werner": {"grid": {"x": [0.0, 1.0, 101]}, "fixed": {}},
}

_INERTIAL_PARAMS = {"omega", "L", "T", "amplitude", "sigma"}
_ACCEL_PARAMS = {"omega", "L", "tau_max", "amplitude"}


class SweepFailed(NumericError):
    """More than the allowed fraction of rows failed."""

    def __init__(self, message, rows, manifest):
        super().__init__(message, diagnostics={"failures": manifest["failures"]})
        self.rows = rows
        self.manifest = manifest


@dataclass(frozen=True)
class SweepRow:
    scenario: str
    omega: float
    L: float
    T: float
    emission_A: float
    emission_B: float
    exchange_abs: float
    exchange_phase: float
    overlap_abs: float
    x_norm_sq: float
    ratio12: float
    ratio13: float
    ppt_min_eig: float
    negativity: float
    entangled: int
    err_max: float


@dataclass(frozen=True)
class WernerRow:
    scenario: str
    x: float
    ppt_min_eig: float
    negativity: float
    entangled: int
    chsh_max: float


@dataclass
class SweepSpec:
    scenario: str
    grid: dict
    fixed: dict
    out: str | None = None
    numeric: dict | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise InvalidInputError(f"unknown scenario {self.scenario!r}")
        self.numeric = dict(self.numeric or {})
        self.fixed = dict(self.fixed or {})
        self.grid = {k: _normalise_axis(k, v) for k, v in (self.grid or {}).items()}
        if not self.grid:
            raise InvalidInputError("a sweep needs at least one grid parameter")
        clash = set(self.grid) & set(self.fixed)
        if clash:
            raise InvalidInputError(f"parameters both swept and fixed: {sorted(clash)}")
        allowed = self._allowed()
        unknown = (set(self.grid) | set(self.fixed)) - allowed
        if unknown:
            raise InvalidInputError(f"unknown parameters for {self.scenario}: {sorted(unknown)}")

    def _allowed(self):
        if self.scenario == "werner":
            return {"x"}
        if self.scenario == "accelerated":
            return _ACCEL_PARAMS
        if self.scenario == "custom":
            kind = self.fixed.get("trajectory", "inertial")
            return (_ACCEL_PARAMS if kind == "hyperbolic" else _INERTIAL_PARAMS) | {"trajectory", "window"}
        return _INERTIAL_PARAMS

    @classmethod
    def default(cls, scenario, **overrides):
        base = copy.deepcopy(DEFAULT_SPECS[scenario])
        base.update(overrides)
        return cls(scenario=scenario, **base)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        try:
            scenario = d.pop("scenario")
        except KeyError:
            raise InvalidInputError("config needs a 'scenario' key") from None
        known = {"grid", "fixed", "out", "numeric"}
        extra = set(d) - known
        if extra:
            raise InvalidInputError(f"unknown config keys: {sorted(extra)}")
        if scenario in DEFAULT_SPECS:
            base = copy.deepcopy(DEFAULT_SPECS[scenario])
            base.update({k: v for k, v in d.items() if v is not None})
            d = base
        return cls(scenario=scenario, **d)

    @classmethod
    def from_json(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        return {"scenario": self.scenario, "grid": {k: list(v) for k, v in self.grid.items()},
                "fixed": self.fixed, "numeric": self.numeric}

    def points(self):
        names = list(self.grid)
        for combo in itertools.product(*(self.grid[n] for n in names)):
            p = dict(self.fixed)
            p.update(zip(names, combo))
            yield p

    @property
    def size(self):
        return math.prod(len(v) for v in self.grid.values())


def _normalise_axis(name, spec):
    if isinstance(spec, dict):
        if "values" in spec:
            vals = [float(v) for v in spec["values"]]
            if not vals:
                raise InvalidInputError(f"grid {name!r} has no values")
            return tuple(vals)
        spec = [spec.get("min"), spec.get("max"), spec.get("steps")]
    if isinstance(spec, (list, tuple)) and len(spec) == 3 and not isinstance(spec[0], (list, dict)):
        lo, hi, steps = float(spec[0]), float(spec[1]), int(spec[2])
        if steps < 2:
            raise InvalidInputError(f"grid {name!r} needs at least 2 steps")
        if not lo < hi:
            raise InvalidInputError(f"grid {name!r} needs min < max")
        return tuple(float(v) for v in np.linspace(lo, hi, steps))
    if isinstance(spec, tuple) and spec:  # already normalised
        return tuple(float(v) for v in spec)
    raise InvalidInputError(f"cannot read grid entry for {name!r}: {spec!r}")


def numeric_settings(numeric, scenario="custom"):
    """Resolved numeric settings from an override mapping; everything that
    can change a number in the output."""
    n = numeric or {}
    q = QuadSettings(epsrel=float(n.get("tol", QuadSettings.epsrel)),
                     tail_rtol=float(n.get("tail_rtol", QuadSettings.tail_rtol)),
                     limit=int(n.get("limit", QuadSettings.limit)),
                     omega_max=float(n.get("omega_max", QuadSettings.omega_max)))
    ladder = tuple(float(e) for e in n.get("eps_ladder", DEFAULT_LADDER))
    default_method = "time" if scenario == "accelerated" else "frequency"
    method = n.get("method", default_method)
    if method not in ("frequency", "time"):
        raise InvalidInputError(f"unknown method {method!r}")
    return {"quad": q, "eps_ladder": ladder, "method": method, "tol_eig": float(n.get("tol_eig", TOL_EIG))}


def _manifest_numeric(ns, spec):
    q = asdict(ns["quad"])
    out = {"quad": q, "eps_ladder": list(ns["eps_ladder"]), "method": ns["method"],
           "tol_eig": ns["tol_eig"],
           "eps_scale": "min(window duration, hyperbolic L)",
           "max_failed_fraction": MAX_FAILED_FRACTION}
    if spec.scenario in ("accelerated",) or spec.fixed.get("trajectory") == "hyperbolic":
        out["tau_max_rule"] = "max(6/omega, 3L)"
        out["default_amplitude"] = 1e-2
        out["switching"] = "box, extensive part"
    return out


def _build_pair(scenario, p, ns):
    hyper = scenario == "accelerated" or p.get("trajectory") == "hyperbolic"
    quad = ns["quad"]
    if hyper:
        omega, L = float(p["omega"]), float(p["L"])
        tau_max = float(p.get("tau_max", default_tau_max(omega, L)))
        pair = hyperbolic_pair(omega, L, tau_max, float(p.get("amplitude", 1e-2)), quad)
        T = 2.0 * tau_max
    else:
        omega, L, T = float(p["omega"]), float(p.get("L", 1.0)), float(p.get("T", 1.0))
        amp = float(p.get("amplitude", 1.0))
        if p.get("window", "cos2") == "gaussian":
            window = Gaussian(float(p.get("sigma", T / 5.0)), amp)
        else:
            window = CosineSquared(T, amp)
        pair = inertial_pair(omega, L, window, quad)
    reg = Regulator(ns["eps_ladder"], pair.regulator.scale)
    from dataclasses import replace
    return replace(pair, regulator=reg), omega, L, T


def compute_row(scenario, p, ns):
    """One field-simulation row for parameters ``p``."""
    pair, omega, L, T = _build_pair(scenario, p, ns)
    method = ns["method"]
    if not isinstance(pair.probe_a.trajectory, type(pair.probe_b.trajectory)) or \
            type(pair.probe_a.trajectory).__name__ == "Hyperbolic":
        method = "time"
    amps = compute_amplitudes(pair, method)
    rep = conditions_report(amps, ns["tol_eig"])
    x0 = amps.exchange_vac
    return SweepRow(scenario=scenario, omega=omega, L=L, T=T,
                    emission_A=amps.emission_A, emission_B=amps.emission_B,
                    exchange_abs=abs(x0), exchange_phase=math.atan2(x0.imag, x0.real),
                    overlap_abs=abs(amps.emission_overlap), x_norm_sq=amps.x_norm_sq,
                    ratio12=rep.ratio12, ratio13=rep.ratio13,
                    ppt_min_eig=rep.ppt_min_eigenvalue, negativity=rep.negativity,
                    entangled=int(rep.entangled), err_max=amps.err_max), amps, rep


def werner_row(x, tol_eig=TOL_EIG):
    rho = werner_state(x)
    v = ppt_verdict(rho, tol_eig)
    return WernerRow("werner", float(x), v.ppt_min_eigenvalue, v.negativity, int(v.entangled), chsh_max(rho))


def _failed_row(scenario, p):
    nan = math.nan
    if scenario == "werner":
        return WernerRow(scenario, float(p["x"]), nan, nan, 0, nan)
    return SweepRow(scenario, float(p.get("omega", nan)), float(p.get("L", nan)), float(p.get("T", nan)),
                    nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, 0, nan)


def _threads():
    env = os.environ.get("VACPROBE_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def config_hash(spec):
    blob = json.dumps(spec.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def run_sweep(spec):
    """Evaluate every grid point of ``spec``.

    Returns ``(rows, manifest)``.  Rows that fail numerically are kept (as
    NaN rows) and listed in ``manifest["failures"]``; if more than 10 % fail
    :class:`SweepFailed` is raised.
    """
    ns = numeric_settings(spec.numeric, spec.scenario)
    points = list(spec.points())

    def work(p):
        try:
            if spec.scenario == "werner":
                return werner_row(p["x"], ns["tol_eig"]), None
            return compute_row(spec.scenario, p, ns)[0], None
        except VacprobeError as exc:
            return _failed_row(spec.scenario, p), f"{type(exc).__name__}: {exc}"

    n_threads = _threads()
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(work, points))
    else:
        results = [work(p) for p in points]
    rows = [r for r, _ in results]
    failures = [{"index": i, "params": points[i], "error": e} for i, (_, e) in enumerate(results) if e]
    manifest = {
        "package": "vacprobe",
        "version": __version__,
        "scenario": spec.scenario,
        "config": spec.to_dict(),
        "config_hash": config_hash(spec),
        "numeric": _manifest_numeric(ns, spec),
        "rows": len(rows),
        "failures": failures,
    }
    if len(failures) > MAX_FAILED_FRACTION * len(rows):
        raise SweepFailed(f"{len(failures)} of {len(rows)} rows failed", rows, manifest)
    return rows, manifest


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def csv_text(rows):
    if not rows:
        raise InvalidInputError("no rows to write")
    header = WERNER_HEADER if isinstance(rows[0], WernerRow) else CSV_HEADER
    names = header.split(",")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for r in rows:
        w.writerow([_fmt(getattr(r, n)) for n in names])
    return buf.getvalue()


def emit_csv(rows, path):
    """Write ``rows`` as UTF-8 CSV; returns the SHA-256 of the bytes."""
    data = csv_text(rows).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(data)
    return hashlib.sha256(data).hexdigest()


def manifest_path(csv_path):
    root, _ = os.path.splitext(str(csv_path))
    return root + ".manifest.json"


def write_manifest(manifest, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(manifest), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def row_to_json(row, config):
    d = {f.name: getattr(row, f.name) for f in fields(row)}
    d["entangled"] = bool(d["entangled"])
    d["config"] = config
    return _jsonable(d)


def crossings(xs, ys, level=1.0):
    """Linear-interpolated abscissae where ``ys`` crosses ``level``;
    returns a list of ``(x, direction)`` with direction +1 upward."""
    out = []
    for (x0, y0), (x1, y1) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
        if (y0 - level) * (y1 - level) < 0:
            x = x0 + (level - y0) * (x1 - x0) / (y1 - y0)
            out.append((x, 1 if y1 > y0 else -1))
    return out
