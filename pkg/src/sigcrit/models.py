"""Sigmoid curve families and their exact first derivatives.

All curves are normalized to horizontal asymptotes -1 and +1.  The
generalized family is

    y(t) = -1 + 2 * [1 + k exp(-beta t)]**(-1/nu)

with the standard logistic tanh(t) recovered at (k, beta, nu) = (1, 2, 1).
Rescaling to other asymptotes is an affine wrapper left to callers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import BracketError
from .sampling import SampledSignal


@dataclass(frozen=True)
class GeneralizedLogisticParams:
    """The (k, beta, nu) triple: horizontal shift, time scale, shape."""

    k: float
    beta: float
    nu: float

    def __post_init__(self):
        for name in ("k", "beta", "nu"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite real, got {v}")


@dataclass(frozen=True)
class StandardLogistic:
    """y(t) = tanh(t), f(t) = sech^2(t)."""


@dataclass(frozen=True)
class GeneralizedLogistic:
    params: GeneralizedLogisticParams


class TabulatedSigmoid:
    """A sigmoid known only through samples of y on a uniform grid.

    Evaluation uses a natural cubic interpolant with no extrapolation.
    The samples must be nondecreasing within ``noise_tolerance`` relative to
    the total rise.
    """

    def __init__(self, signal: SampledSignal, noise_tolerance: float = 1e-9):
        if signal.is_complex:
            raise ValueError("tabulated y-values must be real")
        y = signal.values
        rise = float(y.max() - y.min())
        if rise <= 0:
            raise ValueError("tabulated y-values are constant")
        dips = np.diff(y)
        if dips.min() < -noise_tolerance * rise:
            raise ValueError(
                "tabulated y-values are not monotone nondecreasing "
                f"(worst dip {dips.min():.3g} vs rise {rise:.3g})"
            )
        self.signal = signal
        t = signal.times()
        self._span = (float(t[0]), float(t[-1]))
        self._spline = CubicSpline(t, y, bc_type="natural")
        self._dspline = self._spline.derivative()

    @property
    def span(self) -> tuple[float, float]:
        return self._span

    def interpolate(self, t):
        return self._spline(self._check_range(t))

    def slope(self, t):
        """Derivative of the interpolant (the f = y' samples feeding the pipeline)."""
        t_arr = self._check_range(t)
        return self._dspline(t_arr)

    def _check_range(self, t):
        lo, hi = self._span
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < lo) or np.any(t_arr > hi):
            raise ValueError(f"t outside tabulated span [{lo:g}, {hi:g}]")
        return t_arr


SigmoidModel = StandardLogistic | GeneralizedLogistic | TabulatedSigmoid


def _genlog_y(p: GeneralizedLogisticParams, t):
    # log1p form is stable for arbitrarily large |beta t|
    t = np.asarray(t, dtype=float)
    log_term = np.logaddexp(0.0, np.log(p.k) - p.beta * t)
    return -1.0 + 2.0 * np.exp(-log_term / p.nu)


def _genlog_logf(p: GeneralizedLogisticParams, t):
    t = np.asarray(t, dtype=float)
    q = 1.0 / p.nu + 1.0
    log_term = np.logaddexp(0.0, np.log(p.k) - p.beta * t)
    return np.log(2.0 * p.k * p.beta / p.nu) - p.beta * t - q * log_term


def eval_y(model: SigmoidModel, t):
    """Evaluate the sigmoid y(t) for an analytic model (scalar or array t)."""
    if isinstance(model, StandardLogistic):
        return np.tanh(np.asarray(t, dtype=float))
    if isinstance(model, GeneralizedLogistic):
        return _genlog_y(model.params, t)
    raise TypeError("eval_y requires an analytic model; use eval_tabulated")


def eval_f(model: SigmoidModel, t):
    """Evaluate the first derivative f(t) = y'(t) for an analytic model."""
    if isinstance(model, StandardLogistic):
        # sech^2 via exponentials; immune to cosh overflow
        a = np.abs(np.asarray(t, dtype=float))
        e = np.exp(-2.0 * a)
        return 4.0 * e / (1.0 + e) ** 2
    if isinstance(model, GeneralizedLogistic):
        return np.exp(_genlog_logf(model.params, t))
    raise TypeError("eval_f requires an analytic model")


def eval_tabulated(signal: SampledSignal, t):
    """Natural-cubic interpolation of samples; exact at grid nodes.

    Raises ValueError for queries outside the grid span (no extrapolation).
    """
    model = TabulatedSigmoid.__new__(TabulatedSigmoid)
    ts = signal.times()
    model._span = (float(ts[0]), float(ts[-1]))
    model._spline = CubicSpline(ts, signal.values, bc_type="natural")
    t_arr = model._check_range(t)
    return model._spline(t_arr)


def peak_time(model: SigmoidModel) -> float:
    """Location t_m of the maximum of f (the single zero of y'')."""
    if isinstance(model, StandardLogistic):
        return 0.0
    if isinstance(model, GeneralizedLogistic):
        p = model.params
        return float(np.log(p.k / p.nu) / p.beta)
    raise TypeError("peak_time requires an analytic model")


def inflection_points_exact(model: SigmoidModel) -> np.ndarray:
    """Landmarks [t_a, t_m, t_b]: the zero of y'' and the flanking zeros of y'''.

    t_m comes from the closed form; t_a and t_b are found by bracketed
    root-finding on the exact second derivative of f.
    """
    if isinstance(model, StandardLogistic):
        p = GeneralizedLogisticParams(1.0, 2.0, 1.0)
    elif isinstance(model, GeneralizedLogistic):
        p = model.params
    else:
        raise TypeError("inflection_points_exact requires an analytic model")

    t_m = float(np.log(p.k / p.nu) / p.beta)
    q = 1.0 / p.nu + 1.0

    def curvature_sign(t):
        # sign factor of f''(t): (q-1)^2 u^2 - (3q-2) u + 1 with u = k exp(-beta t)
        u = p.k * np.exp(-p.beta * t)
        return (q - 1.0) ** 2 * u * u - (3.0 * q - 2.0) * u + 1.0

    roots = []
    for direction in (-1.0, +1.0):
        width = 1.0 / p.beta
        for _ in range(60):
            t_far = t_m + direction * width
            if curvature_sign(t_far) > 0:
                break
            width *= 2.0
        else:
            raise BracketError(
                f"no sign change of f'' in direction {direction:+g} from t_m={t_m:g}"
            )
        lo, hi = sorted((t_m, t_far))
        roots.append(brentq(curvature_sign, lo, hi, xtol=1e-14, rtol=1e-15))
    t_a, t_b = sorted(roots)
    return np.array([t_a, t_m, t_b])


def model_from_dict(spec: dict) -> SigmoidModel:
    """Build a model from a parsed model-specification mapping."""
    family = spec.get("family", "standard")
    if family == "standard":
        return StandardLogistic()
    if family == "generalized":
        try:
            params = GeneralizedLogisticParams(
                k=float(spec["k"]), beta=float(spec["beta"]), nu=float(spec["nu"])
            )
        except KeyError as exc:
            raise ValueError(f"generalized family requires field {exc}") from exc
        return GeneralizedLogistic(params)
    if family == "tabulated":
        path = spec.get("samples_path")
        if not path:
            raise ValueError("tabulated family requires samples_path")
        return TabulatedSigmoid(_load_samples(path))
    raise ValueError(f"unknown model family {family!r}")


def model_to_dict(model: SigmoidModel) -> dict:
    if isinstance(model, StandardLogistic):
        return {"family": "standard"}
    if isinstance(model, GeneralizedLogistic):
        p = model.params
        return {"family": "generalized", "k": p.k, "beta": p.beta, "nu": p.nu}
    raise TypeError("only analytic models serialize to a parameter dict")


def load_model_spec(path) -> SigmoidModel:
    """Read a JSON model-specification file (see model_from_dict)."""
    with open(path, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    if not isinstance(spec, dict):
        raise ValueError("model specification must be a JSON object")
    if "samples_path" in spec and not Path(spec["samples_path"]).is_absolute():
        spec = dict(spec)
        spec["samples_path"] = str(Path(path).parent / spec["samples_path"])
    return model_from_dict(spec)


def _load_samples(path) -> SampledSignal:
    """Two-column CSV (t, y) with strictly increasing, uniform t."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    t, y = data[:, 0], data[:, 1]
    steps = np.diff(t)
    if len(t) < 2 or steps.min() <= 0:
        raise ValueError("sample times must be strictly increasing")
    if steps.max() - steps.min() > 1e-9 * steps.mean():
        raise ValueError("sample times must form a uniform grid")
    return SampledSignal(t0=float(t[0]), dt=float(steps.mean()), values=y)
