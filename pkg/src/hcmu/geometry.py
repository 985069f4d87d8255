"""Numerical realization of the character line element.

The curvature K(v) decreases from K0 to K1 along a meridian and obeys
3 K'^2 = -(K - K0)(K - K1)(K + K0 + K1).  With the substitution
K = K1 + (K0 - K1) sin^2(theta) both square-root endpoint singularities
disappear and dv/dtheta = 2 sqrt(3) / sqrt(K0 + 2 K1 + (K0 - K1) sin^2
theta), so distances come from smooth one-dimensional quadrature.  The
normalized level is s = (K0 - K)/(K0 - K1) = cos^2(theta); the warped
function is h = K'/cbar with cbar = -(K0 - K1)(2 K0 + K1)/6.

K1 = -K0/2 (ratio 0) is the cusp: the element length is infinite and
profiles stop at a configurable level just below 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import BadRatio, QuadratureFailure

_QUAD_TOL = 1e-10  # absolute tolerance per quadrature call
DEFAULT_CUSP_SMAX = 1 - 1e-6


@dataclass(frozen=True)
class CurvaturePair:
    """Extremal curvatures with K0 > 0 and -K0/2 <= K1 < K0."""

    k0: float
    k1: float

    def __post_init__(self):
        if not self.k0 > 0:
            raise BadRatio(f"K0 = {self.k0} must be positive")
        if not (-self.k0 / 2 - 1e-12 * self.k0 <= self.k1 < self.k0):
            raise BadRatio(f"K1 = {self.k1} outside [-K0/2, K0)")

    @property
    def is_cusp(self) -> bool:
        return self.k0 + 2 * self.k1 <= 1e-14 * self.k0

    @property
    def cbar(self) -> float:
        return -(self.k0 - self.k1) * (2 * self.k0 + self.k1) / 6.0


def k1_from_ratio(k0: float, ratio) -> float:
    """K1 = (2R - 1)/(2 - R) * K0."""
    r = Fraction(ratio)
    if not (0 <= r < 1):
        raise BadRatio(f"ratio {r} outside [0, 1)")
    return float(Fraction(2 * r - 1, 1) / (2 - r)) * k0


def ratio_from_pair(k0: float, k1: float) -> float:
    """R = (K0 + 2 K1)/(2 K0 + K1), the bottom/top angle ratio."""
    CurvaturePair(k0, k1)
    return (k0 + 2 * k1) / (2 * k0 + k1)


def _theta_of_s(s):
    return np.arccos(np.sqrt(s))


def _dv_dtheta(theta, k0, k1):
    return 2.0 * math.sqrt(3.0) / np.sqrt(k0 + 2 * k1 + (k0 - k1) * np.sin(theta) ** 2)


def _k_of_s(s, k0, k1):
    return k0 - s * (k0 - k1)


def _h_of_s(s, k0, k1):
    """h = |K'| / |cbar| evaluated from the curvature polynomial."""
    s = np.asarray(s, dtype=float)
    k = _k_of_s(s, k0, k1)
    prod = (k0 - k) * (k - k1) * (k + k0 + k1)
    cbar = (k0 - k1) * (2 * k0 + k1) / 6.0
    return np.sqrt(np.maximum(prod, 0.0) / 3.0) / cbar


def _quad(f, a, b):
    val, err = integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
    if err > max(_QUAD_TOL, 1e-9 * abs(val)):
        raise QuadratureFailure(f"estimated error {err} for integral on [{a}, {b}]")
    return val


def level_to_distance(k0: float, k1: float, s) -> float:
    """Meridian distance from the maximum down to normalized level s."""
    pair = CurvaturePair(k0, k1)
    s = float(s)
    if not 0 <= s < 1 or (s == 1 and pair.is_cusp):
        if not 0 <= s <= 1:
            raise BadRatio(f"level {s} outside [0, 1]")
    if s == 0:
        return 0.0
    if s == 1:
        return element_length(k0, k1)
    theta = math.acos(math.sqrt(s))
    return _quad(lambda t: _dv_dtheta(t, k0, k1), theta, math.pi / 2)


def element_length(k0: float, k1: float) -> float:
    """Total meridian length l(K0, K1); +inf exactly at the cusp pair."""
    pair = CurvaturePair(k0, k1)
    if pair.is_cusp:
        return math.inf
    return _quad(lambda t: _dv_dtheta(t, k0, k1), 0.0, math.pi / 2)


def cusp_profile_closed_form(k0: float, u) -> float:
    """Curvature along a cusp meridian: K(u) = K0 - (3 K0/2) tanh^2(sqrt(K0) u / (2 sqrt(2)))."""
    t = np.tanh(math.sqrt(k0) * np.asarray(u, dtype=float) / (2.0 * math.sqrt(2.0)))
    out = k0 - 1.5 * k0 * t * t
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class LineElementProfile:
    """Sampled (v, s, K, h) along one character line element."""

    k0: float
    k1: float
    ratio: float
    length: float
    cbar: float
    v: np.ndarray
    s: np.ndarray
    K: np.ndarray
    h: np.ndarray

    def estimated_top_slope(self) -> float:
        """h'(0) from the first interior samples.

        h is odd around v = 0, so h/v is a series in v^2; Lagrange
        extrapolation of three samples to v = 0 gives the slope.
        """
        return _odd_slope(self.v[1:4], self.h[1:4])

    def estimated_bottom_slope(self) -> float:
        """h'(l) by the mirrored extrapolation; requires a finite element."""
        if not math.isfinite(self.length):
            raise BadRatio("cusp profile has no bottom endpoint")
        x = self.length - self.v[-4:-1][::-1]
        h = self.h[-4:-1][::-1]
        return -_odd_slope(x, h)


def _odd_slope(v, h):
    """Limit of h/v at v = 0 for an odd analytic h, via extrapolation in v^2."""
    x = np.asarray(v, dtype=float) ** 2
    y = np.asarray(h, dtype=float) / np.asarray(v, dtype=float)
    total = 0.0
    for i in range(len(x)):
        li = 1.0
        for j in range(len(x)):
            if j != i:
                li *= x[j] / (x[j] - x[i])
        total += y[i] * li
    return total


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _cumulative_v(thetas, k0, k1):
    """v at each sample level by per-panel Gauss-Legendre in theta.

    ``thetas`` decreases from pi/2.  Near theta = 0 the cusp integrand grows
    like 1/theta, so panels whose endpoint ratio is large are subdivided
    geometrically; 16 nodes per subpanel then reach near machine precision.
    """
    lows, highs, owner = [], [], []
    rho = 1.25
    for i in range(len(thetas) - 1):
        b, a = thetas[i], thetas[i + 1]  # a < b
        if a <= 0 or b / a <= rho:
            cuts = [a, b]
        else:
            npan = int(math.ceil(math.log(b / a) / math.log(rho)))
            cuts = [a * (b / a) ** (j / npan) for j in range(npan + 1)]
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            lows.append(lo)
            highs.append(hi)
            owner.append(i)
    lows = np.asarray(lows)
    highs = np.asarray(highs)
    mid = 0.5 * (lows + highs)
    half = 0.5 * (highs - lows)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = _dv_dtheta(nodes, k0, k1)
    sub = half * (vals @ _GL_WEIGHTS)
    panels = np.zeros(len(thetas) - 1)
    np.add.at(panels, np.asarray(owner), sub)
    return np.concatenate([[0.0], np.cumsum(panels)])


def solve_profile(k0: float, ratio, n_samples: int, s_max=None) -> LineElementProfile:
    """Sample the line element at uniform normalized levels.

    For ratio 0 the length is +inf and sampling stops at ``s_max``
    (default 1 - 1e-6); otherwise the grid covers [0, 1] endpoint to
    endpoint.
    """
    r = Fraction(ratio)
    if not (0 <= r < 1):
        raise BadRatio(f"ratio {r} outside [0, 1)")
    if n_samples < 16:
        raise BadRatio(f"need at least 16 samples, got {n_samples}")
    k1 = k1_from_ratio(k0, r)
    pair = CurvaturePair(k0, k1)
    if pair.is_cusp:
        top = float(s_max) if s_max is not None else DEFAULT_CUSP_SMAX
        if not 0 < top < 1:
            raise BadRatio(f"s_max {top} outside (0, 1)")
        length = math.inf
    else:
        top = 1.0
        length = element_length(k0, k1)
    s = np.linspace(0.0, top, n_samples)
    thetas = _theta_of_s(s)
    v = _cumulative_v(thetas, k0, k1)
    # cross-check the panel scheme against adaptive quadrature
    ref = level_to_distance(k0, k1, float(s[-1])) if top < 1 else length
    if abs(v[-1] - ref) > max(_QUAD_TOL, 1e-9 * abs(ref)):
        raise QuadratureFailure(f"panel sum {v[-1]} vs adaptive {ref}")
    return LineElementProfile(
        k0=k0,
        k1=k1,
        ratio=float(r),
        length=length,
        cbar=pair.cbar,
        v=v,
        s=s,
        K=_k_of_s(s, k0, k1),
        h=_h_of_s(s, k0, k1),
    )


# -- areas ---------------------------------------------------------------------


def football_area(k0: float, ratio, top_angle) -> float:
    """Area of the football with top angle 2*pi*alpha: 4*pi*(2 - R)*alpha / K0."""
    r = Fraction(ratio)
    if not (0 <= r < 1):
        raise BadRatio(f"ratio {r} outside [0, 1)")
    return 4.0 * math.pi * float(top_angle) * (2 - float(r)) / k0


def warped_integral(k0: float, k1: float) -> float:
    """integral of h dv over the whole element, by quadrature in theta."""
    CurvaturePair(k0, k1)

    def f(theta):
        s = math.cos(theta) ** 2
        return float(_h_of_s(s, k0, k1)) * _dv_dtheta(theta, k0, k1)

    return _quad(f, 0.0, math.pi / 2)


def surface_area(ds) -> float:
    """Total area: each arc contributes 2*pi*W(e) * integral(h dv)."""
    k1 = k1_from_ratio(ds.k0, ds.ratio)
    base = warped_integral(ds.k0, k1)
    return 2.0 * math.pi * float(ds.total_weight()) * base
