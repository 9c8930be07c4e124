"""Evaluation of the product-convolution semigroup densities e_c(t).

Four mutually independent routes are provided:

* ``density_direct``: Fourier-Mellin inversion on the real line,
  e_c(t) = (1/2pi) Int t^{ix-1} Gamma(1-ix)^c dx.  Exact but loses
  roughly exp(c t^{1/c}) * eps relative accuracy to cancellation, so it
  is capped at c t^{1/c} <= 25.

* ``density_shifted``: the same integral moved to the horizontal line
  through i(t^{1/c}-1) and rewritten around the saddle of the phase
  iu + (1-iu) Log(1-iu); valid for t > 1.  The exponentially small
  prefactor exp(-c t^{1/c}) is carried analytically, so there is no
  cancellation and the route reaches arbitrarily large t.

* ``asympt_large`` / ``asympt_small``: the leading asymptotic terms for
  t -> inf and t -> 0, with order-of-magnitude error estimates.

* ``density_closed``: e_1(t) = exp(-t) and e_2(t) = 2 K_0(2 sqrt(t)),
  with a self-contained modified Bessel K_0 that never touches the
  complex-gamma machinery, so it can serve as an independent oracle.

``density`` dispatches between the routes and records which one ran.
Because e_c(t) underflows double precision long before the asymptotic
regime is exhausted (already at t ~ 100 for c = 1/2), every evaluation
also carries ``log_value``; ratios of evaluations stay meaningful even
when the values themselves flush to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .complex_gamma import binet_mu, log_gamma
from .errors import CancellationError, ConsistencyError, DomainError
from .quadrature import (
    LineContour,
    QuadSpec,
    trapezoid_line,
    truncation_for_density,
)

__all__ = [
    "CANCELLATION_CAP",
    "DENSITY_SPEC",
    "DensityEval",
    "Method",
    "SaddleIntegrand",
    "asympt_large",
    "asympt_small",
    "bessel_k0",
    "bessel_k0_scaled",
    "density",
    "density_closed",
    "density_direct",
    "density_shifted",
]

_TWO_PI = 2.0 * math.pi
_LOG_2PI = math.log(_TWO_PI)
_EPS = np.finfo(float).eps
_EULER = float(np.euler_gamma)

# Direct inversion keeps >= 5 significant digits while exp(c t^{1/c})
# stays below exp(25); beyond that the shifted contour takes over.
CANCELLATION_CAP = 25.0

# Densities span hundreds of orders of magnitude, so the sane default
# accuracy contract is relative; the absolute tolerance is only an
# underflow floor.
DENSITY_SPEC = QuadSpec(target_abs_tol=1e-200, target_rel_tol=1e-10, max_nodes=200_000)

# Above this value of s = t^{1/c} the Binet correction M(u, t) is
# replaced by 1 and its bound exp(c/(12 s)) - 1 goes into the error.
_BINET_SKIP_S = 1e4


class Method(str, Enum):
    DIRECT = "direct"
    SHIFTED = "shifted"
    ASYMPT_LARGE = "asympt_large"
    ASYMPT_SMALL = "asympt_small"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class DensityEval:
    """One computed density value with provenance.

    ``log_value`` is the natural log of the (positive) density; it stays
    finite in regimes where ``value`` itself underflows to 0.
    """

    c: float
    t: float
    value: float
    abs_err_estimate: float
    method: Method
    log_value: float

    def __post_init__(self):
        if self.value < 0.0:
            raise ConsistencyError("density value must be nonnegative")


def _validate_ct(c: float, t: float) -> None:
    if not (isinstance(c, (int, float)) and math.isfinite(c) and c > 0.0):
        raise DomainError("c must be a finite positive real")
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0.0):
        raise DomainError("t must be a finite positive real")


# ---------------------------------------------------------------------------
# Modified Bessel K_0, independent of the complex-gamma machinery.

def _k0_small(x: float) -> float:
    """Ascending series, x <= 2."""
    q = 0.25 * x * x
    term = 1.0
    i0 = 1.0
    hsum = 0.0
    ksum = 0.0
    for k in range(1, 60):
        term *= q / (k * k)
        hsum += 1.0 / k
        i0 += term
        ksum += term * hsum
        if term * (hsum + 1.0) < 1e-19 * (i0 + ksum):
            break
    return -(math.log(0.5 * x) + _EULER) * i0 + ksum


def _k0e_middle(x: float) -> float:
    """exp(x) K_0(x) from the cosh integral, trapezoid with halving.

    The integrand exp(-2x sinh^2(theta/2)) is even and entire, so the
    trapezoid rule converges super-algebraically; reaches ~1e-15 for
    any x >= 2 at a few hundred nodes.
    """
    T = 2.0 * math.asinh(math.sqrt(45.0 / x)) + 0.5

    def total(n: int) -> float:
        theta = np.linspace(0.0, T, n + 1)
        g = np.exp(-2.0 * x * np.sinh(0.5 * theta) ** 2)
        return float((T / n) * (np.sum(g) - 0.5 * (g[0] + g[-1])))

    prev = total(32)
    for n in (64, 128, 256, 512, 1024, 2048):
        cur = total(n)
        if abs(cur - prev) <= 1e-15 * abs(cur):
            return cur
        prev = cur
    return prev


def _k0e_asympt(x: float) -> float:
    """exp(x) K_0(x) from the divergent asymptotic series, x >= 35."""
    s = 1.0
    term = 1.0
    for k in range(0, 40):
        term *= -((2 * k + 1) ** 2) / (8.0 * (k + 1) * x)
        s += term
        if abs(term) < 1e-19:
            break
    return math.sqrt(0.5 * math.pi / x) * s


def bessel_k0_scaled(x: float) -> float:
    """exp(x) * K_0(x) for x > 0 (no underflow for large x)."""
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError("bessel_k0 requires finite x > 0")
    if x <= 2.0:
        return math.exp(x) * _k0_small(x)
    if x < 35.0:
        return _k0e_middle(x)
    return _k0e_asympt(x)


def bessel_k0(x: float) -> float:
    """Modified Bessel function K_0(x), accurate to ~1e-13 relative."""
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError("bessel_k0 requires finite x > 0")
    if x <= 2.0:
        return _k0_small(x)
    return math.exp(-x) * bessel_k0_scaled(x)


# ---------------------------------------------------------------------------
# Closed forms for c = 1, 2.

def density_closed(c: float, t: float) -> DensityEval:
    """e_1(t) = exp(-t); e_2(t) = 2 K_0(2 sqrt(t)).  DomainError otherwise."""
    _validate_ct(c, t)
    if c == 1.0:
        lv = -t
        value = math.exp(lv)
        err = 4.0 * _EPS * value
    elif c == 2.0:
        x = 2.0 * math.sqrt(t)
        k0e = bessel_k0_scaled(x)
        lv = math.log(2.0 * k0e) - x
        value = math.exp(lv)
        err = 1e-12 * value
    else:
        raise DomainError("closed forms exist only for c = 1 and c = 2")
    return DensityEval(c, t, value, err, Method.CLOSED_FORM, lv)


# ---------------------------------------------------------------------------
# Asymptotic leading terms.

def asympt_large(c: float, t: float) -> DensityEval:
    """Leading large-t term (2pi)^{(c-1)/2} c^{-1/2} e^{-c t^{1/c}} t^{-(c-1)/(2c)}.

    The relative defect is O(t^{-1/c}); abs_err_estimate uses exactly
    that scale (order of magnitude, not a rigorous bound).
    """
    _validate_ct(c, t)
    log_s = math.log(t) / c
    cs = c * math.exp(log_s) if log_s < 700.0 else math.inf
    lv = 0.5 * (c - 1.0) * _LOG_2PI - 0.5 * math.log(c) - cs - ((c - 1.0) / (2.0 * c)) * math.log(t)
    value = math.exp(lv) if lv > -745.0 else 0.0
    err = value * math.exp(-log_s) if log_s < 700.0 else 0.0
    return DensityEval(c, t, value, err, Method.ASYMPT_LARGE, lv)


def asympt_small(c: float, t: float) -> DensityEval:
    """Leading small-t term Lambda^{c-1}/Gamma(c) with Lambda = log(1/t).

    Defined for 0 < t < 1; the neglected term is O(Lambda^{c-2}).
    """
    _validate_ct(c, t)
    if t >= 1.0:
        raise DomainError("small-t asymptotics requires 0 < t < 1")
    lam = -math.log(t)
    lv = (c - 1.0) * math.log(lam) - math.lgamma(c)
    value = math.exp(lv)
    err = lam ** (c - 2.0)
    return DensityEval(c, t, value, err, Method.ASYMPT_SMALL, lv)


# ---------------------------------------------------------------------------
# Direct inversion on the real line.

def _leading_log_scale(c: float, t: float) -> float:
    """Cheap a-priori log-scale of e_c(t) used to calibrate tolerances."""
    if t < 1.0:
        lam = -math.log(t)
        if lam < 1e-3:
            return 0.0
        return (c - 1.0) * math.log(lam) - math.lgamma(c)
    log_s = math.log(t) / c
    cs = c * math.exp(log_s) if log_s < 700.0 else math.inf
    return 0.5 * (c - 1.0) * _LOG_2PI - 0.5 * math.log(c) - cs - ((c - 1.0) / (2.0 * c)) * math.log(t)


def _direct_plan(c: float, t: float, spec: QuadSpec):
    """Truncation, base step and engine tolerance for direct inversion."""
    scale = math.exp(min(_leading_log_scale(c, t), 2.0))
    goal_abs = max(spec.target_abs_tol, 0.3 * spec.target_rel_tol * scale)
    X = truncation_for_density(c, t, 0.02 * goal_abs)
    # Step small enough to resolve the t^{ix} oscillation of frequency |log t|.
    h0 = min(0.5, _TWO_PI / (abs(math.log(t)) + math.pi))
    n0 = max(8, math.ceil(X / h0))
    return X, n0, goal_abs * _TWO_PI


def density_direct(c: float, t: float, spec: QuadSpec = DENSITY_SPEC) -> DensityEval:
    """Fourier-Mellin inversion of e_c(t) over the real line.

    Raises CancellationError when c t^{1/c} > 25, where double
    precision can no longer separate the answer from the integrand's
    oscillatory mass.  The imaginary residual of the computed integral
    (zero in exact arithmetic, by conjugate symmetry) is folded into the
    error estimate, as is an eps * sum h|f| roundoff floor.
    """
    _validate_ct(c, t)
    exp_arg = c * math.exp(math.log(t) / c) if math.log(t) / c < 700.0 else math.inf
    if exp_arg > CANCELLATION_CAP:
        raise CancellationError(
            f"direct inversion needs c*t^(1/c) <= {CANCELLATION_CAP}, got {exp_arg:.3g}"
        )
    X, n0, eng_abs = _direct_plan(c, t, spec)
    contour = LineContour("horizontal", 0.0, n0 * (X / n0), X / n0)
    log_t = math.log(t)

    def integrand(z):
        return np.exp((1j * z - 1.0) * log_t + c * log_gamma(1.0 - 1j * z))

    quad = trapezoid_line(
        integrand,
        contour,
        QuadSpec(eng_abs, 0.3 * spec.target_rel_tol, spec.max_nodes),
    )
    raw = quad.value
    value = raw.real / _TWO_PI
    err = (quad.abs_err_estimate + abs(raw.imag)) / _TWO_PI
    if value < 0.0:
        if -value <= err:
            value = 0.0
        else:
            raise ConsistencyError(
                f"direct density came out negative beyond its error bar: "
                f"{value:.3e} +- {err:.3e} at c={c}, t={t}"
            )
    lv = math.log(value) if value > 0.0 else -math.inf
    return DensityEval(c, t, value, err, Method.DIRECT, lv)


# ---------------------------------------------------------------------------
# Shifted-contour saddle form.

_PHASE_SERIES_RADIUS = 0.25
_PHASE_COEF = [
    -1j * ((-1.0) ** (k + 1)) * ((-1j) ** k) / (k * (k + 1))
    for k in range(1, 31)
]


def _phase(u: np.ndarray) -> np.ndarray:
    """f(u) = iu + (1-iu) Log(1-iu); series near 0 avoids cancellation."""
    u = np.asarray(u, dtype=np.complex128)
    w = 1.0 - 1j * u
    with np.errstate(all="ignore"):
        direct = 1j * u + w * np.log(w)
    poly = np.full_like(u, _PHASE_COEF[-1])
    for coef in reversed(_PHASE_COEF[:-1]):
        poly = poly * u + coef
    series = u * u * poly
    return np.where(np.abs(u) <= _PHASE_SERIES_RADIUS, series, direct)


@dataclass(frozen=True)
class SaddleIntegrand:
    """Integrand pieces of the shifted-contour representation at s = t^{1/c}:

    phase f(u) = iu + (1-iu) Log(1-iu)    (f(0) = f'(0) = 0, f''(0) = -1)
    amplitude g_c(u) = (1-iu)^{-c/2}
    correction M(u) = exp[c mu(s (1-iu))], |M - 1| <= exp(c/(12 s)) - 1
    """

    c: float
    s: float

    def phase(self, u) -> np.ndarray:
        return _phase(u)

    def amplitude(self, u) -> np.ndarray:
        w = 1.0 - 1j * np.asarray(u, dtype=np.complex128)
        return np.exp(-0.5 * self.c * np.log(w))

    def correction(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.complex128)
        if self.s > _BINET_SKIP_S:
            return np.ones_like(u)
        return np.exp(self.c * binet_mu(self.s * (1.0 - 1j * u)))

    def correction_skipped_bound(self) -> float:
        if self.s > _BINET_SKIP_S:
            return math.expm1(self.c / (12.0 * self.s))
        return 0.0

    def __call__(self, u) -> np.ndarray:
        return (
            np.exp(self.c * self.s * self.phase(u))
            * self.amplitude(u)
            * self.correction(u)
        )

    def phase_decay(self, x: float) -> float:
        """Re f on the real axis (monotone decreasing in |x|)."""
        return 0.5 * math.log1p(x * x) - x * math.atan(x)


def _shifted_halfwidth(integ: SaddleIntegrand, tol_abs: float) -> float:
    """X with |integrand(X)| * X below tol_abs (pointwise envelope)."""
    cs = integ.c * integ.s
    target = math.log(tol_abs)

    def log_envelope(x: float) -> float:
        return (
            cs * integ.phase_decay(x)
            - 0.25 * integ.c * math.log1p(x * x)
            + math.log(max(x, 1.0))
        )

    lo = 4.0 / math.sqrt(cs)
    while log_envelope(lo) <= target and lo > 1e-12:
        lo *= 0.5
    hi = lo * 2.0
    while log_envelope(hi) > target:
        hi *= 2.0
        if hi > 1e9:
            raise DomainError("shifted-contour truncation exploded")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if log_envelope(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def density_shifted(c: float, t: float, spec: QuadSpec = DENSITY_SPEC) -> DensityEval:
    """Saddle-form evaluation on the line through i(t^{1/c} - 1), t > 1.

    e_c(t) = (2 pi)^{c/2-1} t^{1/c-1/2} e^{-c t^{1/c}} *
             Int e^{c t^{1/c} f(u)} g_c(u) M(u, t) du.

    Re f(u) < 0 away from the saddle u = 0, so the integral is a tame
    O(sqrt(2 pi / (c t^{1/c}))) quantity and the tiny prefactor is kept
    in log space; relative accuracy is limited only by the quadrature.
    """
    _validate_ct(c, t)
    if t <= 1.0:
        raise DomainError("shifted contour requires t > 1")
    log_s = math.log(t) / c
    if log_s > 700.0:
        # s itself overflows; e_c(t) is far below the double range.
        return DensityEval(c, t, 0.0, 0.0, Method.SHIFTED, -math.inf)
    s = math.exp(log_s)
    integ = SaddleIntegrand(c=c, s=s)
    cs = c * s
    iscale = math.sqrt(_TWO_PI / cs)

    tol_abs = max(0.3 * spec.target_rel_tol * iscale, 1e-280)
    X = _shifted_halfwidth(integ, 0.1 * tol_abs)
    h0 = min(0.5, X / 16.0)
    n0 = max(16, math.ceil(X / h0))
    contour = LineContour("horizontal", 0.0, n0 * (X / n0), X / n0)
    quad = trapezoid_line(
        integ, contour, QuadSpec(tol_abs, 0.3 * spec.target_rel_tol, spec.max_nodes)
    )
    integral = quad.value.real
    if integral <= 0.0:
        raise ConsistencyError(
            f"shifted-contour integral should be positive, got {integral:.3e}"
        )
    rel_err = (
        (quad.abs_err_estimate + abs(quad.value.imag)) / integral
        + integ.correction_skipped_bound()
    )
    lv = (0.5 * c - 1.0) * _LOG_2PI + (1.0 - 0.5 * c) * log_s - cs + math.log(integral)
    value = math.exp(lv) if lv > -745.0 else 0.0
    return DensityEval(c, t, value, value * rel_err, Method.SHIFTED, lv)


# ---------------------------------------------------------------------------
# Dispatcher.

def _direct_node_estimate(c: float, t: float, spec: QuadSpec) -> int:
    _, n0, _ = _direct_plan(c, t, spec)
    return 16 * n0


def _density_impl(c: float, t: float, spec: QuadSpec) -> DensityEval:
    _validate_ct(c, t)
    log_s = math.log(t) / c
    exp_arg = c * math.exp(log_s) if log_s < 700.0 else math.inf
    if exp_arg <= CANCELLATION_CAP:
        if t < 1.0:
            # Same cancellation budget as the large-t cap: the integrand
            # mass is O(1/t) while the answer is only polylog, so below
            # t ~ e^-30 the direct route returns roundoff.
            loss = -math.log(t) - _leading_log_scale(c, t)
            if loss > CANCELLATION_CAP + 5.0:
                return asympt_small(c, t)
            if _direct_node_estimate(c, t, spec) > spec.max_nodes:
                # Oscillation frequency |log t| makes direct inversion
                # too expensive; small-t asymptotics is the designated
                # tool there.
                return asympt_small(c, t)
        return density_direct(c, t, spec)
    if t > 1.0:
        return density_shifted(c, t, spec)
    raise CancellationError(
        f"no accurate route for c={c}, t={t}: direct inversion exceeds its "
        f"cancellation budget and the shifted contour needs t > 1"
    )


@lru_cache(maxsize=400_000)
def _density_cached(c: float, t: float, spec: QuadSpec) -> DensityEval:
    return _density_impl(c, t, spec)


def density(c: float, t: float, spec: QuadSpec = DENSITY_SPEC) -> DensityEval:
    """Evaluate e_c(t), choosing the best route for the regime.

    Direct inversion while c t^{1/c} <= 25, the shifted contour for
    larger t, and the small-t asymptotic expansion only when the
    oscillation frequency |log t| would push direct inversion past the
    node budget.  The returned record names the method that actually
    ran.  Results are cached (evaluation is a pure function).
    """
    return _density_cached(float(c), float(t), spec)
