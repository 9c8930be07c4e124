"""One-dimensional quadrature engines.

Two rules cover every integral in this package:

* ``trapezoid_line``: the composite trapezoid rule on a truncated
  horizontal or vertical line.  For integrands analytic in a strip
  around the line the trapezoid rule converges geometrically in 1/h, so
  step-halving both drives the error down fast and yields a free error
  estimate (the last refinement difference).

* ``tanh_sinh_halfline``: a double-exponential rule on (0, inf) for
  integrands with at worst an integrable endpoint singularity at 0,
  used for moment, convolution and Krein-type integrals.

Both engines evaluate nodes in bulk (numpy arrays) when the integrand
supports it, re-use all previously evaluated nodes when the step is
halved, and account for roundoff by carrying the absolute node sum:
the reported error estimate is refinement difference + eps * sum(h|f|)
+ an endpoint/tail allowance.  Results are deterministic for a fixed
node count (numpy pairwise summation over identically ordered arrays).

Instead of raising on a missed tolerance, the engines return the result
flagged with ``converged=False``; ``QuadResult.require_converged`` turns
the flag into a ``NoConvergence`` exception for callers that need one.
Non-finite integrand values abort with ``DomainError`` (silent node
skipping would mask contour mistakes).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .complex_gamma import gamma_abs_envelope
from .errors import DomainError, NoConvergence

__all__ = [
    "DEFAULT_SPEC",
    "LineContour",
    "QuadResult",
    "QuadSpec",
    "integrate_finite",
    "tanh_sinh_halfline",
    "trapezoid_line",
    "truncation_for_density",
]

_EPS = np.finfo(float).eps

# Hard caps for the double-exponential rule: |u| <= _DE_UMAX keeps the
# transformed abscissa exp(pi/2 sinh u) inside the double range, and the
# level cap bounds runtime on integrands that never settle.
_DE_UMAX = 6.5
_DE_MAX_LEVEL = 12
_DE_BLOCK = 8


@dataclass(frozen=True)
class QuadSpec:
    """Accuracy/budget contract for a single quadrature call."""

    target_abs_tol: float = 1e-12
    target_rel_tol: float = 1e-10
    max_nodes: int = 200_000

    def __post_init__(self):
        if not (self.target_abs_tol > 0.0 and self.target_rel_tol > 0.0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_nodes < 64:
            raise DomainError("max_nodes must be at least 64")


DEFAULT_SPEC = QuadSpec()


@dataclass(frozen=True)
class LineContour:
    """A truncated integration line.

    horizontal: z(s) = s + i*offset,  s in [-half_width, half_width]
    vertical:   z(s) = offset + i*s,  s in [-half_width, half_width]
    """

    orientation: str
    offset: float
    half_width: float
    step: float

    def __post_init__(self):
        if self.orientation not in ("horizontal", "vertical"):
            raise DomainError("orientation must be 'horizontal' or 'vertical'")
        if not math.isfinite(self.offset):
            raise DomainError("contour offset must be finite")
        if not (self.half_width > 0.0 and self.step > 0.0):
            raise DomainError("half_width and step must be positive")
        ratio = self.half_width / self.step
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio) or round(ratio) < 8:
            raise DomainError("half_width/step must be an integer >= 8")

    @property
    def base_intervals(self) -> int:
        return int(round(self.half_width / self.step))

    def points(self, s: np.ndarray) -> np.ndarray:
        if self.orientation == "horizontal":
            return s + 1j * self.offset
        return self.offset + 1j * s

    @property
    def dz_ds(self) -> complex:
        return 1.0 + 0.0j if self.orientation == "horizontal" else 1.0j


@dataclass
class QuadResult:
    """Value + error estimate + cost of one quadrature."""

    value: complex
    abs_err_estimate: float
    nodes_used: int
    converged: bool = True

    def require_converged(self) -> "QuadResult":
        if not self.converged:
            raise NoConvergence(
                f"quadrature stopped at {self.nodes_used} nodes with "
                f"error estimate {self.abs_err_estimate:.3e}",
                result=self,
            )
        return self


def _fsum_cplx(vals: np.ndarray) -> complex:
    """Correctly rounded sum of a complex array."""
    return complex(math.fsum(vals.real), math.fsum(vals.imag))


def _eval_nodes(f, pts: np.ndarray, check: bool = True) -> np.ndarray:
    """Evaluate f on an array of points, falling back to a scalar loop."""
    vals = None
    try:
        with np.errstate(all="ignore"), warnings.catch_warnings():
            warnings.simplefilter("error", DeprecationWarning)
            cand = np.asarray(f(pts), dtype=np.complex128)
        if cand.shape == pts.shape:
            vals = cand
    except (TypeError, ValueError, DeprecationWarning):
        vals = None
    if vals is None:
        with np.errstate(all="ignore"):
            vals = np.array([complex(f(p)) for p in pts], dtype=np.complex128)
    if check and not (
        np.all(np.isfinite(vals.real)) and np.all(np.isfinite(vals.imag))
    ):
        raise DomainError("integrand returned a non-finite value at a node")
    return vals


def trapezoid_line(f, contour: LineContour, spec: QuadSpec = DEFAULT_SPEC) -> QuadResult:
    """Composite trapezoid rule for the contour integral of f along a line.

    Returns the integral of f(z) dz over the truncated line (so vertical
    contours pick up the factor i).  Step-halving continues until two
    successive refinements agree within max(abs, rel*|value|) or the
    node budget is spent; the caller is responsible for f being analytic
    near the line and for half_width capturing the tails.
    """
    X = contour.half_width
    n0 = contour.base_intervals
    h0 = X / n0

    s = np.linspace(-X, X, 2 * n0 + 1)
    vals = _eval_nodes(f, contour.points(s))
    nodes = vals.size
    # Exact (fsum) accumulation: the direct density inversion runs this
    # engine at cancellation ratios up to e^25, where pairwise-sum noise
    # would dominate the result.
    S = h0 * (_fsum_cplx(vals) - 0.5 * (vals[0] + vals[-1]))
    A = h0 * (float(np.sum(np.abs(vals))) - 0.5 * (abs(vals[0]) + abs(vals[-1])))
    tail_est = (abs(vals[0]) + abs(vals[-1])) * X

    h = h0
    diff = math.inf
    converged = False
    level = 0
    while True:
        tol_eff = max(
            spec.target_abs_tol, spec.target_rel_tol * abs(S), 8.0 * _EPS * A
        )
        if level >= 2 and diff <= tol_eff:
            converged = True
            break
        n_new = int(round(2 * X / h))  # odd nodes of the next level
        if nodes + n_new > spec.max_nodes:
            break
        h *= 0.5
        s_new = -X + h + 2.0 * h * np.arange(n_new)
        new_vals = _eval_nodes(f, contour.points(s_new))
        nodes += n_new
        S_next = 0.5 * S + h * _fsum_cplx(new_vals)
        A_next = 0.5 * A + h * float(np.sum(np.abs(new_vals)))
        diff = abs(S_next - S)
        S, A = S_next, A_next
        level += 1

    err = diff if math.isfinite(diff) else 0.0
    # 16 eps * sum h|f| covers the integrand's own evaluation noise,
    # which exact summation cannot remove.
    err += 16.0 * _EPS * A + tail_est
    if tail_est > max(spec.target_abs_tol, spec.target_rel_tol * abs(S)):
        converged = False
    return QuadResult(
        value=complex(S * contour.dz_ds),
        abs_err_estimate=float(err),
        nodes_used=int(nodes),
        converged=converged,
    )


def _de_abscissa(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.exp(0.5 * math.pi * np.sinh(u))
    w = x * (0.5 * math.pi * np.cosh(u))
    return x, w


class _DESide:
    """One direction (u > 0 or u < 0) of the double-exponential sum."""

    def __init__(self, sign: float):
        self.sign = sign
        self.capped = False  # terms still mattered at the |u| cap
        self.edge = 0.0      # |u| where the level-0 scan stopped

    def scan(self, f, h: float, eta: float, budget: int):
        """Walk outward in blocks until terms stay below eta."""
        total = 0.0 + 0.0j
        atotal = 0.0
        used = 0
        k = 1
        quiet = 0
        gmax = 0.0
        outer_mag = math.inf
        while True:
            ks = k + np.arange(_DE_BLOCK)
            u = self.sign * h * ks
            inside = np.abs(u) <= _DE_UMAX
            if not inside.any():
                self.capped = outer_mag > eta
                self.edge = _DE_UMAX
                break
            u = u[inside]
            x, w = _de_abscissa(u)
            vals = _eval_nodes(f, x, check=False) * w
            finite = np.isfinite(vals.real) & np.isfinite(vals.imag)
            done = False
            if not finite.all():
                # Tolerate overflow past an already-dead tail; anything
                # non-finite in the live region is a contour mistake.
                bad = int(np.argmin(finite))
                prior = np.abs(vals[:bad])
                tail_quiet = (
                    prior.size >= 1 and float(prior[-1]) <= eta
                ) or (prior.size == 0 and outer_mag <= eta)
                if not tail_quiet:
                    raise DomainError(
                        "integrand returned a non-finite value at a node"
                    )
                vals = vals[:bad]
                u = u[:bad]
                done = True
            used += vals.size
            if vals.size:
                total += np.sum(vals)
                atotal += float(np.sum(np.abs(vals)))
                block_max = float(np.max(np.abs(vals)))
                outer_mag = float(abs(vals[-1]))
                gmax = max(gmax, block_max)
            else:
                block_max = 0.0
            if done:
                self.edge = abs(u[-1]) if u.size else (abs(ks[0]) - 1) * h
                break
            if block_max <= eta:
                quiet += 1
                if quiet >= 2:
                    self.edge = abs(u[-1])
                    break
            else:
                quiet = 0
            if not inside.all() or abs(u[-1]) >= _DE_UMAX - h:
                self.capped = outer_mag > eta
                self.edge = _DE_UMAX
                break
            if used > budget:
                self.capped = True
                self.edge = abs(u[-1])
                break
            k += _DE_BLOCK
        return total, atotal, used, gmax


def tanh_sinh_halfline(f, spec: QuadSpec = DEFAULT_SPEC) -> QuadResult:
    """Double-exponential quadrature of f over (0, inf).

    The substitution x = exp(pi/2 sinh u) compresses both the origin
    (integrable singularities allowed) and the far tail; levels double
    the node density and re-use every previous evaluation.  If the terms
    have not decayed below threshold when the transformed variable hits
    its cap, the tail was not captured and the result is flagged.
    """
    h0 = 0.5
    x0, w0 = _de_abscissa(np.array([0.0]))
    v0 = _eval_nodes(f, x0)[0] * w0[0]
    nodes = 1

    # Provisional threshold from the central term; refined after level 0.
    eta = max(spec.target_abs_tol * 1e-3, abs(v0) * _EPS * 1e-2)
    left = _DESide(-1.0)
    right = _DESide(+1.0)
    tr, ar, nr, gr = right.scan(f, h0, eta, spec.max_nodes)
    tl, al, nl, gl = left.scan(f, h0, eta, spec.max_nodes)
    nodes += nr + nl
    S = h0 * (v0 + tr + tl)
    A = h0 * (abs(v0) + ar + al)
    gmax = max(gr, gl, abs(v0))
    eta = max(
        spec.target_abs_tol * 1e-3,
        spec.target_rel_tol * abs(S) * 1e-3,
        gmax * _EPS * 1e-2,
    )

    U_left, U_right = left.edge, right.edge
    h = h0
    diff = math.inf
    converged = False
    level = 0
    edge_mag = 0.0
    while True:
        tol_eff = max(
            spec.target_abs_tol, spec.target_rel_tol * abs(S), 8.0 * _EPS * A
        )
        if level >= 2 and diff <= tol_eff:
            converged = True
            break
        if level >= _DE_MAX_LEVEL:
            break
        n_left = int(math.floor(U_left / h))
        n_right = int(math.floor(U_right / h))
        if nodes + n_left + n_right > spec.max_nodes:
            break
        h *= 0.5
        u_new = np.concatenate(
            [
                -(2.0 * np.arange(n_left) + 1.0) * h,
                (2.0 * np.arange(n_right) + 1.0) * h,
            ]
        )
        x, w = _de_abscissa(u_new)
        vals = _eval_nodes(f, x) * w
        nodes += vals.size
        left_edge = float(abs(vals[n_left - 1])) if n_left else 0.0
        right_edge = float(abs(vals[-1])) if n_right else 0.0
        edge_mag = left_edge + right_edge
        S_next = 0.5 * S + h * np.sum(vals)
        A_next = 0.5 * A + h * np.sum(np.abs(vals))
        diff = abs(S_next - S)
        S, A = S_next, A_next
        level += 1

    tail_est = 3.0 * h * (eta + edge_mag)
    if left.capped or right.capped:
        converged = False
        tail_est += gmax * h
    err = (diff if math.isfinite(diff) else 0.0) + 8.0 * _EPS * A + tail_est
    return QuadResult(
        value=complex(S),
        abs_err_estimate=float(err),
        nodes_used=int(nodes),
        converged=converged,
    )


def integrate_finite(f, a: float, b: float, spec: QuadSpec = DEFAULT_SPEC) -> QuadResult:
    """Integral of f over the finite interval (a, b), allowing an
    integrable singularity at a.

    Mapped onto the half-line engine via t = a + (b-a)(1 - e^{-y}); the
    image of (0, inf) is exactly (a, b) and the Jacobian decays like
    e^{-y}, which the double-exponential rule handles natively.
    """
    if not (b > a):
        raise DomainError("integrate_finite needs b > a")
    span = b - a

    def g(y):
        decay = np.exp(-y)
        return f(a + span * (-np.expm1(-y))) * span * decay

    return tanh_sinh_halfline(g, spec)


def truncation_for_density(c: float, t: float, tol: float) -> float:
    """Half-width X so the |x| > X tails of the density inversion
    integrand (1/2pi) t^{ix-1} Gamma(1-ix)^c contribute less than tol.

    Uses the |Gamma|^c decay envelope on the line Im(z) = 0 (so u = 1 in
    the envelope); solves pointwise-bound * X <= tol, which dominates
    the tail integral for the decay rates at play.  Clamped to X >= 4.
    """
    if not (c > 0.0 and t > 0.0 and tol > 0.0):
        raise DomainError("truncation_for_density needs c, t, tol > 0")
    env = gamma_abs_envelope(c)
    log_target = math.log(tol)
    rate = 0.5 * math.pi * c

    def log_tail(X):
        # log of (envelope at u=1) / (2 pi t) * max(X, 2/rate)
        return (
            env.log_bound(1.0, X)
            - math.log(2.0 * math.pi * t)
            + math.log(max(X, 2.0 / rate))
        )

    lo = max(4.0, 4.0 / rate)
    if log_tail(lo) <= log_target:
        return lo
    hi = lo * 2.0
    while log_tail(hi) > log_target:
        hi *= 2.0
        if hi > 1e7:
            raise DomainError("density truncation width exploded")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if log_tail(mid) > log_target:
            lo = mid
        else:
            hi = mid
    return hi
