"""Complex special functions on the cut plane A = C \\ (-inf, 0].

The central object is ``log_gamma``, the holomorphic branch of log Gamma
normalised by log_gamma(1) = 0.  That branch (not the pointwise principal
logarithm of Gamma) is what makes ``Gamma(z)**c = exp(c*log_gamma(z))``
well defined for arbitrary real powers c > 0, which the density
evaluations in this package rely on everywhere.

Algorithm: upward recurrence pushes Re(z) to >= 10, where the Stirling
series with Binet correction converges to full double precision; the
accumulated Log terms are subtracted back.  On Re(z) > 0 this is
branch-correct by construction because log_gamma(z+1) - log_gamma(z) =
Log(z) holds exactly (no hidden 2*pi*i) on the right half-plane.  The
left part of the cut plane is reached through the reflection formula,
with the log-sin term built from a representation that is continuous
across the reflection strip, so no winding integers have to be guessed.

All operations accept complex scalars or numpy arrays of complex and are
pure functions (safe for concurrent callers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "GammaEnvelope",
    "binet_mu",
    "digamma",
    "gamma_abs_envelope",
    "gamma_pow",
    "log_gamma",
]

_LOG_2PI = math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# Upward recurrence pushes Re(z) at least this far before the Stirling
# tail is used; 15 Binet terms are then far below double roundoff.
_RE_MIN = 10.0
_N_TERMS = 15
_POLE_RADIUS = 1e-12


def _bernoulli_even(count: int) -> list[float]:
    """B_2, B_4, ..., B_{2*count} from the exact recurrence (no tables)."""
    m_max = 2 * count
    b = [Fraction(0)] * (m_max + 1)
    b[0] = Fraction(1)
    b[1] = Fraction(-1, 2)
    for m in range(2, m_max + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b[m] = -acc / (m + 1)
    return [float(b[2 * n]) for n in range(1, count + 1)]


_B2N = _bernoulli_even(_N_TERMS)
# Binet tail: mu(v) = sum_n B_{2n} / ((2n-1)(2n) v^{2n-1}).
_MU_COEF = [b / ((2 * n - 1) * (2 * n)) for n, b in enumerate(_B2N, start=1)]
# Digamma tail: psi(v) = Log v - 1/(2v) - sum_n B_{2n}/(2n) v^{-2n}.
_PSI_COEF = [b / (2 * n) for n, b in enumerate(_B2N, start=1)]


def _as_array(z) -> tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=np.complex128)
    scalar = arr.ndim == 0
    return np.atleast_1d(arr), scalar


def _check_in_cut_plane(z: np.ndarray) -> None:
    if not np.all(np.isfinite(z.real)) or not np.all(np.isfinite(z.imag)):
        raise DomainError("argument must be finite")
    on_cut = (z.imag == 0.0) & (z.real <= 0.0)
    if np.any(on_cut):
        raise DomainError("argument on the branch cut (-inf, 0]")
    n = np.rint(z.real)
    near_pole = (n <= 0.0) & (np.abs(z - n) < _POLE_RADIUS)
    if np.any(near_pole):
        raise DomainError("argument within 1e-12 of a Gamma pole")


def _mu_tail(v: np.ndarray) -> np.ndarray:
    w = 1.0 / (v * v)
    acc = np.zeros_like(v)
    for coef in reversed(_MU_COEF):
        acc = acc * w + coef
    return acc / v


def _log_gamma_right(z: np.ndarray) -> np.ndarray:
    """Holomorphic log Gamma for Re(z) >= 0.4 (vectorised)."""
    shift = int(max(0.0, math.ceil(_RE_MIN - float(np.min(z.real)))))
    acc = np.zeros_like(z)
    for j in range(shift):
        acc += np.log(z + j)
    v = z + shift
    return (v - 0.5) * np.log(v) - v + 0.5 * _LOG_2PI + _mu_tail(v) - acc


def _cexpm1(w: np.ndarray) -> np.ndarray:
    """exp(w) - 1 for complex arrays without cancellation near 0."""
    x, y = w.real, w.imag
    re = np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2
    im = np.exp(x) * np.sin(y)
    return re + 1j * im


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """A holomorphic logarithm of sin(pi*z) on C minus ((-inf,0] u [1,inf)).

    Built separately on each half-plane from the dominant exponential, in
    a form that stays bounded for large |Im z| and reduces to the real
    log(sin(pi x)) on the segment (0, 1), hence continuous across it.
    """
    out = np.empty_like(z)
    base = math.log(0.5)
    for mask, sgn in ((z.imag >= 0.0, 1.0), (z.imag < 0.0, -1.0)):
        if not np.any(mask):
            continue
        zz = z[mask]
        one_minus_q = -_cexpm1(2j * sgn * math.pi * zz)
        out[mask] = (
            base
            + sgn * 0.5j * math.pi
            - sgn * 1j * math.pi * zz
            + np.log(one_minus_q)
        )
    return out


def _log_gamma_array(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    left = z.real < 0.4
    if np.any(~left):
        out[~left] = _log_gamma_right(z[~left])
    if np.any(left):
        zl = z[left]
        out[left] = _LOG_PI - _log_sin_pi(zl) - _log_gamma_right(1.0 - zl)
    # The branch is real on (0, inf); kill stray rounding in Im there.
    real_pos = (z.imag == 0.0) & (z.real > 0.0)
    if np.any(real_pos):
        out[real_pos] = out[real_pos].real + 0.0j
    return out


def log_gamma(z):
    """Holomorphic branch of log Gamma on the cut plane, log_gamma(1) = 0.

    Continuous on A (the imaginary part is unwound, it is not the
    principal log of Gamma(z) pointwise).  Relative error is ~1e-14 for
    |z| <= 100.  Raises DomainError on the cut (-inf, 0] or within 1e-12
    of a pole.
    """
    arr, scalar = _as_array(z)
    _check_in_cut_plane(arr)
    out = _log_gamma_array(arr)
    if not np.all(np.isfinite(out)):
        raise DomainError("log_gamma produced a non-finite value")
    return complex(out[0]) if scalar else out.reshape(np.shape(z))


def gamma_pow(z, c: float):
    """Gamma(z)**c = exp(c * log_gamma(z)) for real c > 0."""
    if not (c > 0.0) or not math.isfinite(c):
        raise DomainError("power c must be a finite positive real")
    arr, scalar = _as_array(z)
    _check_in_cut_plane(arr)
    out = np.exp(c * _log_gamma_array(arr))
    if not np.all(np.isfinite(out)):
        raise DomainError("gamma_pow overflowed")
    return complex(out[0]) if scalar else out.reshape(np.shape(z))


def _cot_pi(z: np.ndarray) -> np.ndarray:
    """cot(pi*z), overflow-safe for large |Im z|."""
    out = np.empty_like(z)
    small = np.abs(z.imag) <= 6.0
    if np.any(small):
        zz = z[small]
        out[small] = np.cos(math.pi * zz) / np.sin(math.pi * zz)
    for mask, sgn in (((~small) & (z.imag > 0), 1.0), ((~small) & (z.imag < 0), -1.0)):
        if not np.any(mask):
            continue
        q = np.exp(2j * sgn * math.pi * z[mask])
        out[mask] = sgn * 1j * (q + 1.0) / (q - 1.0)
    return out


def _digamma_right(z: np.ndarray) -> np.ndarray:
    shift = int(max(0.0, math.ceil(_RE_MIN - float(np.min(z.real)))))
    acc = np.zeros_like(z)
    for j in range(shift):
        acc += 1.0 / (z + j)
    v = z + shift
    w = 1.0 / (v * v)
    tail = np.zeros_like(v)
    for coef in reversed(_PSI_COEF):
        tail = tail * w + coef
    return np.log(v) - 0.5 / v - tail * w - acc


def digamma(z):
    """Digamma Psi = Gamma'/Gamma on the cut plane."""
    arr, scalar = _as_array(z)
    _check_in_cut_plane(arr)
    out = np.empty_like(arr)
    left = arr.real < 0.4
    if np.any(~left):
        out[~left] = _digamma_right(arr[~left])
    if np.any(left):
        zl = arr[left]
        out[left] = _digamma_right(1.0 - zl) - math.pi * _cot_pi(zl)
    real_pos = (arr.imag == 0.0) & (arr.real > 0.0)
    if np.any(real_pos):
        out[real_pos] = out[real_pos].real + 0.0j
    if not np.all(np.isfinite(out)):
        raise DomainError("digamma produced a non-finite value")
    return complex(out[0]) if scalar else out.reshape(np.shape(z))


def binet_mu(z):
    """Binet's mu(z) = log_gamma(z) - (z-1/2) Log z + z - log(2 pi)/2.

    Defined for Re(z) > 0, where it satisfies |mu(r+is)| <= mu(r) <=
    1/(12 r) uniformly in s.
    """
    arr, scalar = _as_array(z)
    if np.any(arr.real <= 0.0):
        raise DomainError("binet_mu requires Re(z) > 0")
    _check_in_cut_plane(arr)
    out = _log_gamma_right(arr) - (arr - 0.5) * np.log(arr) + arr - 0.5 * _LOG_2PI
    return complex(out[0]) if scalar else out.reshape(np.shape(z))


@dataclass(frozen=True)
class GammaEnvelope:
    """Decay envelope |Gamma(u+iv)|**c <= K_c e^{-c pi |v|/2} |v|^{c(u-1/2)}
    valid for u in [0.5, 2] and |v| >= 2; used to truncate contour
    integrals of Gamma powers."""

    c: float
    prefactor: float

    def log_bound(self, u: float, v) -> np.ndarray:
        av = np.abs(v)
        return (
            math.log(self.prefactor)
            - self.c * 0.5 * math.pi * av
            + self.c * (u - 0.5) * np.log(av)
        )

    def bound(self, u: float, v) -> np.ndarray:
        return np.exp(self.log_bound(u, v))


@lru_cache(maxsize=256)
def gamma_abs_envelope(c: float) -> GammaEnvelope:
    """Empirical safe prefactor K_c for the |Gamma|^c decay envelope.

    Sampled on u in {0.5, 1, 1.5, 2}, |v| in [2, 200], then inflated by
    10%; the asymptotic ratio tends to (2 pi)^{c/2} from above on this
    range, so the sampled maximum plus slack is a safe over-estimate.
    """
    if not (c > 0.0) or not math.isfinite(c):
        raise DomainError("envelope exponent c must be positive")
    vs = np.geomspace(2.0, 200.0, 120)
    worst = -math.inf
    for u in (0.5, 1.0, 1.5, 2.0):
        lg = _log_gamma_right(u + 1j * vs)
        log_ratio = c * lg.real + c * 0.5 * math.pi * vs - c * (u - 0.5) * np.log(vs)
        worst = max(worst, float(np.max(log_ratio)))
    return GammaEnvelope(c=c, prefactor=1.1 * math.exp(worst))
