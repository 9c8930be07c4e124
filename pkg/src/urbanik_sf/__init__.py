"""urbanik-sf: the product-convolution semigroup densities e_c(t).

A numpy-based library that evaluates the probability densities e_c(t)
on (0, inf) with moments (n!)^c by several mutually independent methods
(Fourier-Mellin inversion, a shifted saddle-point contour, asymptotic
expansions, closed forms for c = 1, 2) and numerically certifies the
family's analytic properties: the moment and Mellin identities, the
product-convolution semigroup law, complete monotonicity, negative
definiteness of -log Gamma(1-ix), Malmsten's and Hankel's integral
representations, and the Krein moment-(in)determinacy threshold at
c = 2.
"""

from .complex_gamma import (
    GammaEnvelope,
    binet_mu,
    digamma,
    gamma_abs_envelope,
    gamma_pow,
    log_gamma,
)
from .density import (
    CANCELLATION_CAP,
    DENSITY_SPEC,
    DensityEval,
    Method,
    SaddleIntegrand,
    asympt_large,
    asympt_small,
    bessel_k0,
    bessel_k0_scaled,
    density,
    density_closed,
    density_direct,
    density_shifted,
)
from .diagnostics import (
    KreinTrace,
    Report,
    check_complete_monotonicity,
    check_fourier_transform,
    check_hankel_inverse_gamma,
    check_krein_threshold,
    check_malmsten,
    check_mellin,
    check_moment,
    check_moment_matrix,
    check_negative_definite,
    check_semigroup,
    krein_integral,
    reports_to_csv,
    reports_to_json,
    run_all,
)
from .errors import (
    CancellationError,
    ConsistencyError,
    DomainError,
    NoConvergence,
    UrbanikError,
)
from .quadrature import (
    DEFAULT_SPEC,
    LineContour,
    QuadResult,
    QuadSpec,
    integrate_finite,
    tanh_sinh_halfline,
    trapezoid_line,
    truncation_for_density,
)

__version__ = "0.1.0"
