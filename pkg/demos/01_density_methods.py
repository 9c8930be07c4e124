"""Four independent ways to compute one number.

The density family e_c(t) has closed forms only at c = 1 (exponential)
and c = 2 (a modified Bessel K_0).  Everywhere else the value has to be
dug out of a contour integral, and the point of this library is that
several unrelated routes agree to many digits:

  * direct:  Fourier-Mellin inversion along the real line,
  * shifted: the same integral moved through the saddle point of its
             phase, which removes the exp(c t^(1/c)) cancellation,
  * closed:  exp(-t) and 2 K_0(2 sqrt t), with a self-contained K_0,
  * asympt:  the leading large-t / small-t terms.

Run:  python3 demos/01_density_methods.py
"""

import math

from urbanik_sf import (
    CANCELLATION_CAP,
    asympt_large,
    density,
    density_closed,
    density_direct,
    density_shifted,
)

print(__doc__)

print("Closed forms vs the dispatcher (c = 1 and c = 2)")
print(f"{'c':>4} {'t':>8} {'dispatcher':>24} {'closed form':>24} {'rel diff':>10}")
for c in (1.0, 2.0):
    for t in (0.05, 1.0, 7.0, 40.0):
        d = density(c, t)
        ref = density_closed(c, t)
        rel = abs(d.value - ref.value) / ref.value
        print(f"{c:4.1f} {t:8.2f} {d.value:24.16e} {ref.value:24.16e} {rel:10.2e}"
              f"   ({d.method.value})")

print()
print("Direct vs shifted where both are trustworthy (no closed form exists)")
print(f"{'c':>4} {'t':>6} {'direct':>24} {'shifted':>24} {'rel diff':>10}")
for c in (0.5, 1.5, 2.5, 3.0):
    for t in (2.0, 8.0):
        if c * t ** (1.0 / c) > CANCELLATION_CAP:
            print(f"{c:4.1f} {t:6.1f} {'(direct hits its cancellation cap)':>49}")
            continue
        dd = density_direct(c, t)
        ds = density_shifted(c, t)
        rel = abs(dd.value - ds.value) / ds.value
        print(f"{c:4.1f} {t:6.1f} {dd.value:24.16e} {ds.value:24.16e} {rel:10.2e}")

print()
print("Provenance and honesty: every evaluation names its method and")
print("carries an error estimate; log_value survives underflow.")
for c, t in ((1.5, 0.5), (1.5, 1e5), (0.5, 300.0), (3.0, 1e-6)):
    d = density(c, t)
    print(f"  e_{c}({t:g}) = {d.value:.6e}  +- {d.abs_err_estimate:.1e}"
          f"  log = {d.log_value:14.6f}  via {d.method.value}")

# For c = 0.5 at t = 300 the value underflows double precision entirely,
# yet the log is still good to ~10 digits: the shifted contour carries
# the exp(-c t^(1/c)) factor analytically.
d = density(0.5, 300.0)
print()
print(f"underflowed value: {d.value!r}, but log e_0.5(300) = {d.log_value:.4f}")
print(f"(leading term predicts {asympt_large(0.5, 300.0).log_value:.4f})")
