"""Moment indeterminacy and where it switches on: the Krein integral.

The sequence (n!)^c determines its measure uniquely for c <= 2 and
fails to for c > 2.  The numerical shadow of that theorem is the Krein
integral

    I = Int_0^inf log e_c(t) / (sqrt(t) (1 + t)) dt,

which is finite exactly when the moment problem is indeterminate.
Since log e_c(t) ~ -c t^(1/c), the tail integrand behaves like
t^(1/c - 3/2): integrable for c > 2, logarithmically divergent at
exactly c = 2, and power-divergent below.  Partial integrals I(T) make
that visible: per-decade increments shrink geometrically (ratio
10^(1/c - 1/2) < 1) above the threshold and persist or grow below it.

Run:  python3 demos/04_krein_threshold.py
"""

import math

from urbanik_sf import (
    check_hankel_inverse_gamma,
    check_malmsten,
    check_negative_definite,
    krein_integral,
)

print(__doc__)

print(f"{'c':>4} | " + " ".join(f"I(1e{k})".rjust(10) for k in range(2, 7))
      + f" | {'ratio':>7} {'predicted':>9}  classification")
print("-" * 95)
for c in (1.0, 1.5, 2.0, 2.5, 3.0, 4.0):
    tr = krein_integral(c)
    predicted = 10.0 ** (1.0 / c - 0.5)
    cells = " ".join(f"{p:10.3f}" for p in tr.partials)
    print(f"{c:4.1f} | {cells} | {tr.decade_ratio:7.3f} {predicted:9.3f}  {tr.classification}")

print()
print("The observed per-decade ratio matches the predicted 10^(1/c - 1/2)")
print("on both sides of c = 2, where the ratio crosses 1.")
print()

print("Supporting identities used by the analysis, certified numerically:")
r = check_malmsten(1.0 - 1.0j)
print(f"  Malmsten integral vs log_gamma at 1-i: dev {r.max_abs_dev:.2e}")
for c in (2.5, 3.0, 4.0):
    r = check_hankel_inverse_gamma(c)
    print(f"  Hankel contour vs 1/Gamma({c}): dev {r.max_abs_dev:.2e}")
r = check_negative_definite([0.0, 0.7, -1.3, 2.9, -4.1])
print(f"  negative definiteness of -log Gamma(1-ix): min eigenvalue {r.observed:.2e}")
