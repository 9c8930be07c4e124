"""The defining algebra of the family: moments and product convolution.

The densities e_c are characterised by Int t^n e_c(t) dt = (n!)^c
together with the product-convolution law

    Int e_c(t/x) e_d(x) dx/x = e_{c+d}(t),

i.e. the law of a product X * Y of independent carriers.  Both are
integral identities a quadrature can test to high accuracy against
values computed by completely different contours.

Run:  python3 demos/03_moments_and_semigroup.py
"""

import math

from urbanik_sf import check_mellin, check_moment, check_moment_matrix, check_semigroup

print(__doc__)

print("Moments vs (n!)^c")
print(f"{'c':>5} {'n':>3} {'quadrature':>22} {'(n!)^c':>22} {'rel dev':>10}")
for c in (0.5, 1.0, 2.0, 3.0):
    for n in (0, 2, 4):
        r = check_moment(c, n)
        print(f"{c:5.1f} {n:3d} {r.observed:22.14e} {r.expected:22.14e} {r.max_abs_dev:10.2e}")
print()

print("The same identity off the integers (Mellin transform)")
for c, z in ((2.0, 0.5), (0.5, 1.5), (1.0, -0.5)):
    r = check_mellin(c, z)
    print(f"  c={c}, z={z}: {r.observed:.14e} vs Gamma(1+z)^c = {r.expected:.14e}"
          f"  (dev {r.max_abs_dev:.1e})")
print()

print("Product convolution: numerically convolving e_c and e_d lands on")
print("e_{c+d}, including fractional orders with no closed form anywhere.")
print(f"{'c':>5} {'d':>5} {'t':>5} {'convolution':>20} {'e_c+d(t)':>20} {'rel dev':>10}")
for c, d, t in ((1.0, 1.0, 1.0), (0.75, 0.75, 2.0), (1.0, 0.5, 5.0), (0.6, 1.1, 0.5)):
    r = check_semigroup(c, d, t)
    print(f"{c:5.2f} {d:5.2f} {t:5.1f} {r.observed[0]:20.12e} {r.expected:20.12e}"
          f" {r.max_abs_dev:10.2e}")
print()

print("Moment-sequence positivity (Stieltjes witness): the Hankel matrix")
print("[(i+j)!^c] must be positive definite; its smallest eigenvalue is")
for c in (0.5, 1.0, 2.0):
    r = check_moment_matrix(c)
    print(f"  c={c}: lambda_min = {r.observed:.6e}  ({'PD' if r.passed else 'NOT PD'})")
