"""The two asymptotic laws, watched converging at their stated rates.

Large t:   e_c(t) ~ (2 pi)^((c-1)/2) c^(-1/2) exp(-c t^(1/c)) t^(-(c-1)/(2c)),
           with relative defect O(t^(-1/c)).
Small t:   e_c(t) ~ (log(1/t))^(c-1) / Gamma(c),
           with relative defect O(1/log(1/t)).

Multiplying the observed defect by the predicted rate should give a
bounded column; that boundedness is the numerical witness for the error
terms.  Run:  python3 demos/02_asymptotic_regimes.py
"""

from urbanik_sf.cli import ASYMPT_COLUMNS, emit_asympt_ratio_table

print(__doc__)

print("Large-t regime: scaled residual = (ratio - 1) * t^(1/c)")
header = f"{'c':>4} {'t':>10} {'ratio':>20} {'scaled residual':>16} {'method':>9}"
print(header)
for c in (0.5, 1.5, 2.0, 3.0):
    rows = emit_asympt_ratio_table([c], [1e2, 1e3, 1e4, 1e5], mode="large")
    for row in rows:
        print(f"{row[0]:4.1f} {row[1]:10.0e} {row[4]:20.12f} {row[5]:16.6f} {row[7]:>9}")
    print()

print("Small-t regime: scaled residual = (ratio - 1) * log(1/t)")
print(header)
for c in (0.5, 1.5, 2.0, 3.0):
    rows = emit_asympt_ratio_table([c], [1e-3, 1e-5, 1e-7], mode="small")
    for row in rows:
        print(f"{row[0]:4.1f} {row[1]:10.0e} {row[4]:20.12f} {row[5]:16.6f} {row[7]:>9}")
    print()

print("Note the sign structure: for c < 1 the density approaches its")
print("small-t limit from above (the density vanishes at 0), for c > 1")
print("from below (it blows up like a power of log(1/t)).")
