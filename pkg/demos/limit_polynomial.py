"""
Gaussian limit of c_m for a p-th power
======================================

As d grows, c_m of a power word converges in distribution to a polynomial in
independent complex Gaussians.  Print it and compare E|P|^2 with the exact
moment at a moderate dimension.
"""

from haarwords.moments import limit_polynomial, second_moment, wedge
from haarwords.montecarlo import gaussian_limit_moment

for m in (1, 2, 3):
    print(f"m={m}:", limit_polynomial(m, 2).format())

poly = limit_polynomial(2, 2)
est = gaussian_limit_moment(poly, n=50_000, seed=3)
exact = second_moment((1, 1), wedge(2), 8)
print(f"E|P|^2 ~ {est.mean.real:.4f} +/- {est.stderr:.4f}; exact moment at d=8: {exact}")
