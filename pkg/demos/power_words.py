"""
Moments of power words
======================

For w = x^l the second moments stabilise once d is large relative to m*l.
Below that point the exact values drift away from the closed form.
"""

import math

from haarwords.moments import power_word_report, second_moment, wedge

l, m = 3, 2
print(f"E|c_{m}(X^{l})|^2 as d grows (closed form {math.comb(l + m - 1, m)}):")
for d in range(2, 2 * m * l + 2):
    print(f"  d={d:2d}  {second_moment((1,) * l, wedge(m), d)}")

# the report flags whether d is in the stable range
for rep in ("wedge:2", "sym:2", "lambda:[2,1]"):
    r = power_word_report(2, rep, 12)
    print(f"{rep:13s} exact {r.exact}, closed form {r.closed_form}, stable range: {r.hypothesis}")
