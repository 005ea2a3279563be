"""
The Engel word, two ways
========================

The first moment of tr wedge^m [[X,Y],Y] computed by the general trace-product
engine and by the dedicated coordinate enumeration, then checked by sampling.
"""

from haarwords import ENGEL, first_moment, wedge
from haarwords.engel import count_Z, engel_direct, z_bound
from haarwords.montecarlo import empirical_moment
from haarwords.words import format_word

print("word:", format_word(ENGEL))

# both pipelines are exact, so they must agree to the last digit
for d in (2, 3, 4):
    general = first_moment(ENGEL, wedge(1), d)
    direct = engel_direct(1, d)
    print(f"d={d}: engine {general}, enumeration {direct}")

# size of the index set next to its a priori bound
for d in (2, 3, 4):
    print(f"|Z| at m=1, d={d}: {count_Z(1, d)} (bound {z_bound(1, d)})")

# c_1 = -tr, so the sample mean should sit near the negated exact value
est = empirical_moment(ENGEL, "cm:1", 3, n=20_000, seed=1)
print(f"E c_1 at d=3: exact {-first_moment(ENGEL, wedge(1), 3)}, "
      f"sampled {est.mean.real:.4f} +/- {est.stderr:.4f}")
