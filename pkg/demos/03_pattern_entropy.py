"""
Pattern complexity p*(n)
========================

p*(n) is the largest minimal subcover of an n-fold pulled-back join.  The
full 2-shift doubles at every step; the golden-mean shift grows more slowly
and p*(n)^(1/n) settles below 2.
"""
import numpy as np

from coinduct.entropy import cover_of, pattern_complexity
from coinduct.groups import Integers
from coinduct.systems import GOLDEN_MEAN, SFT, Cylinder, FullShift

zero, one = Cylinder.of({0: 0}), Cylinder.of({0: 1})
shift = FullShift(2, Integers())
golden = SFT(GOLDEN_MEAN)

ns = np.arange(1, 7)
p_shift = np.array([pattern_complexity(shift, cover_of(shift, [zero, one]), n, range(6)).value
                    for n in ns])
p_gold = np.array([pattern_complexity(golden, cover_of(golden, [zero, one]), n, range(-3, 4)).value
                   for n in ns])

print(" n  p*(shift)  p*(golden)  log p*/n (golden)")
for n, a, b in zip(ns, p_shift, p_gold):
    print(f"{n:2d}  {a:9d}  {b:10d}  {np.log(b) / n:.4f}")

# sub-additivity of log p*
logs = np.log(p_gold)
ok = all(logs[a + b - 1] <= logs[a - 1] + logs[b - 1] + 1e-12
         for a in ns for b in ns if a + b <= ns[-1])
print("sub-additive:", ok)
