"""
Independence in the X1 model
============================

Orbit points are symbolic; neighbourhoods U^k(a_c) are answered from the
jump table in closed form.  Pairs of adjacent centres carry independence
sets of size k+1 at level k, while the co-induced product neighbourhood
has none of size k+2 within the truncation.
"""
import numpy as np

from coinduct.coinduction import coinduce
from coinduct.groups import CosetSpace, InfiniteDihedral, Multiples
from coinduct.independence import max_independence, refute
from coinduct.systems import Product
from coinduct.x1 import JumpTable, Nbhd, X1System, key_lemma_pool, orbit_slice

jt = JumpTable(4)
rows = np.array([jt.row(k) + (0,) * (4 - k) for k in range(1, 5)], dtype=object)
print("n_q^k table (rows k = 1..4):")
print(rows)

# where the orbit of x_{s,0} meets U^2(a_0) and U^2(a_1)
s = (0, 1, 1)
print("slice j=0:", orbit_slice(s, 0, jt), " slice j=1:", orbit_slice(s, 1, jt))

for k in (1, 2, 3):
    X = X1System(jt, k + 1)
    pool = sorted({jt.n(q, k) - b for q in range(k + 1) for b in (0, 1)})
    res = max_independence(X, [Nbhd(k, 0), Nbhd(k, 1)], pool)
    print(f"k={k}: largest independence set {res.certificate.elements} (size {res.size})")

D = InfiniteDihedral()
k, j = 1, 1
jt4 = JumpTable(k + 3)
co = coinduce(X1System(jt4, k + 3), CosetSpace(Multiples(D, 1)))
U = Product.of({(0, 0): Nbhd(k, 0), (0, 1): Nbhd(k, j)})
pool = [(ell, 0) for ell in key_lemma_pool(jt4, k, j, k + 3)]
rec = refute(co, [U], pool, k + 2, anchor=(0, 0))
print(f"size {k + 2} refuted: {rec.refuted} ({rec.scope}); "
      f"{len(rec.obstructions)} minimal obstructions, re-verified: {rec.verify(co)}")
