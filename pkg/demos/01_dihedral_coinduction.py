"""
Co-inducing a shift from Z to the infinite dihedral group
=========================================================

The subgroup Z x {0} has two right cosets in Z x| Z/2Z, so the co-induced
space is a pair of configurations.  Translations move the two coordinates in
opposite directions and reflections swap them.
"""
from coinduct.coinduction import DihedralPairSystem, coinduce
from coinduct.groups import CosetSpace, InfiniteDihedral, Integers, ball, cocycle, z_factor
from coinduct.systems import Cylinder, FullShift, Product

D = InfiniteDihedral()
cs = CosetSpace(z_factor(D))
print("cosets:", cs.cosets(), "index", cs.index)

# the cocycle tells which element of H acts on which coordinate
for g in [(3, 0), (3, 1)]:
    for theta in cs.cosets():
        h, moved = cocycle(theta, g, cs)
        print(f"g={g}  coset {theta} -> {moved}  twisted by {h}")

base = FullShift(2, Integers())
co = coinduce(base, cs)

# a cylinder on each coordinate; (g, R) asks that alpha_g(f) lands in R
R = Product.of({(0, 0): Cylinder.of({0: 1}), (0, 1): Cylinder.of({0: 0})})
q = [((0, 0), R), ((2, 1), R)]
w = co.emptiness(q)
print("witness:", w)
print("replays:", co.replay(w, q))

# the generic construction agrees with the hand-written pair action
pair = DihedralPairSystem(base)
agree = sum(co.is_empty([(g, R), (h, R)]) == pair.is_empty([(g, R), (h, R)])
            for g in ball(D, 3) for h in ball(D, 3))
print("agreements on", len(ball(D, 3)) ** 2, "two-step queries:", agree)
