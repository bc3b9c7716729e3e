"""
Infinite index: everything is independent
=========================================

Co-inducing a two-point trivial system from Z x {0} to Z x Z gives a
Bernoulli-like system.  Elements avoiding finitely many cosets keep the
supports of translated regions apart, so any tuple of disjoint regions is
independent along the resulting stream.
"""
from coinduct.coinduction import coinduce
from coinduct.entropy import weak_mixing_witness
from coinduct.groups import (CosetSpace, DirectProduct, Integers, ProductSubgroup,
                             TrivialSubgroup, WholeSubgroup, ball)
from coinduct.independence import it_stream, it_witness_stream
from coinduct.systems import PointSet, Product, TrivialFinite

Z = Integers()
G = DirectProduct(Z, Z)
cs = CosetSpace(ProductSubgroup(G, WholeSubgroup(Z), TrivialSubgroup(Z)))
co = coinduce(TrivialFinite(2, Z), cs)

A = Product.of({(0, 0): PointSet.of({0}), (0, 1): PointSet.of({1})})
B = Product.of({(0, 0): PointSet.of({1})})
C = Product.of({(0, 0): PointSet.of({0}), (0, 1): PointSet.of({0})})

print("stream:", it_stream(co, [A, B], 6))
for n in range(1, 7):
    cert = it_witness_stream(co, [A, B], n)
    print(f"n={n}: {2 ** n} assignments, certificate verified: {cert.verify(co)}")

cert = it_witness_stream(co, [A, B, C], 4)
print("triple, size 4:", cert.ok, cert.verify(co))

a, b = PointSet.of({0}), PointSet.of({1})
g = weak_mixing_witness(co, Product.of({(0, 0): a}), Product.of({(0, 0): b}),
                        Product.of({(0, 0): b}), Product.of({(0, 0): a}), ball(G, 4))
print("weak-mixing witness:", g)
