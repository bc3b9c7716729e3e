"""Exact arithmetic in a closed family of finitely generated groups.

Supported groups: the integers, finite cyclic groups, binary direct products
and the infinite dihedral group Z x| Z/2Z (elements ``(n, bit)``).  On top of
those we provide right-coset spaces ``H\\G`` with a fixed section, the
H-valued cocycle that drives co-induction, normal cores, and a ball search
for elements avoiding finitely many cosets.

All values are immutable and every function here is pure.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from ._order import canon_key, canon_sorted
from .errors import BudgetError, CoinductError, InfiniteIndexError

INF = math.inf


class Group:
    """Common interface; concrete groups are frozen dataclasses."""

    is_finite = False

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def generators(self):
        """Tuple of ``(label, element)`` pairs in declared order."""
        raise NotImplementedError

    def is_element(self, g) -> bool:
        raise NotImplementedError

    def word_length(self, g) -> int:
        raise NotImplementedError

    def order(self):
        return INF

    def prod(self, *gs):
        out = self.identity
        for g in gs:
            out = self.mul(out, g)
        return out

    def sort_key(self, g):
        return (self.word_length(g), canon_key(g))

    def sorted(self, gs):
        return sorted(gs, key=self.sort_key)

    def ball(self, radius: int):
        return ball(self, radius)

    def elements(self):
        raise CoinductError(f"{self} is infinite")


@dataclass(frozen=True)
class Integers(Group):
    def __str__(self):
        return "Z"

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    @property
    def generators(self):
        return (("1", 1),)

    def is_element(self, g):
        return isinstance(g, int) and not isinstance(g, bool)

    def word_length(self, g):
        return abs(g)

    def sort_key(self, g):
        return (abs(g), g < 0)


@dataclass(frozen=True)
class CyclicGroup(Group):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise CoinductError("cyclic group order must be >= 1")

    def __str__(self):
        return f"Z/{self.n}Z"

    @property
    def is_finite(self):
        return True

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n

    @property
    def generators(self):
        return (("1", 1 % self.n),)

    def is_element(self, g):
        return isinstance(g, int) and 0 <= g < self.n

    def word_length(self, g):
        return min(g, self.n - g)

    def order(self):
        return self.n

    def elements(self):
        return list(range(self.n))


@dataclass(frozen=True)
class DirectProduct(Group):
    left: Group
    right: Group

    def __str__(self):
        return f"({self.left} x {self.right})"

    @property
    def is_finite(self):
        return self.left.is_finite and self.right.is_finite

    @property
    def identity(self):
        return (self.left.identity, self.right.identity)

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def inv(self, a):
        return (self.left.inv(a[0]), self.right.inv(a[1]))

    @property
    def generators(self):
        el, er = self.left.identity, self.right.identity
        gens = [(f"L{lab}", (g, er)) for lab, g in self.left.generators]
        gens += [(f"R{lab}", (el, g)) for lab, g in self.right.generators]
        return tuple(gens)

    def is_element(self, g):
        return (isinstance(g, tuple) and len(g) == 2
                and self.left.is_element(g[0]) and self.right.is_element(g[1]))

    def word_length(self, g):
        return self.left.word_length(g[0]) + self.right.word_length(g[1])

    def order(self):
        return self.left.order() * self.right.order()

    def elements(self):
        return [(a, b) for a in self.left.elements() for b in self.right.elements()]


@dataclass(frozen=True)
class InfiniteDihedral(Group):
    """Z x| Z/2Z where the nontrivial element of Z/2Z acts by n -> -n.

    ``(n, a)(m, b) = (n + (-1)^a m, a + b mod 2)``.
    """

    def __str__(self):
        return "Z x| Z/2Z"

    @property
    def identity(self):
        return (0, 0)

    def mul(self, a, b):
        n, x = a
        m, y = b
        return (n - m if x else n + m, (x + y) & 1)

    def inv(self, a):
        n, x = a
        return (n, 1) if x else (-n, 0)

    @property
    def generators(self):
        return (("t", (1, 0)), ("x", (0, 1)))

    def is_element(self, g):
        return (isinstance(g, tuple) and len(g) == 2 and isinstance(g[0], int)
                and g[1] in (0, 1))

    def word_length(self, g):
        return abs(g[0]) + g[1]


@lru_cache(maxsize=256)
def ball(group: Group, radius: int):
    """Elements of word length <= radius, in shortlex (BFS) order.

    Words are extended on the right by the generators and their inverses,
    taken in declared generator order.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    letters = []
    for _, g in group.generators:
        for t in (g, group.inv(g)):
            if t not in letters and t != group.identity:
                letters.append(t)
    e = group.identity
    seen = {e}
    order = [e]
    frontier = [e]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for t in letters:
                x = group.mul(w, t)
                if x not in seen:
                    seen.add(x)
                    order.append(x)
                    nxt.append(x)
        if not nxt:
            break
        frontier = nxt
    return tuple(order)


# --------------------------------------------------------------------------
# Subgroups

class Subgroup:
    """A subgroup with a membership oracle and canonical coset ids.

    ``model`` is the group over which base systems for this subgroup are
    written (e.g. Z for Z x {0}); ``to_model`` maps subgroup elements into
    it.  ``model is None`` means only the identity is ever transported.
    """

    parent: Group

    def contains(self, g) -> bool:
        raise NotImplementedError

    def coset_of(self, g):
        """Canonical id of the right coset ``H g``."""
        raise NotImplementedError

    def canonical_rep(self, theta):
        raise NotImplementedError

    @property
    def index(self):
        raise NotImplementedError

    def cosets(self):
        raise InfiniteIndexError("infinite index: cosets cannot be listed")

    @property
    def generators(self):
        return ()

    @property
    def model(self):
        return None

    def to_model(self, h):
        return h

    @property
    def is_normal(self):
        return False


@dataclass(frozen=True)
class WholeSubgroup(Subgroup):
    parent: Group

    def __str__(self):
        return f"{self.parent}"

    def contains(self, g):
        return True

    def coset_of(self, g):
        return 0

    def canonical_rep(self, theta):
        return self.parent.identity

    @property
    def index(self):
        return 1

    def cosets(self):
        return [0]

    @property
    def generators(self):
        return tuple(g for _, g in self.parent.generators)

    @property
    def model(self):
        return self.parent

    @property
    def is_normal(self):
        return True


@dataclass(frozen=True)
class TrivialSubgroup(Subgroup):
    parent: Group

    def __str__(self):
        return "{e}"

    def contains(self, g):
        return g == self.parent.identity

    def coset_of(self, g):
        return g

    def canonical_rep(self, theta):
        return theta

    @property
    def index(self):
        return self.parent.order()

    def cosets(self):
        return self.parent.elements()

    def to_model(self, h):
        return None

    @property
    def is_normal(self):
        return True


@dataclass(frozen=True)
class Multiples(Subgroup):
    """kZ in Z, kZ/nZ in Z/nZ (k | n), or kZ x {0} in the dihedral group."""

    parent: Group
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise CoinductError("multiples(k) needs k >= 1; use the trivial subgroup for k = 0")
        if isinstance(self.parent, CyclicGroup) and self.parent.n % self.k:
            raise CoinductError(f"{self.k} does not divide {self.parent.n}")
        if not isinstance(self.parent, (Integers, CyclicGroup, InfiniteDihedral)):
            raise CoinductError(f"multiples() is not defined in {self.parent}")

    def __str__(self):
        if isinstance(self.parent, InfiniteDihedral):
            return f"{self.k}Z x {{0}}"
        return f"{self.k}Z"

    @property
    def _dihedral(self):
        return isinstance(self.parent, InfiniteDihedral)

    def contains(self, g):
        if self._dihedral:
            return g[1] == 0 and g[0] % self.k == 0
        return g % self.k == 0

    def coset_of(self, g):
        if self._dihedral:
            return (g[0] % self.k, g[1])
        return g % self.k

    def canonical_rep(self, theta):
        return theta

    @property
    def index(self):
        return 2 * self.k if self._dihedral else self.k

    def cosets(self):
        if self._dihedral:
            return [(r, a) for a in (0, 1) for r in range(self.k)]
        return list(range(self.k))

    @property
    def generators(self):
        return ((self.k, 0),) if self._dihedral else (self.k % self.parent.order() if self.parent.is_finite else self.k,)

    @property
    def model(self):
        return Integers() if self._dihedral else self.parent

    def to_model(self, h):
        return h[0] if self._dihedral else h

    @property
    def is_normal(self):
        return True


@dataclass(frozen=True)
class ProductSubgroup(Subgroup):
    parent: DirectProduct
    left: Subgroup
    right: Subgroup

    def __str__(self):
        return f"({self.left} x {self.right})"

    def contains(self, g):
        return self.left.contains(g[0]) and self.right.contains(g[1])

    def coset_of(self, g):
        return (self.left.coset_of(g[0]), self.right.coset_of(g[1]))

    def canonical_rep(self, theta):
        return (self.left.canonical_rep(theta[0]), self.right.canonical_rep(theta[1]))

    @property
    def index(self):
        return self.left.index * self.right.index

    def cosets(self):
        return [(a, b) for a in self.left.cosets() for b in self.right.cosets()]

    @property
    def generators(self):
        el, er = self.parent.left.identity, self.parent.right.identity
        return (tuple((g, er) for g in self.left.generators)
                + tuple((el, g) for g in self.right.generators))

    @property
    def model(self):
        ml, mr = self.left.model, self.right.model
        if ml is None:
            return mr
        if mr is None:
            return ml
        return DirectProduct(ml, mr)

    def to_model(self, h):
        ml, mr = self.left.model, self.right.model
        if ml is None and mr is None:
            return None
        if ml is None:
            return self.right.to_model(h[1])
        if mr is None:
            return self.left.to_model(h[0])
        return (self.left.to_model(h[0]), self.right.to_model(h[1]))

    @property
    def is_normal(self):
        return self.left.is_normal and self.right.is_normal


def z_factor(group: Group) -> Subgroup:
    """The Z x {0} subgroup of the dihedral group or of Z x Z."""
    if isinstance(group, InfiniteDihedral):
        return Multiples(group, 1)
    if isinstance(group, DirectProduct):
        return ProductSubgroup(group, WholeSubgroup(group.left), TrivialSubgroup(group.right))
    raise CoinductError(f"Z_factor is not defined in {group}")


# --------------------------------------------------------------------------
# Coset spaces

class CosetSpace:
    """Right cosets ``H\\G`` with a section ``s`` satisfying ``s(H) = e``.

    ``section`` optionally overrides the canonical representatives; it is a
    mapping or callable from coset id to group element.
    """

    def __init__(self, subgroup: Subgroup, section=None):
        self.subgroup = subgroup
        self.group = subgroup.parent
        self._override = section
        e = self.group.identity
        if self.section(self.coset_of(e)) != e:
            raise CoinductError("section must send H to the identity")

    def __repr__(self):
        return f"CosetSpace({self.subgroup} in {self.group})"

    @property
    def index(self):
        return self.subgroup.index

    @property
    def identity_coset(self):
        return self.coset_of(self.group.identity)

    def coset_of(self, g):
        return self.subgroup.coset_of(g)

    def section(self, theta):
        ov = self._override
        if ov is None:
            return self.subgroup.canonical_rep(theta)
        rep = ov(theta) if callable(ov) else ov.get(theta)
        if rep is None:
            return self.subgroup.canonical_rep(theta)
        if self.coset_of(rep) != theta:
            raise CoinductError(f"section value {rep!r} is not in coset {theta!r}")
        return rep

    def cosets(self):
        return canon_sorted(self.subgroup.cosets())

    def act(self, theta, g):
        """The right action ``theta -> theta g``."""
        return self.coset_of(self.group.mul(self.section(theta), g))

    def decompose(self, g):
        return decompose(g, self)

    def cocycle(self, theta, g0):
        return cocycle(theta, g0, self)


def decompose(g, cs: CosetSpace):
    """Split ``g = h s(theta)`` with ``h`` in H; returns ``(h, theta)``."""
    G = cs.group
    theta = cs.coset_of(g)
    h = G.mul(g, G.inv(cs.section(theta)))
    return h, theta


def cocycle(theta, g0, cs: CosetSpace):
    """Return ``(s(theta) g0 s(theta g0)^-1, theta g0)``."""
    G = cs.group
    st = cs.section(theta)
    moved = G.mul(st, g0)
    theta2 = cs.coset_of(moved)
    return G.mul(moved, G.inv(cs.section(theta2))), theta2


def coset_partition(F, cs: CosetSpace):
    """Split a finite set ``F`` into ``{theta: F s(theta)^-1 ∩ H}``.

    Blocks are keyed in canonical coset order; members are sorted.
    """
    G = cs.group
    blocks = {}
    for g in F:
        h, theta = decompose(g, cs)
        blocks.setdefault(theta, set()).add(h)
    return {theta: G.sorted(blocks[theta]) for theta in canon_sorted(blocks)}


def acts_centrally(cs: CosetSpace, radius: int = 6) -> bool:
    """Check ``cocycle(theta, h) = (h, theta)`` for h in H ∩ ball(radius).

    This is the coset-level form of ``H ⊆ Z(G)``: elements of H then act on
    every coordinate of a co-induced system by themselves.  Requires finite
    index.
    """
    H = cs.subgroup
    for h in ball(cs.group, radius):
        if not H.contains(h):
            continue
        for theta in cs.cosets():
            if cocycle(theta, h, cs) != (h, theta):
                return False
    return True


# --------------------------------------------------------------------------
# Normal core

@dataclass(frozen=True, eq=False)
class CoreSubgroup(Subgroup):
    """Kernel of the permutation action of G on a finite coset space."""

    cs: CosetSpace
    _cosets: tuple = field(repr=False)
    _reps: dict = field(repr=False)

    @property
    def parent(self):
        return self.cs.group

    def __str__(self):
        return f"core({self.cs.subgroup})"

    def perm(self, g):
        pos = {t: i for i, t in enumerate(self._cosets)}
        return tuple(pos[self.cs.act(t, g)] for t in self._cosets)

    def contains(self, g):
        return all(self.cs.act(t, g) == t for t in self._cosets)

    def coset_of(self, g):
        return self.perm(g)

    def canonical_rep(self, theta):
        return self._reps[theta]

    @property
    def index(self):
        return len(self._reps)

    def cosets(self):
        return list(self._reps)

    @property
    def model(self):
        return self.cs.subgroup.model

    def to_model(self, h):
        return self.cs.subgroup.to_model(h)

    @property
    def is_normal(self):
        return True


def _compose(p, q):
    # right action: apply p then q
    return tuple(q[i] for i in p)


def normal_core(cs: CosetSpace, max_radius: int = 64) -> CoreSubgroup:
    """Largest normal subgroup of G inside H, for finite index."""
    r = cs.index
    if r == INF:
        raise InfiniteIndexError("normal_core needs a finite-index subgroup")
    cosets = tuple(cs.cosets())
    pos = {t: i for i, t in enumerate(cosets)}

    def perm(g):
        return tuple(pos[cs.act(t, g)] for t in cosets)

    G = cs.group
    gen_perms = [perm(g) for _, g in G.generators]
    ident = tuple(range(len(cosets)))
    image = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gen_perms:
                c = _compose(p, q)
                if c not in image:
                    image.add(c)
                    nxt.append(c)
        frontier = nxt
    if math.factorial(r) % len(image):
        raise CoinductError("permutation image order does not divide r!")  # pragma: no cover
    reps = {}
    for radius in itertools.count():
        for g in ball(G, radius):
            reps.setdefault(perm(g), g)
        if len(reps) == len(image) or radius >= max_radius:
            break
    if len(reps) != len(image):
        raise BudgetError("could not find representatives for every core coset")
    ordered = {p: reps[p] for p in sorted(reps)}
    # the identity permutation sorts first and is represented by e
    return CoreSubgroup(cs, cosets, ordered)


# --------------------------------------------------------------------------
# Infinite index: elements avoiding finitely many cosets

def neumann_witness(exclusions, cs: CosetSpace, budget: int):
    """First element of ``ball(budget)`` outside every ``a^-1 H b g``.

    ``exclusions`` is a list of ``(a, b, g)`` triples.  Membership of ``x``
    in ``a^-1 H b g`` is tested as ``a x g^-1 b^-1 ∈ H``.  For infinite
    index such an element always exists somewhere; a too-small ball raises
    :class:`BudgetError`.
    """
    if cs.index != INF:
        raise CoinductError("neumann_witness requires an infinite-index subgroup")
    G = cs.group
    H = cs.subgroup
    tests = [(a, G.mul(G.inv(g), G.inv(b))) for a, b, g in exclusions]
    for x in ball(G, budget):
        if not any(H.contains(G.mul(G.mul(a, x), tail)) for a, tail in tests):
            return x
    raise BudgetError(f"no element outside the excluded cosets within word length {budget}")


def excluded_by(x, exclusions, cs: CosetSpace) -> bool:
    G = cs.group
    return any(cs.subgroup.contains(G.prod(a, x, G.inv(g), G.inv(b)))
               for a, b, g in exclusions)
