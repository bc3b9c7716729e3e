"""Group actions presented by a region basis and an exact emptiness oracle.

A query is a finite set of pairs ``(g, R)``; a point ``x`` satisfies it when
``alpha_g(x)`` lies in ``R`` for every pair.  ``emptiness`` returns a finite
witness for a satisfying point, or ``None`` when no point exists.

Actions are left actions.  For shift systems ``alpha_g(x)(h) = x(h g)``, so
the pair ``(g, {c: v})`` pins coordinate ``c g`` to ``v``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._order import canon_key, canon_sorted
from .errors import BudgetError, CoinductError, UnknownRegionError
from .groups import Group, Integers

ATOM_LIMIT = 1 << 16


# --------------------------------------------------------------------------
# Regions

class Region:
    pass


@dataclass(frozen=True)
class Whole(Region):
    def __repr__(self):
        return "whole"


@dataclass(frozen=True)
class Cylinder(Region):
    """Finite pattern: ``items`` is a sorted tuple of (coordinate, symbol)."""

    items: tuple

    @classmethod
    def of(cls, mapping):
        items = mapping.items() if isinstance(mapping, dict) else mapping
        seen = {}
        for c, v in items:
            if seen.setdefault(c, v) != v:
                raise CoinductError(f"cylinder assigns two symbols to {c!r}")
        return cls(tuple((c, seen[c]) for c in canon_sorted(seen)))

    def __repr__(self):
        return "cyl{" + ", ".join(f"{c!r}: {v}" for c, v in self.items) + "}"


@dataclass(frozen=True)
class PointSet(Region):
    points: frozenset

    @classmethod
    def of(cls, pts):
        return cls(frozenset(pts))

    def __repr__(self):
        return "pts{" + ", ".join(str(p) for p in sorted(self.points)) + "}"


@dataclass(frozen=True)
class Product(Region):
    """Finitely supported product; ``parts`` is sorted ``(key, region)``."""

    parts: tuple

    @classmethod
    def of(cls, mapping):
        items = mapping.items() if isinstance(mapping, dict) else mapping
        d = dict(items)
        return cls(tuple((k, d[k]) for k in canon_sorted(d)))

    def get(self, key, default=None):
        for k, r in self.parts:
            if k == key:
                return r
        return default

    def __repr__(self):
        return "prod{" + ", ".join(f"{k!r}: {r!r}" for k, r in self.parts) + "}"


@dataclass(frozen=True)
class Pre(Region):
    """``{y : alpha_h(y) in region}``."""

    h: object
    region: Region

    def __repr__(self):
        return f"pre({self.h!r}, {self.region!r})"


def region_key(r):
    return repr(r)


# --------------------------------------------------------------------------
# Witnesses

class Witness:
    pass


@dataclass(frozen=True)
class Pattern(Witness):
    items: tuple  # sorted (coordinate, symbol)

    def as_dict(self):
        return dict(self.items)


@dataclass(frozen=True)
class FinitePoint(Witness):
    id: int


@dataclass(frozen=True)
class ProductPoint(Witness):
    parts: tuple  # one witness (or None = unconstrained) per component


@dataclass(frozen=True)
class CoinducedPoint(Witness):
    items: tuple  # sorted (coset, base witness); missing cosets unconstrained

    def get(self, theta):
        for t, w in self.items:
            if t == theta:
                return w
        return None


# --------------------------------------------------------------------------
# Queries

def make_query(pairs):
    """Canonical query: deduplicated pairs in a fixed order."""
    uniq = {(g, r) for g, r in pairs}
    return tuple(sorted(uniq, key=lambda p: (canon_key(p[0]), region_key(p[1]))))


class SystemModel:
    """Base class.  Subclasses implement ``_solve`` and ``_holds``."""

    group: Group
    scope = "exact"

    def __init__(self):
        self._memo = {}

    # -- normalisation
    def normalize(self, q):
        G = self.group
        out = []
        for g, r in q:
            while isinstance(r, Pre):
                g = G.mul(r.h, g)
                r = r.region
            if isinstance(r, Whole):
                continue
            self.check_region(r)
            out.append((g, r))
        return make_query(out)

    def check_region(self, r):
        raise NotImplementedError

    # -- oracle
    def emptiness(self, q):
        """A witness satisfying every pair of ``q``, or ``None``."""
        nq = self.normalize(q)
        try:
            return self._memo[nq]
        except KeyError:
            pass
        w = self._solve(nq)
        self._memo[nq] = w
        return w

    def is_empty(self, q) -> bool:
        return self.emptiness(q) is None

    def _solve(self, q):
        raise NotImplementedError

    def replay(self, w, q) -> bool:
        """Independently re-check that ``w`` satisfies every pair of ``q``."""
        return self._holds(w, self.normalize(q))

    def _holds(self, w, q):
        raise NotImplementedError

    def act(self, g, w):
        """Witness for ``alpha_g(x)`` given a witness for ``x``."""
        raise NotImplementedError

    def atoms(self, queries):
        """Finite partition refining every query.

        Returns ``(count, sets)`` where ``sets[i]`` is the set of atom ids
        inside ``queries[i]``.  Regions of these systems depend on finitely
        many coordinates, so covers of the space by the given queries are
        exactly covers of the atom set.
        """
        raise CoinductError(f"{type(self).__name__} does not support atom enumeration")

    def describe(self):
        return type(self).__name__


def _check_cylinder(r, m, coord_ok):
    if not isinstance(r, Cylinder):
        raise UnknownRegionError(f"{r!r} is not a cylinder")
    for c, v in r.items:
        if not (isinstance(v, int) and 0 <= v < m):
            raise UnknownRegionError(f"symbol {v!r} outside alphabet of size {m}")
        if not coord_ok(c):
            raise UnknownRegionError(f"coordinate {c!r} is not a group element")


def _pin(q, G):
    """Absolute coordinate -> symbol map, or None on a clash."""
    pinned = {}
    for g, r in q:
        for c, v in r.items:
            h = G.mul(c, g)
            if pinned.setdefault(h, v) != v:
                return None
    return pinned


def _shift_pattern(w, g, G):
    gi = G.inv(g)
    return Pattern(tuple(sorted(((G.mul(c, gi), v) for c, v in w.items),
                                key=lambda cv: canon_key(cv[0]))))


class FullShift(SystemModel):
    def __init__(self, m: int, group: Group):
        super().__init__()
        if m < 1:
            raise CoinductError("alphabet size must be >= 1")
        self.m = m
        self.group = group

    def describe(self):
        return f"full_shift({self.m}, {self.group})"

    def check_region(self, r):
        _check_cylinder(r, self.m, self.group.is_element)

    def _solve(self, q):
        pinned = _pin(q, self.group)
        if pinned is None:
            return None
        return Pattern(tuple((c, pinned[c]) for c in canon_sorted(pinned)))

    def _holds(self, w, q):
        if not isinstance(w, Pattern):
            return False
        pat = w.as_dict()
        if any(not (0 <= v < self.m) for v in pat.values()):
            return False
        G = self.group
        return all(pat.get(G.mul(c, g)) == v for g, r in q for c, v in r.items)

    def act(self, g, w):
        return _shift_pattern(w, g, self.group)

    def atoms(self, queries):
        G = self.group
        window = canon_sorted({G.mul(c, g) for q in queries for g, r in self.normalize(q)
                               for c, _ in r.items})
        count = self.m ** len(window)
        if count > ATOM_LIMIT:
            raise BudgetError(f"{count} patterns exceed the atom limit")
        pos = {c: i for i, c in enumerate(window)}
        words = list(itertools.product(range(self.m), repeat=len(window)))
        sets = []
        for q in queries:
            pinned = _pin(self.normalize(q), G)
            if pinned is None:
                sets.append(frozenset())
                continue
            idx = [(pos[c], v) for c, v in pinned.items()]
            sets.append(frozenset(n for n, w in enumerate(words)
                                  if all(w[i] == v for i, v in idx)))
        return count, sets


class SFT(SystemModel):
    """One-dimensional subshift of finite type given by a 0/1 transition matrix."""

    def __init__(self, adjacency):
        super().__init__()
        A = np.asarray(adjacency, dtype=bool)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
            raise CoinductError("adjacency must be a nonempty square matrix")
        self.A = A
        self.m = A.shape[0]
        self.group = Integers()
        ess = np.ones(self.m, dtype=bool)
        while True:
            has_succ = (A[:, ess].any(axis=1)) & ess
            has_pred = (A[ess, :].any(axis=0)) & ess
            nxt = has_succ & has_pred
            if (nxt == ess).all():
                break
            ess = nxt
        if not ess.any():
            raise CoinductError("transition matrix admits no bi-infinite path")
        self.essential = ess
        self._Ae = A & ess[None, :] & ess[:, None]

    def describe(self):
        return "sft(" + str(self.A.astype(int).tolist()) + ")"

    def check_region(self, r):
        _check_cylinder(r, self.m, Integers().is_element)

    def _solve(self, q):
        pinned = _pin(q, self.group)
        if pinned is None:
            return None
        if not pinned:
            return Pattern(())
        lo, hi = min(pinned), max(pinned)
        width = hi - lo + 1
        allowed = np.tile(self.essential, (width, 1))
        for c, v in pinned.items():
            row = np.zeros(self.m, dtype=bool)
            if self.essential[v]:
                row[v] = True
            allowed[c - lo] = row
        # backward reachability, then greedy smallest-symbol completion
        back = np.zeros_like(allowed)
        back[-1] = allowed[-1]
        for i in range(width - 2, -1, -1):
            back[i] = allowed[i] & self._Ae[:, back[i + 1]].any(axis=1)
            if not back[i].any():
                return None
        if not back[0].any():
            return None
        word = [int(np.flatnonzero(back[0])[0])]
        for i in range(1, width):
            opts = back[i] & self._Ae[word[-1]]
            word.append(int(np.flatnonzero(opts)[0]))
        return Pattern(tuple((lo + i, s) for i, s in enumerate(word)))

    def _holds(self, w, q):
        if not isinstance(w, Pattern):
            return False
        pat = w.as_dict()
        if pat:
            lo, hi = min(pat), max(pat)
            if set(pat) != set(range(lo, hi + 1)):
                return False
            for i in range(lo, hi + 1):
                if not (0 <= pat[i] < self.m and self.essential[pat[i]]):
                    return False
                if i < hi and not self.A[pat[i], pat[i + 1]]:
                    return False
        return all(pat.get(c + g) == v for g, r in q for c, v in r.items)

    def act(self, g, w):
        return Pattern(tuple((c - g, v) for c, v in w.items))

    def atoms(self, queries):
        pins = []
        for q in queries:
            pins.append(_pin(self.normalize(q), self.group))
        window = sorted({c for p in pins if p for c in p})
        if not window:
            return 1, [frozenset([0]) if p is not None else frozenset() for p in pins]
        lo, hi = window[0], window[-1]
        pos = {c: i for i, c in enumerate(window)}
        # states: (projection so far, last symbol)
        ess = [int(s) for s in np.flatnonzero(self.essential)]
        layer = {((s,) if lo in pos else (), s) for s in ess}
        for c in range(lo + 1, hi + 1):
            nxt = set()
            for proj, last in layer:
                for s in np.flatnonzero(self._Ae[last]):
                    s = int(s)
                    nxt.add((proj + (s,) if c in pos else proj, s))
            layer = nxt
            if len(layer) > ATOM_LIMIT:
                raise BudgetError("SFT atom enumeration exceeded the limit")
        words = sorted({proj for proj, _ in layer})
        sets = []
        for p in pins:
            if p is None:
                sets.append(frozenset())
                continue
            idx = [(pos[c], v) for c, v in p.items()]
            sets.append(frozenset(n for n, w in enumerate(words)
                                  if all(w[i] == v for i, v in idx)))
        return len(words), sets


def sft_Z(adjacency):
    return SFT(adjacency)


GOLDEN_MEAN = ((1, 1), (1, 0))


class TrivialFinite(SystemModel):
    """``n`` points, every group element acting as the identity."""

    def __init__(self, n: int, group: Group):
        super().__init__()
        if n < 1:
            raise CoinductError("need at least one point")
        self.n = n
        self.group = group

    def describe(self):
        return f"trivial_finite({self.n}, {self.group})"

    def check_region(self, r):
        if not isinstance(r, PointSet):
            raise UnknownRegionError(f"{r!r} is not a point set")
        if any(not (isinstance(p, int) and 0 <= p < self.n) for p in r.points):
            raise UnknownRegionError(f"{r!r} names points outside 0..{self.n - 1}")

    def _solve(self, q):
        pts = set(range(self.n))
        for _, r in q:
            pts &= r.points
        return FinitePoint(min(pts)) if pts else None

    def _holds(self, w, q):
        return (isinstance(w, FinitePoint) and 0 <= w.id < self.n
                and all(w.id in r.points for _, r in q))

    def act(self, g, w):
        return w

    def atoms(self, queries):
        sets = []
        for q in queries:
            pts = set(range(self.n))
            for _, r in self.normalize(q):
                pts &= r.points
            sets.append(frozenset(pts))
        return self.n, sets


def trivial_finite(n, group):
    return TrivialFinite(n, group)


def full_shift(m, group):
    return FullShift(m, group)


def _product_atoms(parts_queries, component_atoms):
    """Combine per-component atom data into product atoms.

    ``component_atoms[i]`` is ``(count, sets)`` for component i; the product
    atom set of query j is the product of its component sets.
    """
    counts = [c for c, _ in component_atoms]
    total = 1
    for c in counts:
        total *= c
    if total > ATOM_LIMIT:
        raise BudgetError(f"{total} product atoms exceed the atom limit")
    sets = []
    for j in range(parts_queries):
        factors = [sorted(s[j]) for _, s in component_atoms]
        ids = set()
        for combo in itertools.product(*factors):
            n = 0
            for c, x in zip(counts, combo):
                n = n * c + x
            ids.add(n)
        sets.append(frozenset(ids))
    return total, sets


class ProductSystem(SystemModel):
    """Diagonal action on ``X^k``; regions are ``Product`` keyed by 0..k-1."""

    def __init__(self, base: SystemModel, k: int):
        super().__init__()
        if k < 1:
            raise CoinductError("k must be >= 1")
        self.base = base
        self.k = k
        self.group = base.group

    @property
    def scope(self):
        return self.base.scope

    def describe(self):
        return f"product_system({self.base.describe()}, {self.k})"

    def check_region(self, r):
        if not isinstance(r, Product):
            raise UnknownRegionError(f"{r!r} is not a product region")
        for key, sub in r.parts:
            if not (isinstance(key, int) and 0 <= key < self.k):
                raise UnknownRegionError(f"component {key!r} outside 0..{self.k - 1}")

    def split(self, q):
        comps = [[] for _ in range(self.k)]
        for g, r in q:
            for key, sub in r.parts:
                comps[key].append((g, sub))
        return comps

    def _solve(self, q):
        parts = []
        for cq in self.split(q):
            if not cq:
                parts.append(None)
                continue
            w = self.base.emptiness(cq)
            if w is None:
                return None
            parts.append(w)
        return ProductPoint(tuple(parts))

    def _holds(self, w, q):
        if not isinstance(w, ProductPoint) or len(w.parts) != self.k:
            return False
        for cw, cq in zip(w.parts, self.split(q)):
            if cq and (cw is None or not self.base.replay(cw, cq)):
                return False
        return True

    def act(self, g, w):
        return ProductPoint(tuple(None if p is None else self.base.act(g, p) for p in w.parts))

    def atoms(self, queries):
        split = [self.split(self.normalize(q)) for q in queries]
        comp = [self.base.atoms([s[i] for s in split]) for i in range(self.k)]
        return _product_atoms(len(queries), comp)


def product_system(base, k):
    return ProductSystem(base, k)
