"""Co-induced actions on products over H\\G.

With section ``s`` and cocycle ``c(theta, g) = s(theta) g s(theta g)^-1`` the
G-action on ``prod_theta X`` is::

    alpha_g(f)(theta) = alpha_{c(theta, g)} f(theta g)

A constraint ``(g, prod_theta V_theta)`` therefore splits into the base
constraints ``(c(theta, g), V_theta)`` on coordinate ``theta g``.  Only the
finitely many touched cosets are ever materialised, so this is exact for
infinite index too.
"""
from __future__ import annotations

from ._order import canon_key, canon_sorted
from .errors import GroupMismatchError, UnknownRegionError
from .groups import CosetSpace, InfiniteDihedral, Integers, Multiples, cocycle
from .systems import (CoinducedPoint, Pre, Product, SystemModel, Whole,
                      _product_atoms, make_query)


def _base_element(cs: CosetSpace, base: SystemModel, h):
    if cs.subgroup.model is None:
        return base.group.identity
    return cs.subgroup.to_model(h)


def translate_query(q, cs: CosetSpace, base: SystemModel):
    """Split a G-query into per-coset base queries ``{phi: query over H}``."""
    out = {}
    for g0, r in q:
        if isinstance(r, Whole):
            continue
        if not isinstance(r, Product):
            raise UnknownRegionError(f"{r!r} is not a product over cosets")
        for theta, v in r.parts:
            h, phi = cocycle(theta, g0, cs)
            out.setdefault(phi, []).append((_base_element(cs, base, h), v))
    return {phi: make_query(out[phi]) for phi in canon_sorted(out)}


class CoinducedSystem(SystemModel):
    def __init__(self, base: SystemModel, cs: CosetSpace):
        super().__init__()
        model = cs.subgroup.model
        if model is not None and model != base.group:
            raise GroupMismatchError(
                f"base system acts by {base.group}, subgroup {cs.subgroup} needs {model}")
        self.base = base
        self.cs = cs
        self.group = cs.group

    @property
    def scope(self):
        return self.base.scope

    def describe(self):
        return f"coinduce({self.base.describe()}, {self.cs.subgroup}, {self.group})"

    def check_region(self, r):
        if not isinstance(r, Product):
            raise UnknownRegionError(f"{r!r} is not a product over cosets")
        for theta, _ in r.parts:
            try:
                rep = self.cs.section(theta)
            except Exception as exc:
                raise UnknownRegionError(f"{theta!r} is not a coset id") from exc
            if self.cs.coset_of(rep) != theta:
                raise UnknownRegionError(f"{theta!r} is not a canonical coset id")

    def decompose(self, q):
        return translate_query(q, self.cs, self.base)

    def _solve(self, q):
        parts = []
        for phi, bq in self.decompose(q).items():
            w = self.base.emptiness(bq)
            if w is None:
                return None
            parts.append((phi, w))
        return CoinducedPoint(tuple(parts))

    def _holds(self, w, q):
        if not isinstance(w, CoinducedPoint):
            return False
        for phi, bq in self.decompose(q).items():
            bw = w.get(phi)
            if bq and (bw is None or not self.base.replay(bw, bq)):
                return False
        return True

    def act(self, g0, w):
        # alpha_g0(f)(theta) = alpha_{c(theta,g0)} f(theta g0)
        G = self.group
        gi = G.inv(g0)
        out = []
        for phi, bw in w.items:
            theta = self.cs.act(phi, gi)
            h, phi2 = cocycle(theta, g0, self.cs)
            assert phi2 == phi
            out.append((theta, self.base.act(_base_element(self.cs, self.base, h), bw)))
        return CoinducedPoint(tuple(sorted(out, key=lambda tw: canon_key(tw[0]))))

    def atoms(self, queries):
        decs = [self.decompose(self.normalize(q)) for q in queries]
        coords = canon_sorted({phi for d in decs for phi in d})
        comp = [self.base.atoms([d.get(phi, ()) for d in decs]) for phi in coords]
        return _product_atoms(len(queries), comp)

    def project(self, w, theta):
        """Base witness sitting at coordinate ``theta`` (None when free)."""
        return w.get(theta)


def coinduce(base: SystemModel, cs: CosetSpace) -> CoinducedSystem:
    return CoinducedSystem(base, cs)


class DihedralPairSystem(SystemModel):
    """Hand-written action of Z x| Z/2Z on X x X for a Z-system X.

    Coordinates are the coset ids ``(0, 0)`` (the subgroup Z x {0}) and
    ``(0, 1)``.  ``(n, 0)`` moves the first coordinate by n and the second
    by -n; ``(n, 1)`` additionally swaps them.
    """

    H0, H1 = (0, 0), (0, 1)

    def __init__(self, base: SystemModel):
        super().__init__()
        if base.group != Integers():
            raise GroupMismatchError("dihedral_pair needs a Z-system")
        self.base = base
        self.group = InfiniteDihedral()
        self.cs = CosetSpace(Multiples(self.group, 1))

    @property
    def scope(self):
        return self.base.scope

    def describe(self):
        return f"dihedral_pair({self.base.describe()})"

    def check_region(self, r):
        if not isinstance(r, Product) or any(k not in (self.H0, self.H1) for k, _ in r.parts):
            raise UnknownRegionError(f"{r!r} is not a region of the pair system")

    def decompose(self, q):
        out = {self.H0: [], self.H1: []}
        for (n, bit), r in q:
            u = r.get(self.H0)
            v = r.get(self.H1)
            if bit == 0:
                if u is not None:
                    out[self.H0].append((n, u))
                if v is not None:
                    out[self.H1].append((-n, v))
            else:
                if u is not None:
                    out[self.H1].append((n, u))
                if v is not None:
                    out[self.H0].append((-n, v))
        return {k: make_query(v) for k, v in out.items() if v}

    def _solve(self, q):
        parts = []
        for phi, bq in self.decompose(q).items():
            w = self.base.emptiness(bq)
            if w is None:
                return None
            parts.append((phi, w))
        return CoinducedPoint(tuple(parts))

    def _holds(self, w, q):
        if not isinstance(w, CoinducedPoint):
            return False
        for phi, bq in self.decompose(q).items():
            bw = w.get(phi)
            if bw is None or not self.base.replay(bw, bq):
                return False
        return True

    def act(self, g0, w):
        n, bit = g0
        f0, f1 = w.get(self.H0), w.get(self.H1)
        b = self.base
        if bit == 0:
            new0 = None if f0 is None else b.act(n, f0)
            new1 = None if f1 is None else b.act(-n, f1)
        else:
            new0 = None if f1 is None else b.act(n, f1)
            new1 = None if f0 is None else b.act(-n, f0)
        items = tuple((k, v) for k, v in ((self.H0, new0), (self.H1, new1)) if v is not None)
        return CoinducedPoint(items)

    def atoms(self, queries):
        decs = [self.decompose(self.normalize(q)) for q in queries]
        comp = [self.base.atoms([d.get(phi, ()) for d in decs]) for phi in (self.H0, self.H1)]
        return _product_atoms(len(queries), comp)


def dihedral_pair_system(base: SystemModel) -> DihedralPairSystem:
    return DihedralPairSystem(base)


def section_transport(q, cs_from: CosetSpace, cs_to: CosetSpace):
    """Carry a query across a change of section.

    ``f -> (theta -> alpha_{u_theta} f(theta))`` with ``u_theta = s'(theta)
    s(theta)^-1`` intertwines the two co-induced actions, so ``q`` is
    satisfiable for section s iff the returned query is for s'.
    """
    G = cs_from.group
    out = []
    for g, r in q:
        if not isinstance(r, Product):
            out.append((g, r))
            continue
        parts = {}
        for theta, v in r.parts:
            u = G.mul(cs_to.section(theta), G.inv(cs_from.section(theta)))
            ub = cs_from.subgroup.to_model(G.inv(u))
            parts[theta] = v if cs_from.subgroup.model is None else Pre(ub, v)
        out.append((g, Product.of(parts)))
    return make_query(out)
