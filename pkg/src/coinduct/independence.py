"""Certify, search and refute independence sets.

``I`` is independent for regions ``(A_1, ..., A_k)`` when every assignment
``omega: I -> {0..k-1}`` leaves ``{x : alpha_g(x) in A_omega(g) for g in I}``
nonempty.  Certificates carry one replayable witness per assignment.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Optional

from ._order import canon_key
from .errors import BudgetError, CoinductError, InfiniteIndexError
from .groups import INF, CosetSpace, coset_partition, neumann_witness
from .systems import Product, make_query

DEFAULT_CAP = 1 << 18


def assignment_cap(cap=None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("COINDUCT_BUDGET")
    return int(env) if env else DEFAULT_CAP


def _order(sys, elements):
    uniq = list(dict.fromkeys(elements))
    return tuple(sys.group.sorted(uniq))


def assignment_query(regions, elements, omega):
    return make_query([(g, regions[w]) for g, w in zip(elements, omega)])


@dataclass
class Certificate:
    regions: tuple
    elements: tuple
    witnesses: dict  # omega (tuple aligned with elements) -> Witness
    scope: str = "exact"

    ok = True

    @property
    def size(self):
        return len(self.elements)

    @property
    def k(self):
        return len(self.regions)

    def verify(self, sys) -> bool:
        if len(self.witnesses) != self.k ** self.size:
            return False
        for omega in itertools.product(range(self.k), repeat=self.size):
            w = self.witnesses.get(omega)
            if w is None or not sys.replay(w, assignment_query(self.regions, self.elements, omega)):
                return False
        return True

    def restrict(self, subset) -> "Certificate":
        """Certificate for a subset, reusing witnesses (heredity)."""
        sub = set(subset)
        if not sub <= set(self.elements):
            raise CoinductError("not a subset of the certified set")
        keep = [i for i, g in enumerate(self.elements) if g in sub]
        wits = {}
        for omega in itertools.product(range(self.k), repeat=len(keep)):
            full = [0] * self.size
            for i, w in zip(keep, omega):
                full[i] = w
            wits[omega] = self.witnesses[tuple(full)]
        return Certificate(self.regions, tuple(self.elements[i] for i in keep), wits, self.scope)

    def translate(self, sys, g0) -> "Certificate":
        """Right-translate ``I`` by ``g0``; witnesses move by ``alpha_{g0^-1}``."""
        G = sys.group
        moved = [G.mul(g, g0) for g in self.elements]
        order = _order(sys, moved)
        pos = [order.index(m) for m in moved]
        gi = G.inv(g0)
        wits = {}
        for omega, w in self.witnesses.items():
            new = [0] * self.size
            for i, v in enumerate(omega):
                new[pos[i]] = v
            wits[tuple(new)] = sys.act(gi, w)
        return Certificate(self.regions, order, wits, self.scope)


@dataclass
class Failure:
    regions: tuple
    elements: tuple
    omega: tuple

    ok = False

    def verify(self, sys) -> bool:
        return sys.is_empty(assignment_query(self.regions, self.elements, self.omega))


def is_independent(sys, regions, I, cap=None):
    """Certificate when every assignment is satisfiable, else the first
    failing assignment (lexicographic over ``I`` in shortlex order)."""
    regions = tuple(regions)
    k = len(regions)
    if k < 1:
        raise CoinductError("need at least one region")
    elements = _order(sys, I)
    total = k ** len(elements)
    if total > assignment_cap(cap):
        raise BudgetError(f"{total} assignments exceed the cap {assignment_cap(cap)}")
    wits = {}
    for omega in itertools.product(range(k), repeat=len(elements)):
        w = sys.emptiness(assignment_query(regions, elements, omega))
        if w is None:
            return Failure(regions, elements, omega)
        wits[omega] = w
    return Certificate(regions, elements, wits, sys.scope)


@dataclass
class MaxResult:
    certificate: Certificate
    exhaustive: bool
    checked: int = 0

    @property
    def size(self):
        return self.certificate.size


def max_independence(sys, regions, pool, cap=None, exhaustive=True):
    """Largest independent subset of ``pool`` (branch and bound on cliques
    of the pairwise-independence graph, checking each extension fully)."""
    regions = tuple(regions)
    pool = _order(sys, pool)
    counter = [0]

    def check(S):
        counter[0] += 1
        return is_independent(sys, regions, S, cap)

    singles = [g for g in pool if check([g]).ok]
    best = Certificate(regions, (), {(): sys.emptiness(())}, sys.scope)
    if not singles:
        return MaxResult(best, True, counter[0])
    compat = {g: set() for g in singles}
    for a_, b in itertools.combinations(singles, 2):
        if check([a_, b]).ok:
            compat[a_].add(b)
            compat[b].add(a_)
    best = check([singles[0]])
    complete = True

    def extend(S, cands):
        nonlocal best, complete
        for idx, g in enumerate(cands):
            rest = [c for c in cands[idx + 1:] if c in compat[g]]
            if len(S) + 1 + len(rest) <= best.size:
                continue
            try:
                res = check(S + [g])
            except BudgetError as exc:
                raise BudgetError(str(exc), best=best) from None
            if not res.ok:
                continue
            if res.size > best.size:
                best = res
            if rest:
                extend(S + [g], rest)
            if not exhaustive and best.size >= len(singles):
                complete = False
                return

    extend([], singles)
    return MaxResult(best, exhaustive and complete, counter[0])


@dataclass
class RefutationRecord:
    """Outcome of an exhaustive search for an independent n-subset of a pool.

    Instead of one failing assignment per n-subset, the record stores the
    minimal non-independent subsets met by a level-wise search; every
    n-subset (containing ``anchor`` when one is set) contains one of them,
    and the failing assignment extends to it.
    """

    regions: tuple
    pool: tuple
    n: int
    scope: str
    anchor: object = None
    refuted: bool = True
    obstructions: list = field(default_factory=list)  # (subset, omega)
    counterexample: Optional[Certificate] = None
    checked: int = 0
    level_sizes: list = field(default_factory=list)

    def failing_assignment(self, I):
        """``(obstruction, omega on I)`` for an n-subset ``I``, or None."""
        Iset = set(I)
        for sub, omega in self.obstructions:
            if set(sub) <= Iset:
                vals = dict(zip(sub, omega))
                return sub, tuple(vals.get(g, 0) for g in I)
        return None

    def covers(self, I) -> bool:
        return self.failing_assignment(I) is not None

    def verify(self, sys) -> bool:
        """Re-check every stored obstruction as empty."""
        for sub, omega in self.obstructions:
            if not sys.is_empty(assignment_query(self.regions, sub, omega)):
                return False
        return True

    def verify_coverage(self, sys) -> bool:
        """Enumerate every n-subset and confirm it is covered (small pools)."""
        pool = list(self.pool)
        if self.anchor is not None:
            rest = [g for g in pool if g != self.anchor]
            subsets = ((self.anchor,) + c for c in itertools.combinations(rest, self.n - 1))
        else:
            subsets = itertools.combinations(pool, self.n)
        for I in subsets:
            hit = self.failing_assignment(I)
            if hit is None:
                return False
            if not sys.is_empty(assignment_query(self.regions, I, hit[1])):
                return False
        return True


def refute(sys, regions, pool, n, anchor=None, scope=None, cap=None):
    """Exhaustively search ``pool`` for an independent set of size ``n``.

    Level-wise (Apriori) search using heredity: a (t+1)-set is checked only
    when all its t-subsets that are tracked were independent.  With an
    ``anchor`` only sets containing it are considered, which is complete for
    translation-invariant questions once the anchor is moved into ``I``.
    """
    regions = tuple(regions)
    pool = _order(sys, pool)
    if anchor is not None:
        if anchor not in pool:
            pool = _order(sys, pool + (anchor,))
        order = (anchor,) + tuple(g for g in pool if g != anchor)
    else:
        order = pool
    idx = {g: i for i, g in enumerate(order)}
    rec = RefutationRecord(regions, pool, n, scope or sys.scope, anchor)

    def check(S):
        rec.checked += 1
        return is_independent(sys, regions, S, cap)

    def note_fail(S, res):
        # map omega from shortlex order back onto S
        vals = dict(zip(res.elements, res.omega))
        rec.obstructions.append((tuple(S), tuple(vals[g] for g in S)))

    if anchor is not None:
        res = check([anchor])
        level = []
        if res.ok:
            level = [(anchor,)]
        else:
            note_fail((anchor,), res)
    else:
        level = []
        for g in order:
            res = check([g])
            if res.ok:
                level.append((g,))
            else:
                note_fail((g,), res)
    rec.level_sizes.append(len(level))
    t = 1
    while t < n and level:
        nxt = []
        if t == 1 and anchor is not None:
            cands = [(anchor, g) for g in order[1:]]
        else:
            known = set(level)
            groups = {}
            for S in level:
                groups.setdefault(S[:-1], []).append(S)
            cands = []
            for prefix, members in groups.items():
                members.sort(key=lambda S: idx[S[-1]])
                for x_, y_ in itertools.combinations(members, 2):
                    C = prefix + (x_[-1], y_[-1])
                    subs = [C[:i] + C[i + 1:] for i in range(len(C))]
                    if anchor is not None:
                        subs = subs[1:]
                    if all(s in known for s in subs):
                        cands.append(C)
        for C in cands:
            res = check(C)
            if res.ok:
                nxt.append(C)
            else:
                note_fail(C, res)
        level = nxt
        t += 1
        rec.level_sizes.append(len(level))
    if t >= n and level:
        rec.refuted = False
        rec.counterexample = check(level[0])
    return rec


# --------------------------------------------------------------------------
# Transfers

def independence_fold(sys, cert: Certificate, cs: CosetSpace) -> Certificate:
    """Pass from a G-certificate to one inside H on the largest coset block.

    With ``F_theta = F s(theta)^-1 ∩ H`` and witness x for an extension of
    omega, ``alpha_{s(theta)}(x)`` witnesses omega on ``F_theta``.
    """
    if cs.index == INF:
        raise InfiniteIndexError("folding needs a finite-index subgroup")
    G = cs.group
    blocks = coset_partition(cert.elements, cs)
    # first block of maximal size in canonical coset order
    top = max(len(b) for b in blocks.values())
    theta = next(t for t in blocks if len(blocks[t]) == top)
    st = cs.section(theta)
    F = blocks[theta]
    src = {h: G.mul(h, st) for h in F}
    order = _order(sys, F)
    wits = {}
    for omega in itertools.product(range(cert.k), repeat=len(order)):
        vals = {src[h]: w for h, w in zip(order, omega)}
        full = tuple(vals.get(g, 0) for g in cert.elements)
        wits[omega] = sys.act(st, cert.witnesses[full])
    return Certificate(cert.regions, order, wits, cert.scope)


def coordinate_project(co_sys, cert: Certificate, theta, base_group_elements=True) -> Certificate:
    """Read a base-system certificate off coordinate ``theta``.

    Needs every element of I to fix theta (I inside s(theta)^-1 H s(theta));
    the base element for g is the cocycle ``s(theta) g s(theta)^-1``.
    """
    cs = co_sys.cs
    G = cs.group
    regions = []
    for A in cert.regions:
        if not isinstance(A, Product) or A.get(theta) is None:
            raise CoinductError(f"coordinate {theta!r} is unconstrained by {A!r}")
        regions.append(A.get(theta))
    st = cs.section(theta)
    conj = []
    for g in cert.elements:
        if cs.act(theta, g) != theta:
            raise CoinductError(f"{g!r} moves coordinate {theta!r}")
        h = G.prod(st, g, G.inv(st))
        if cs.subgroup.model is None:
            conj.append(co_sys.base.group.identity)
        else:
            conj.append(cs.subgroup.to_model(h))
    base = co_sys.base
    order = _order(base, conj)
    if len(order) != len(conj):
        raise CoinductError("projection identifies distinct elements")
    pos = [order.index(c) for c in conj]
    wits = {}
    for omega, w in cert.witnesses.items():
        new = [0] * len(order)
        for i, v in enumerate(omega):
            new[pos[i]] = v
        bw = w.get(theta)
        if bw is None:
            raise CoinductError(f"witness leaves coordinate {theta!r} free")
        wits[tuple(new)] = bw
    return Certificate(tuple(regions), order, wits, cert.scope)


def it_stream(co_sys, regions, n, budget=64):
    """The first n elements of the disjoint-support stream.

    ``g_1 = e``; ``g_p`` avoids ``a_i^-1 H a_j g_q`` for all support
    representatives ``a_i, a_j`` and q < p, so the coset supports of the
    translated regions never meet.
    """
    cs = co_sys.cs
    G = cs.group
    support = sorted({t for A in regions for t, _ in A.parts}, key=canon_key)
    reps = [cs.section(t) for t in support]
    out = [G.identity]
    while len(out) < n:
        triples = [(ai, aj, g) for g in out for ai in reps for aj in reps]
        radius = 2
        while True:
            try:
                out.append(neumann_witness(triples, cs, radius))
                break
            except BudgetError:
                if radius >= budget:
                    raise
                radius = min(budget, radius * 2)
    return out


def it_witness_stream(co_sys, regions, n, budget=64, cap=None) -> Certificate:
    if co_sys.cs.index != INF:
        raise CoinductError("the witness stream needs an infinite-index subgroup")
    regions = tuple(regions)
    I = it_stream(co_sys, regions, n, budget)
    res = is_independent(co_sys, regions, I, cap)
    if not res.ok:  # pragma: no cover - excluded by the disjoint supports
        raise CoinductError(f"stream element set failed at {res.omega}")
    return res
