"""Arithmetic model of the Tan-Ye-Zhang system (X1, Z, T).

Points are symbolic: ``a_i`` (i in Z), the fixed point ``a_inf`` and orbit
points ``x_{s,i}`` for ``s`` in F(k) = {0,1}^{0..k}.  The neighbourhoods
``U^m(a_c)`` are handled through membership axioms instead of geometry:

* same-level neighbourhoods of distinct finite centres are disjoint;
* ``U^{m+1}(a_c)`` is inside ``U^m(a_c)``;
* ``U^m(a_c)`` sits inside ``U^m(a_inf)`` exactly when ``|c| > n_m^m``.

Every orbit point has a native placement ``(L, c)``: it lies in ``U^L(a_c)``
and in no neighbourhood finer than level L.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import CoinductError, UnknownRegionError
from .groups import Integers
from .systems import Region, SystemModel, Witness, make_query

INF = None  # centre / index value standing for infinity


class JumpTable:
    """The integers n_q^k and the jump numbers j, p.

    Schedule: ``n_1^1 = 9``, ``n_{q+1}^k = 100 n_q^k + 1`` and
    ``n_1^{k+1} = 100 n_k^k + 1``.  ``j_{s,q}^k`` is the floor of the
    midpoint of segment q and does not depend on s.  Rows beyond ``K`` are
    computed on demand (tail points of level-K orbits live on higher levels).
    """

    def __init__(self, K: int):
        if K < 1:
            raise CoinductError("jump table needs K >= 1")
        self.K = K
        self._rows = [None, (0, 9)]

    def row(self, k: int) -> tuple:
        if k < 1:
            raise CoinductError("levels start at 1")
        while len(self._rows) <= k:
            prev = self._rows[-1]
            r = [0, 100 * prev[-1] + 1]
            for _ in range(len(self._rows) - 1):
                r.append(100 * r[-1] + 1)
            self._rows.append(tuple(r))
        return self._rows[k]

    def n(self, q: int, k: int) -> int:
        return self.row(k)[q]

    def N(self, m: int) -> int:
        """n_m^m, the radius where U^m(a_inf) starts."""
        return self.row(m)[m]

    def j(self, s, q: int) -> int:
        r = self.row(len(s) - 1)
        return (r[q] - r[q - 1]) // 2

    def p(self, s, q: int) -> int:
        r = self.row(len(s) - 1)
        return r[q] - r[q - 1] - self.j(s, q) - s[q]

    def to_json(self):
        rows = {}
        for k in range(1, self.K + 1):
            r = self.row(k)
            rows[str(k)] = {
                "n": list(r),
                "j": [(r[q] - r[q - 1]) // 2 for q in range(1, k + 1)],
                "segment": [r[q] - r[q - 1] for q in range(1, k + 1)],
            }
        return {"K": self.K, "schedule": "n_next = 100*n_prev + 1", "levels": rows}


def build_jump_table(K: int) -> JumpTable:
    return JumpTable(K)


def F(k: int):
    """All s in {0,1}^{0..k}, lexicographic."""
    return list(itertools.product((0, 1), repeat=k + 1))


def check_invariants(jt: JumpTable, K: Optional[int] = None):
    """List of violated jump-table invariants (empty when all hold)."""
    K = jt.K if K is None else K
    bad = []
    if jt.n(1, 1) != 9:
        bad.append("n_1^1 != 9")
    for k in range(1, K + 1):
        r = jt.row(k)
        if r[0] != 0:
            bad.append(f"n_0^{k} != 0")
        for q in range(1, k + 1):
            if r[q] <= 2 * k + 4:
                bad.append(f"n_{q}^{k} <= 2k+4")
            if q < k and not r[q + 1] > 100 * r[q]:
                bad.append(f"n_{q + 1}^{k} not > 100 n_{q}^{k}")
        if not jt.n(1, k + 1) > 100 * r[k]:
            bad.append(f"n_1^{k + 1} not > 100 n_{k}^{k}")
        for s in F(k):
            for q in range(1, k + 1):
                d = r[q] - r[q - 1]
                jj, pp = jt.j(s, q), jt.p(s, q)
                if abs(2 * jj - d) > k:  # |d/2 - j| <= k/2
                    bad.append(f"midpoint bound fails at k={k} q={q} s={s}")
                if pp != d - jj - s[q]:
                    bad.append(f"p mismatch at k={k} q={q}")
                if abs(jj - pp) > k + 1:
                    bad.append(f"|j-p| > k+1 at k={k} q={q} s={s}")
                if jj < 1 or pp < 1:
                    bad.append(f"non-positive jump number at k={k} q={q}")
                if q < k:
                    if not jj < jt.j(s, q + 1):
                        bad.append(f"j not increasing at k={k} q={q} s={s}")
                    if not pp < jt.p(s, q + 1):
                        bad.append(f"p not increasing at k={k} q={q} s={s}")
            if k < K:
                for s2 in F(k + 1):
                    if not jt.j(s, k) < jt.j(s2, 1):
                        bad.append(f"cross-level j fails at k={k} s={s} s'={s2}")
                    if not jt.p(s, k) < jt.p(s2, 1):
                        bad.append(f"cross-level p fails at k={k} s={s} s'={s2}")
    return bad


# --------------------------------------------------------------------------
# Points and neighbourhoods

@dataclass(frozen=True)
class PointRef(Witness):
    """``kind`` is 'a' (a_i), 'inf' (a_inf) or 'x' (x_{s,i})."""

    kind: str
    i: Optional[int] = None
    s: Optional[tuple] = None

    def __repr__(self):
        if self.kind == "inf":
            return "a_inf"
        if self.kind == "a":
            return f"a_{self.i}"
        return f"x_{{{''.join(map(str, self.s))},{self.i}}}"


def a(i):
    return PointRef("inf") if i is INF else PointRef("a", i)


def x(s, i):
    return PointRef("x", i, tuple(s))


@dataclass(frozen=True)
class Nbhd(Region):
    """U^level(a_center) intersected with X1; ``center=None`` is infinity."""

    level: int
    center: Optional[int]

    def __repr__(self):
        return f"U({self.level}, {'inf' if self.center is None else self.center})"


@dataclass(frozen=True)
class ASingleton(Region):
    index: Optional[int]

    def __repr__(self):
        return f"a({'inf' if self.index is None else self.index})"


def address(s, i: int, jt: JumpTable):
    """Native placement ``(L, c)`` of x_{s,i}: x_{s,i} is in U^L(a_c)."""
    k = len(s) - 1
    r = jt.row(k)
    if i < 0:
        return k - i, s[0] + i
    if i > r[k]:
        t = i - r[k]
        return k + t, s[k] + t
    q = max(1, bisect.bisect_left(r, i))
    off = i - r[q - 1]
    jj = (r[q] - r[q - 1]) // 2
    if off < jj:
        return k, s[q - 1] + off
    return k, -jt.p(s, q) + (off - jj)


def member(pt: PointRef, nb, jt: JumpTable) -> bool:
    if isinstance(nb, ASingleton):
        if pt.kind == "inf":
            return nb.index is INF
        return pt.kind == "a" and nb.index is not INF and pt.i == nb.index
    m, c = nb.level, nb.center
    if pt.kind == "inf":
        return c is INF
    if pt.kind == "a":
        return pt.i == c if c is not INF else abs(pt.i) > jt.N(m)
    L, cc = address(pt.s, pt.i, jt)
    if m > L:
        return False
    return cc == c if c is not INF else abs(cc) > jt.N(m)


def membership(pt, nb, jt):
    return member(pt, nb, jt)


def visits(s, m: int, c: int, jt: JumpTable):
    """Sorted indices i with x_{s,i} in U^m(a_c), for finite c.

    Closed form over the segment structure; never walks the orbit.
    """
    k = len(s) - 1
    r = jt.row(k)
    out = set()
    if m <= k:
        for q in range(1, k + 1):
            d = r[q] - r[q - 1]
            jj = d // 2
            off = c - s[q - 1]
            if 0 <= off < jj:
                out.add(r[q - 1] + off)
            off = c + jt.p(s, q)
            if 0 <= off <= d - jj:
                out.add(r[q - 1] + jj + off)
    t = c - s[k]
    if t >= 1 and k + t >= m:
        out.add(r[k] + t)
    t = s[0] - c
    if t >= 1 and k + t >= m:
        out.add(-t)
    return tuple(sorted(out))


def orbit_slice(s, j: int, jt: JumpTable, level: Optional[int] = None):
    """``{n_q^k - s(q) + j : q = 0..k}``: the visits of X_s to U^level(a_j).

    Valid for ``|j| <= min(j_{s,1}, p_{s,1}) - 1`` and level <= k.
    """
    k = len(s) - 1
    level = k if level is None else level
    bound = min(jt.j(s, 1), jt.p(s, 1)) - 1
    if abs(j) > bound:
        raise CoinductError(f"j={j} outside the admissible range |j| <= {bound} for s={s}")
    if not 1 <= level <= k:
        raise CoinductError(f"level {level} outside 1..{k}")
    r = jt.row(k)
    return tuple(r[q] - s[q] + j for q in range(k + 1))


def return_times(s, m: int, c_from: int, c_to: int, jt: JumpTable):
    """Sorted differences ``i2 - i1`` with x_{s,i1} in U^m(a_from), x_{s,i2} in U^m(a_to)."""
    src = visits(s, m, c_from, jt)
    dst = visits(s, m, c_to, jt)
    return tuple(sorted({b - a_ for a_ in src for b in dst}))


def similar_positions_verify(jt: JumpTable, K: int):
    """Check the similar-position property on every pair of U^1(a_0) slices.

    For all s in F(k), s' in F(k') with k, k' <= K and x<y in the slice of s,
    z<w in the slice of s' at equal iterative distance, require k = k' and
    matching slot indices.  Returns ``{"quadruples": n, "violations": v}``.
    """
    if K > jt.K:
        raise CoinductError("K exceeds the jump-table cap")
    buckets = {}
    for k in range(1, K + 1):
        for s in F(k):
            sl = visits(s, 1, 0, jt)
            for (q1, i1), (q2, i2) in itertools.combinations(enumerate(sl), 2):
                buckets.setdefault(i2 - i1, []).append((k, q1, q2))
    quads = viol = 0
    examples = []
    for dist, entries in sorted(buckets.items()):
        for e1 in entries:
            for e2 in entries:
                quads += 1
                if e1 != e2:
                    viol += 1
                    if len(examples) < 5:
                        examples.append({"distance": dist, "left": list(e1), "right": list(e2)})
    return {"K": K, "quadruples": quads, "violations": viol, "examples": examples}


def key_lemma_pool(jt: JumpTable, k: int, j: int, K_max: int):
    """Every l such that {0, l} could be independent for U^k(a_0) x U^k(a_j).

    On the first coset the orbit must meet U^k(a_0) at times 0 and l, on the
    second it must meet U^k(a_j) at times 0 and -l.  The a-orbit only allows
    l = 0 and a_inf is in neither set, so within the truncation the candidates
    are the return-time differences of the finitely many orbits.
    """
    d0, dj = set(), set()
    for lev in range(1, K_max + 1):
        for s in F(lev):
            v0 = visits(s, k, 0, jt)
            d0.update(b - a_ for a_ in v0 for b in v0)
            vj = visits(s, k, j, jt)
            dj.update(a_ - b for a_ in vj for b in vj)
    return sorted(d0 & dj, key=lambda t: (abs(t), t < 0))


# --------------------------------------------------------------------------
# The system

class X1System(SystemModel):
    """X1 restricted to orbits of level <= K_max, plus A = {a_i} and a_inf.

    Answers are exact for this truncated space; the scope string says so.
    """

    def __init__(self, jt: JumpTable, K_max: int):
        super().__init__()
        if K_max > jt.K:
            raise CoinductError("truncation exceeds the jump-table cap")
        self.jt = jt
        self.K_max = K_max
        self.group = Integers()
        self.orbits = [s for lev in range(1, K_max + 1) for s in F(lev)]
        self._hits = {}

    @property
    def scope(self):
        return f"within truncation K_max={self.K_max}"

    def describe(self):
        return f"x1(levels={self.jt.K}, truncate={self.K_max})"

    def check_region(self, r):
        if isinstance(r, Nbhd):
            if not (isinstance(r.level, int) and r.level >= 1):
                raise UnknownRegionError(f"bad neighbourhood level in {r!r}")
            return
        if isinstance(r, ASingleton):
            return
        raise UnknownRegionError(f"{r!r} is not an X1 region")

    def hits(self, m, c):
        """``{orbit index: frozenset of visit times}`` for U^m(a_c)."""
        key = (m, c)
        h = self._hits.get(key)
        if h is None:
            h = {}
            for n, s in enumerate(self.orbits):
                v = visits(s, m, c, self.jt)
                if v:
                    h[n] = frozenset(v)
            self._hits[key] = h
        return h

    def _solve(self, q):
        jt = self.jt
        if not q:
            return PointRef("inf")
        inf_pt = PointRef("inf")
        if all(member(inf_pt, r, jt) for _, r in q):
            return inf_pt
        # the A orbit
        fixed = None
        ok = True
        for t, r in q:
            c = r.index if isinstance(r, ASingleton) else r.center
            if isinstance(r, ASingleton) and c is INF:
                ok = False
                break
            if c is not INF:
                if fixed is None:
                    fixed = c - t
                elif fixed != c - t:
                    ok = False
                    break
        if ok:
            if fixed is not None:
                cands = [fixed]
            else:
                hi = max(jt.N(r.level) - t for t, r in q) + 1
                lo = min(-jt.N(r.level) - t for t, r in q) - 1
                cands = sorted([hi, lo], key=lambda i: (abs(i), i < 0))
            for i in cands:
                pt = PointRef("a", i)
                if all(member(PointRef("a", i + t), r, jt) for t, r in q):
                    return pt
        # orbits X_s: need a finite-centre neighbourhood to anchor the search
        if any(isinstance(r, ASingleton) for _, r in q):
            return None
        finite = [(t, r) for t, r in q if r.center is not INF]
        if not finite:
            return None  # pragma: no cover - a_inf already satisfies such queries
        tables = [(t, self.hits(r.level, r.center)) for t, r in finite]
        tables.sort(key=lambda tr: len(tr[1]))
        rest = [(t, r) for t, r in q if r.center is INF]
        t0, h0 = tables[0]
        for n in sorted(h0):
            if any(n not in h for _, h in tables[1:]):
                continue
            cand = {i - t0 for i in h0[n]}
            for t, h in tables[1:]:
                cand &= {i - t for i in h[n]}
                if not cand:
                    break
            s = self.orbits[n]
            for i in sorted(cand, key=lambda i: (abs(i), i < 0)):
                if all(member(PointRef("x", i + t, s), r, jt) for t, r in rest):
                    return PointRef("x", i, s)
        return None

    def _holds(self, w, q):
        if not isinstance(w, PointRef):
            return False
        if w.kind == "x" and len(w.s) - 1 > self.K_max:
            return False
        return all(member(self.act(t, w), r, self.jt) for t, r in q)

    def act(self, g, w):
        if w.kind == "inf":
            return w
        return PointRef(w.kind, w.i + g, w.s)


def x1_system(jt: JumpTable, K_max: int) -> X1System:
    return X1System(jt, K_max)


def slice_query(s, jt: JumpTable, k: Optional[int] = None):
    """The query {(n_q^k, U^k(a_{s(q)}))}: satisfied by x_{s,0}."""
    k = len(s) - 1 if k is None else k
    r = jt.row(len(s) - 1)
    return make_query([(r[q], Nbhd(k, s[q])) for q in range(len(s))])


def slice_check(jt: JumpTable, k: int, samples=None, seed: int = 0):
    """Compare ``orbit_slice`` with membership over a window.

    For every s in F(k) the membership map of the window
    ``[-n_k^k - k - 2, 2 n_k^k]`` is inverted once; each admissible j is
    then compared with the formula.  With ``samples`` set, only that many
    random (s, j) pairs are tested, probing membership at the predicted
    indices and their neighbours within distance 2.
    """
    import random

    r = jt.row(k)
    mismatches = []
    checked = 0
    if samples is None:
        for s in F(k):
            bound = min(jt.j(s, 1), jt.p(s, 1)) - 1
            hits = {}
            for i in range(-r[k] - k - 2, 2 * r[k] + 1):
                L, c = address(s, i, jt)
                if L >= k and abs(c) <= bound:
                    hits.setdefault(c, []).append(i)
            for j in range(-bound, bound + 1):
                checked += 1
                if tuple(sorted(hits.get(j, []))) != tuple(sorted(orbit_slice(s, j, jt))):
                    mismatches.append((s, j))
        return {"k": k, "checked": checked, "mismatches": mismatches}
    rng = random.Random(seed)
    space = F(k)
    for _ in range(samples):
        s = rng.choice(space)
        bound = min(jt.j(s, 1), jt.p(s, 1)) - 1
        j = rng.randint(-bound, bound)
        pred = set(orbit_slice(s, j, jt))
        probes = {i + d for i in pred for d in range(-2, 3)}
        got = {i for i in probes if member(PointRef("x", i, s), Nbhd(k, j), jt)}
        checked += 1
        if got != pred:
            mismatches.append((s, j))
    return {"k": k, "checked": checked, "mismatches": mismatches}
