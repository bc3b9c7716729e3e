"""Covering numbers, pattern complexity p*(n) and entropy reports.

A cover is a list of queries (each query being the set it describes).  For
the stock systems every query depends on finitely many coordinates, so the
minimal subcover is a set-cover problem over the finite atom partition.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import BudgetError, CoinductError
from .independence import assignment_cap, max_independence
from .setcover import disjoint_lower_bound, exact_cover, greedy_cover, reduce_cover
from .systems import Whole, make_query

EXACT_UNIVERSE = 4096
EXACT_REGIONS = 24


def cover_of(sys, regions):
    """Turn a list of regions into a cover (list of single-pair queries)."""
    e = sys.group.identity
    return [make_query([] if isinstance(r, Whole) else [(e, r)]) for r in regions]


def pullback(q, g, G):
    """The query describing ``alpha_{g^-1}`` of the set described by ``q``."""
    return make_query([(G.mul(h, g), r) for h, r in q])


def join_pullback(sys, cover, gs):
    """Nonempty cells of the join of ``alpha_{g_i^-1}(cover)``, in index order."""
    G = sys.group
    gs = list(gs)
    if not gs:
        raise CoinductError("join needs at least one group element")
    cells = []
    seen = set()
    for combo in itertools.product(range(len(cover)), repeat=len(gs)):
        q = make_query([p for g, c in zip(gs, combo) for p in pullback(cover[c], g, G)])
        if q in seen:
            continue
        seen.add(q)
        if sys.emptiness(q) is not None:
            cells.append(q)
    return cells


@dataclass
class CoverNumber:
    value: int
    exact: bool
    lower: int
    upper: int
    method: str

    def __int__(self):
        return self.value


def covering_number(sys, cover) -> CoverNumber:
    """Minimal subcover size; exact branch and bound on small instances."""
    count, sets = sys.atoms(cover)
    universe = set(range(count))
    covered = set().union(*sets) if sets else set()
    if covered != universe:
        raise CoinductError(f"not a cover: {count - len(covered)} atoms are missed")
    forced, rest, active = reduce_cover(universe, sets)
    if not rest:
        n = len(forced)
        return CoverNumber(n, True, n, n, "reduction")
    sub = [sets[i] & rest for i in active]
    if len(rest) <= EXACT_UNIVERSE and len(active) <= EXACT_REGIONS:
        n = len(forced) + len(exact_cover(rest, sub))
        return CoverNumber(n, True, n, n, "branch-and-bound")
    upper = len(forced) + len(greedy_cover(rest, sub))
    lower = len(forced) + disjoint_lower_bound(rest, sub)
    return CoverNumber(upper, lower == upper, lower, upper, "greedy")


@dataclass
class PatternComplexity:
    n: int
    value: int
    exact: bool
    argmax: tuple
    tuples_checked: int


def pattern_complexity(sys, cover, n, pool, cap=None) -> PatternComplexity:
    """max N(join) over n-tuples from ``pool`` (a lower bound for p*(n)).

    Repeating an element adds nothing to the join, and enlarging the tuple
    only refines it, so the maximum over tuples with repetition is attained
    on subsets of size ``min(n, |pool|)``.
    """
    pool = list(sys.group.sorted(set(pool)))
    if n < 1:
        raise CoinductError("n must be >= 1")
    size = min(n, len(pool))
    total = math.comb(len(pool), size)
    if total > assignment_cap(cap):
        raise BudgetError(f"{total} tuples exceed the cap")
    best, arg, exact = 0, (), True
    for combo in itertools.combinations(pool, size):
        cn = covering_number(sys, join_pullback(sys, cover, combo))
        exact = exact and cn.exact
        if cn.value > best:
            best, arg = cn.value, combo
    return PatternComplexity(n, best, exact, arg, total)


def seq_entropy_sample(sys, cover, seq):
    """Prefix samples ``(n, log N(join of first n) / n)``."""
    out = []
    for n in range(1, len(seq) + 1):
        cn = covering_number(sys, join_pullback(sys, cover, seq[:n]))
        out.append((n, math.log(cn.value) / n))
    return out


@dataclass
class EntropyReport:
    lower_k: int
    lower_bound: float
    certificates: list
    refutations: list
    samples: list
    fekete: float
    scope: str
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "lower_bound": {"k": self.lower_k, "log_k": self.lower_bound},
            "certificates": self.certificates,
            "refutations": self.refutations,
            "samples": self.samples,
            "fekete_inf": self.fekete,
            "scope": self.scope,
            "notes": self.notes,
        }


def h_star_report(sys, candidates, pool, cover=None, ns=(), refutations=(), min_size=2,
                  cap=None) -> EntropyReport:
    """Bounds on h* from both routes.

    ``candidates`` are ``(label, regions)`` with pairwise disjoint regions;
    a tuple counts towards the lower bound when it has a certified
    independence set of size >= ``min_size`` inside ``pool``.
    ``refutations`` are ready RefutationRecords; a refuted k-tuple caps the
    declared family at log(k - 1) within the record's scope.
    """
    certs = []
    best_k = 1
    for label, regions in candidates:
        res = max_independence(sys, regions, pool, cap)
        certs.append({"tuple": label, "k": len(regions), "size": res.size,
                      "exhaustive": res.exhaustive, "scope": res.certificate.scope})
        if res.size >= min_size:
            best_k = max(best_k, len(regions))
    refs = []
    for label, rec in refutations:
        refs.append({"tuple": label, "k": len(rec.regions), "n": rec.n, "refuted": rec.refuted,
                     "scope": rec.scope, "ceiling_log": math.log(max(1, len(rec.regions) - 1))
                     if rec.refuted else None})
    samples = []
    if cover is not None:
        for n in ns:
            pc = pattern_complexity(sys, cover, n, pool, cap)
            samples.append({"n": n, "p_star": pc.value, "exact": pc.exact,
                            "log_p_over_n": math.log(pc.value) / n})
    fekete = min((s["log_p_over_n"] for s in samples), default=None)
    notes = ["cover samples are lower bounds for p*(n) over the listed pool"]
    if cover is not None:
        notes.append("prefix samples only; no limit value is claimed")
    return EntropyReport(best_k, math.log(best_k), certs, refs, samples, fekete,
                         sys.scope, notes)


def weak_mixing_witness(sys, U1, U2, V1, V2, pool):
    """First g in pool (shortlex) with ``U_i ∩ alpha_g(V_i)`` nonempty for i = 1, 2."""
    G = sys.group
    e = G.identity
    for g in G.sorted(set(pool)):
        gi = G.inv(g)
        if sys.emptiness(make_query([(e, U1), (gi, V1)])) is None:
            continue
        if sys.emptiness(make_query([(e, U2), (gi, V2)])) is None:
            continue
        return g
    return None
