"""Minimum set cover over a finite universe of atom ids."""
from __future__ import annotations

from .errors import BudgetError


def greedy_cover(universe, sets):
    """Indices of a greedy cover (largest marginal gain, lowest index on ties)."""
    left = set(universe)
    chosen = []
    while left:
        best, gain = None, 0
        for i, s in enumerate(sets):
            g = len(left & s)
            if g > gain:
                best, gain = i, g
        if best is None:
            return None
        chosen.append(best)
        left -= sets[best]
    return chosen


def disjoint_lower_bound(universe, sets):
    """Size of a family of atoms no two of which share a covering set.

    Each such atom needs its own set, so the family size bounds the optimum
    from below.  Built greedily from the atoms with the fewest covering sets.
    """
    owners = {u: [i for i, s in enumerate(sets) if u in s] for u in universe}
    used = set()
    count = 0
    for u in sorted(universe, key=lambda u: (len(owners[u]), u)):
        if used.isdisjoint(owners[u]):
            used.update(owners[u])
            count += 1
    return count


def reduce_cover(universe, sets):
    """Forced sets and dominated-set removal; both preserve the optimum.

    Returns ``(forced, remaining_universe, active_indices)``.
    """
    universe = set(universe)
    forced = []
    active = [i for i, s in enumerate(sets) if s & universe]
    while universe:
        owners = {}
        for i in active:
            for u in sets[i] & universe:
                owners.setdefault(u, []).append(i)
        sole = sorted({o[0] for o in owners.values() if len(o) == 1})
        if sole:
            forced.extend(sole)
            for i in sole:
                universe -= sets[i]
            active = [i for i in active if i not in sole and sets[i] & universe]
            continue
        restricted = {i: sets[i] & universe for i in active}
        keep = [i for i in active
                if not any(j != i and restricted[i] <= restricted[j]
                           and (restricted[i] != restricted[j] or j < i) for j in active)]
        if len(keep) == len(active):
            break
        active = keep
    return forced, universe, active


def exact_cover(universe, sets, max_nodes=2_000_000):
    """Minimum number of sets covering ``universe`` (branch and bound).

    Branches on the uncovered atom with the fewest candidate sets; prunes with
    the disjoint-atom lower bound.  Returns the chosen indices.
    """
    universe = frozenset(universe)
    greedy = greedy_cover(universe, sets)
    if greedy is None:
        raise ValueError("sets do not cover the universe")
    best = [list(greedy)]
    nodes = [0]
    owners = {u: [i for i, s in enumerate(sets) if u in s] for u in universe}

    def lower(left):
        used = set()
        c = 0
        for u in sorted(left, key=lambda u: len(owners[u])):
            if used.isdisjoint(owners[u]):
                used.update(owners[u])
                c += 1
        return c

    def rec(left, chosen):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise BudgetError("set cover node budget exhausted", best=len(best[0]))
        if not left:
            if len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        if len(chosen) + lower(left) >= len(best[0]):
            return
        u = min(left, key=lambda u: (len(owners[u]), u))
        for i in sorted(owners[u], key=lambda i: -len(sets[i] & left)):
            chosen.append(i)
            rec(left - sets[i], chosen)
            chosen.pop()

    rec(universe, [])
    return best[0]
