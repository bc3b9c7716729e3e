"""JSON encoding of elements, regions, witnesses, certificates and records.

Everything round-trips: ``*_from_json(*_to_json(x)) == x``.  Output is
deterministic (sorted keys, canonical orders), so two runs of the same
experiment produce identical bytes.
"""
from __future__ import annotations

import json

from .errors import CoinductError
from .independence import Certificate, Failure, RefutationRecord
from .systems import (CoinducedPoint, Cylinder, FinitePoint, Pattern, PointSet, Pre, Product,
                      ProductPoint, Whole)
from .x1 import ASingleton, Nbhd, PointRef

SCHEMA = 1


def elem_to_json(g):
    if isinstance(g, tuple):
        return [elem_to_json(x) for x in g]
    return g


def elem_from_json(v):
    if isinstance(v, list):
        return tuple(elem_from_json(x) for x in v)
    return v


def _inf(c):
    return "inf" if c is None else c


def _uninf(c):
    return None if c == "inf" else c


def region_to_json(r):
    if isinstance(r, Whole):
        return {"whole": True}
    if isinstance(r, Cylinder):
        return {"cyl": [[elem_to_json(c), v] for c, v in r.items]}
    if isinstance(r, PointSet):
        return {"pts": sorted(r.points)}
    if isinstance(r, Nbhd):
        return {"U": [r.level, _inf(r.center)]}
    if isinstance(r, ASingleton):
        return {"a": _inf(r.index)}
    if isinstance(r, Product):
        return {"prod": [[elem_to_json(k), region_to_json(v)] for k, v in r.parts]}
    if isinstance(r, Pre):
        return {"pre": [elem_to_json(r.h), region_to_json(r.region)]}
    raise CoinductError(f"cannot serialise region {r!r}")


def region_from_json(d):
    (kind, v), = d.items()
    if kind == "whole":
        return Whole()
    if kind == "cyl":
        return Cylinder.of([(elem_from_json(c), s) for c, s in v])
    if kind == "pts":
        return PointSet.of(v)
    if kind == "U":
        return Nbhd(v[0], _uninf(v[1]))
    if kind == "a":
        return ASingleton(_uninf(v))
    if kind == "prod":
        return Product.of([(elem_from_json(k), region_from_json(r)) for k, r in v])
    if kind == "pre":
        return Pre(elem_from_json(v[0]), region_from_json(v[1]))
    raise CoinductError(f"unknown region kind {kind!r}")


def witness_to_json(w):
    if w is None:
        return None
    if isinstance(w, Pattern):
        return {"coordinates": [elem_to_json(c) for c, _ in w.items],
                "symbols": [v for _, v in w.items]}
    if isinstance(w, FinitePoint):
        return {"point": w.id}
    if isinstance(w, PointRef):
        d = {"kind": w.kind}
        if w.i is not None:
            d["i"] = w.i
        if w.s is not None:
            d["s"] = list(w.s)
        return {"point": d}
    if isinstance(w, ProductPoint):
        return {"components": [witness_to_json(p) for p in w.parts]}
    if isinstance(w, CoinducedPoint):
        return {"cosets": [[elem_to_json(t), witness_to_json(x)] for t, x in w.items]}
    raise CoinductError(f"cannot serialise witness {w!r}")


def witness_from_json(d):
    if d is None:
        return None
    if "coordinates" in d:
        return Pattern(tuple((elem_from_json(c), v) for c, v in zip(d["coordinates"], d["symbols"])))
    if "point" in d:
        p = d["point"]
        if isinstance(p, int):
            return FinitePoint(p)
        return PointRef(p["kind"], p.get("i"), tuple(p["s"]) if "s" in p else None)
    if "components" in d:
        return ProductPoint(tuple(witness_from_json(x) for x in d["components"]))
    if "cosets" in d:
        return CoinducedPoint(tuple((elem_from_json(t), witness_from_json(x))
                                    for t, x in d["cosets"]))
    raise CoinductError("unrecognised witness payload")


def certificate_to_json(c: Certificate):
    return {
        "kind": "certificate",
        "regions": [region_to_json(r) for r in c.regions],
        "elements": [elem_to_json(g) for g in c.elements],
        "size": c.size,
        "scope": c.scope,
        "witnesses": [{"omega": list(om), "witness": witness_to_json(c.witnesses[om])}
                      for om in sorted(c.witnesses)],
    }


def certificate_from_json(d) -> Certificate:
    return Certificate(
        tuple(region_from_json(r) for r in d["regions"]),
        tuple(elem_from_json(g) for g in d["elements"]),
        {tuple(w["omega"]): witness_from_json(w["witness"]) for w in d["witnesses"]},
        d["scope"],
    )


def failure_to_json(f: Failure):
    return {"kind": "failure", "regions": [region_to_json(r) for r in f.regions],
            "elements": [elem_to_json(g) for g in f.elements], "omega": list(f.omega)}


def refutation_to_json(r: RefutationRecord, max_obstructions=None):
    obs = r.obstructions if max_obstructions is None else r.obstructions[:max_obstructions]
    return {
        "kind": "refutation",
        "regions": [region_to_json(x) for x in r.regions],
        "pool_size": len(r.pool),
        "pool": [elem_to_json(g) for g in r.pool],
        "n": r.n,
        "anchor": elem_to_json(r.anchor),
        "scope": r.scope,
        "refuted": r.refuted,
        "checked": r.checked,
        "level_sizes": list(r.level_sizes),
        "obstruction_count": len(r.obstructions),
        "obstructions": [{"subset": [elem_to_json(g) for g in s], "omega": list(om)}
                         for s, om in obs],
        "counterexample": None if r.counterexample is None
        else certificate_to_json(r.counterexample),
    }


def refutation_from_json(d) -> RefutationRecord:
    rec = RefutationRecord(
        tuple(region_from_json(x) for x in d["regions"]),
        tuple(elem_from_json(g) for g in d["pool"]),
        d["n"], d["scope"], elem_from_json(d["anchor"]), d["refuted"],
        [(tuple(elem_from_json(g) for g in o["subset"]), tuple(o["omega"]))
         for o in d["obstructions"]],
        None if d["counterexample"] is None else certificate_from_json(d["counterexample"]),
        d["checked"], list(d["level_sizes"]))
    return rec


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
