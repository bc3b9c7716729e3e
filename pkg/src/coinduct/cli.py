"""Command-line front end and experiment runner.

``coinduct run FILE`` executes a spec; the other subcommands take a file of
declarations (``--spec``) plus verb arguments written in the spec language,
e.g. ``coinduct indep --spec decls.cx --system co --tuple T --pool 'ball(3)'``.

Exit codes: 0 success, 2 search budget exhausted, 3 invalid spec.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import random
import sys
import time

from . import coinduction, entropy, groups, independence, systems, x1
from .dsl import (VERBS, Braced, Call, Int, Lst, Name, Tup, parse_spec, print_expr, print_spec)
from .errors import BudgetError, CoinductError, SpecError, UnknownRegionError
from .serialize import (SCHEMA, certificate_to_json, dumps, elem_to_json, failure_to_json,
                        refutation_to_json)

EXIT_OK, EXIT_BUDGET, EXIT_SPEC = 0, 2, 3


class Env:
    """Evaluates declarations of a parsed spec."""

    def __init__(self, spec):
        self.spec = spec
        self.values = {}
        self.kinds = {}
        self.last_group = None
        for d in spec.decls:
            self.kinds[d.name] = d.kind
            if d.kind == "group":
                self.values[d.name] = self.group(d.expr)
                self.last_group = self.values[d.name]
            elif d.kind == "subgroup":
                parent = self.values[d.parent] if d.parent else self.last_group
                if parent is None:
                    raise SpecError(f"subgroup {d.name!r} has no parent group")
                self.values[d.name] = self.subgroup(d.expr, parent)
            elif d.kind == "system":
                self.values[d.name] = self.system(d.expr)
            else:
                self.values[d.name] = d.expr  # evaluated against a system later

    def fail(self, msg):
        return SpecError(msg)

    def ref(self, node, kind):
        if self.kinds.get(node.name) != kind:
            raise self.fail(f"{node.name!r} is not a {kind}")
        return self.values[node.name]

    def integer(self, node):
        if not isinstance(node, Int):
            raise self.fail(f"expected an integer, found {print_expr(node)}")
        return node.value

    # -- groups
    def group(self, node):
        if isinstance(node, Name):
            if node.name == "Z":
                return groups.Integers()
            if node.name == "semidirect_Z_Z2":
                return groups.InfiniteDihedral()
            return self.ref(node, "group")
        if isinstance(node, Call) and node.name == "Zmod":
            return groups.CyclicGroup(self.integer(node.args[0]))
        if isinstance(node, Call) and node.name == "product":
            return groups.DirectProduct(self.group(node.args[0]), self.group(node.args[1]))
        raise self.fail(f"not a group expression: {print_expr(node)}")

    def subgroup(self, node, parent):
        if isinstance(node, Name):
            if node.name == "whole":
                return groups.WholeSubgroup(parent)
            if node.name == "trivial":
                return groups.TrivialSubgroup(parent)
            if node.name == "Z_factor":
                return groups.z_factor(parent)
            sub = self.ref(node, "subgroup")
            if sub.parent != parent:
                raise self.fail(f"subgroup {node.name!r} lives in a different group")
            return sub
        if isinstance(node, Call) and node.name == "multiples":
            return groups.Multiples(parent, self.integer(node.args[0]))
        if isinstance(node, Call) and node.name == "product":
            if not isinstance(parent, groups.DirectProduct):
                raise self.fail("product subgroup needs a direct-product parent")
            return groups.ProductSubgroup(parent, self.subgroup(node.args[0], parent.left),
                                          self.subgroup(node.args[1], parent.right))
        if isinstance(node, Call) and node.name == "core":
            return groups.normal_core(groups.CosetSpace(self.subgroup(node.args[0], parent)))
        raise self.fail(f"not a subgroup expression: {print_expr(node)}")

    # -- systems
    def system(self, node):
        if isinstance(node, Name):
            if node.name == "golden_mean":
                return systems.SFT(systems.GOLDEN_MEAN)
            return self.ref(node, "system")
        if not isinstance(node, Call):
            raise self.fail(f"not a system expression: {print_expr(node)}")
        a = node.args
        kw = dict(node.kwargs)
        if node.name == "full_shift":
            return systems.FullShift(self.integer(a[0]), self.group(a[1]))
        if node.name == "sft":
            rows = a[0]
            if not isinstance(rows, Lst) or not all(isinstance(r, Lst) for r in rows.items):
                raise self.fail("sft expects a list of rows")
            return systems.SFT([[self.integer(x) for x in r.items] for r in rows.items])
        if node.name == "trivial_finite":
            return systems.TrivialFinite(self.integer(a[0]), self.group(a[1]))
        if node.name == "product_system":
            return systems.ProductSystem(self.system(a[0]), self.integer(a[1]))
        if node.name == "x1":
            K = self.integer(kw.get("levels", Int(3)))
            Kmax = self.integer(kw.get("truncate", Int(K)))
            return x1.X1System(x1.JumpTable(max(K, Kmax)), Kmax)
        if node.name == "coinduce":
            base = self.system(a[0])
            G = self.group(a[2]) if len(a) > 2 else self.last_group
            sub = self.subgroup(a[1], G)
            section = None
            if "section" in kw:
                sec = kw["section"]
                if not isinstance(sec, Braced) or sec.name != "":
                    raise self.fail("section expects {coset: element, ...}")
                section = {self.element(k, G): self.element(v, G) for k, v in sec.entries}
            return coinduction.CoinducedSystem(base, groups.CosetSpace(sub, section))
        if node.name == "dihedral_pair":
            return coinduction.DihedralPairSystem(self.system(a[0]))
        raise self.fail(f"not a system expression: {print_expr(node)}")

    # -- values depending on a system
    def element(self, node, G):
        if isinstance(node, Int):
            return node.value
        if isinstance(node, Name) and node.name == "e":
            return G.identity
        if isinstance(node, Tup):
            return tuple(self.element(x, None) for x in node.items)
        raise self.fail(f"not a group element: {print_expr(node)}")

    def center(self, node):
        if isinstance(node, Name) and node.name == "inf":
            return None
        return self.integer(node)

    def region(self, node, G):
        if isinstance(node, Name):
            if node.name == "whole":
                return systems.Whole()
            return self.region(self.ref(node, "region"), G)
        if isinstance(node, Braced):
            if node.name == "cyl":
                return systems.Cylinder.of([(self.element(k, G), self.integer(v))
                                            for k, v in node.entries])
            if node.name == "pts":
                return systems.PointSet.of(self.integer(k) for k, _ in node.entries)
            if node.name == "prod":
                return systems.Product.of([(self.element(k, G), self.region(v, G))
                                           for k, v in node.entries])
        if isinstance(node, Call):
            if node.name == "U":
                return x1.Nbhd(self.integer(node.args[0]), self.center(node.args[1]))
            if node.name == "a":
                return x1.ASingleton(self.center(node.args[0]))
            if node.name == "pre":
                return systems.Pre(self.element(node.args[0], G), self.region(node.args[1], G))
        raise self.fail(f"not a region expression: {print_expr(node)}")

    def regions(self, node, G, kind):
        if isinstance(node, Name):
            node = self.ref(node, kind)
        if not isinstance(node, Lst):
            raise self.fail(f"expected a list of regions, found {print_expr(node)}")
        return [self.region(r, G) for r in node.items]

    def pool(self, node, G):
        if isinstance(node, Name):
            node = self.ref(node, "pool")
        if isinstance(node, Call) and node.name == "ball":
            return list(groups.ball(G, self.integer(node.args[0])))
        if isinstance(node, Call) and node.name == "key_lemma":
            k, j, Kmax = (self.integer(x) for x in node.args)
            ells = x1.key_lemma_pool(x1.JumpTable(Kmax), k, j, Kmax)
            if isinstance(G, groups.InfiniteDihedral):
                return [(ell, 0) for ell in ells]
            return ells
        if isinstance(node, Lst):
            return [self.element(x, G) for x in node.items]
        raise self.fail(f"not a pool expression: {print_expr(node)}")


# --------------------------------------------------------------------------
# Verbs

def _system(env, verb):
    node = verb.get("system")
    if not isinstance(node, Name):
        raise SpecError("system= expects a declared system name")
    return env.ref(node, "system")


def _cap(env, verb):
    node = verb.get("cap")
    return None if node is None else env.integer(node)


def _cert_or_failure(res):
    return certificate_to_json(res) if res.ok else failure_to_json(res)


def verb_indep(env, verb):
    S = _system(env, verb)
    regions = env.regions(verb.get("tuple"), S.group, "tuple")
    I = env.pool(verb.get("pool"), S.group)
    res = independence.is_independent(S, regions, I, _cap(env, verb))
    return {"independent": res.ok, "result": _cert_or_failure(res), "scope": S.scope}, None


def verb_maxindep(env, verb):
    S = _system(env, verb)
    regions = env.regions(verb.get("tuple"), S.group, "tuple")
    pool = env.pool(verb.get("pool"), S.group)
    res = independence.max_independence(S, regions, pool, _cap(env, verb))
    return {"size": res.size, "exhaustive": res.exhaustive, "pool_size": len(pool),
            "certificate": certificate_to_json(res.certificate), "scope": S.scope}, None


def verb_refute(env, verb):
    S = _system(env, verb)
    regions = env.regions(verb.get("tuple"), S.group, "tuple")
    pool = env.pool(verb.get("pool"), S.group)
    n = env.integer(verb.get("n"))
    anchor = verb.get("anchor")
    anchor = None if anchor is None else env.element(anchor, S.group)
    rec = independence.refute(S, regions, pool, n, anchor=anchor, cap=_cap(env, verb))
    out = refutation_to_json(rec, max_obstructions=50)
    out["verified"] = rec.verify(S)
    return out, None


def verb_entropy(env, verb):
    S = _system(env, verb)
    cover = entropy.cover_of(S, env.regions(verb.get("cover"), S.group, "cover"))
    nmax = env.integer(verb.get("n"))
    pool = env.pool(verb.get("pool"), S.group)
    cap = _cap(env, verb)
    rows = []
    for n in range(1, nmax + 1):
        pc = entropy.pattern_complexity(S, cover, n, pool, cap)
        rows.append({"n": n, "p_star": pc.value, "exact": pc.exact,
                     "log_p_over_n": round(math.log(pc.value) / n, 12),
                     "argmax": [elem_to_json(g) for g in pc.argmax]})
    cands = []
    tnode = verb.get("tuples")
    if tnode is not None:
        if not isinstance(tnode, Lst):
            raise SpecError("tuples= expects a list of tuple names")
        for t in tnode.items:
            cands.append((t.name, env.regions(t, S.group, "tuple")))
    rep = entropy.h_star_report(S, cands, pool, cap=cap)
    body = rep.to_json()
    body["samples"] = rows
    body["fekete_inf"] = min(r["log_p_over_n"] for r in rows)
    body["subadditive"] = all(
        math.log(rows[a + b - 1]["p_star"]) <= math.log(rows[a - 1]["p_star"])
        + math.log(rows[b - 1]["p_star"]) + 1e-12
        for a in range(1, nmax + 1) for b in range(1, nmax + 1) if a + b <= nmax)
    table = [(r["n"], r["p_star"], f"{r['log_p_over_n']:.6f}") for r in rows]
    return body, table


def verb_weakmix(env, verb):
    S = _system(env, verb)
    G = S.group
    U1, U2, V1, V2 = (env.region(verb.get(k), G) for k in ("U1", "U2", "V1", "V2"))
    pool = env.pool(verb.get("pool"), G)
    g = entropy.weak_mixing_witness(S, U1, U2, V1, V2, pool)
    return {"found": g is not None, "element": elem_to_json(g), "pool_size": len(pool)}, None


def verb_x1verify(env, verb):
    K = env.integer(verb.get("levels", Int(2)))
    samples = env.integer(verb.get("samples", Int(50)))
    seed = env.integer(verb.get("seed", Int(0)))
    jt = x1.JumpTable(K)
    out = {"levels": K, "invariant_violations": x1.check_invariants(jt),
           "similar_positions": x1.similar_positions_verify(jt, K), "slice_check": []}
    for k in range(1, min(K, 2) + 1):
        r = x1.slice_check(jt, k)
        out["slice_check"].append({"k": k, "checked": r["checked"], "mismatches": len(r["mismatches"])})
    if K >= 3:
        r = x1.slice_check(jt, 3, samples=samples, seed=seed)
        out["slice_check"].append({"k": 3, "checked": r["checked"], "mismatches": len(r["mismatches"]),
                              "sampled": True})
    out["ok"] = (not out["invariant_violations"] and out["similar_positions"]["violations"] == 0
                 and all(x["mismatches"] == 0 for x in out["slice_check"]))
    return out, None


def verb_coinduce_check(env, verb):
    S = _system(env, verb)
    if not isinstance(S, coinduction.CoinducedSystem):
        raise SpecError("coinduce-check needs a coinduce(...) system")
    G = S.group
    samples = env.integer(verb.get("samples", Int(200)))
    seed = env.integer(verb.get("seed", Int(0)))
    pool = env.pool(verb.get("pool", Call("ball", (Int(2),))), G)
    tnode = verb.get("tuple")
    if tnode is None:
        raise SpecError("coinduce-check needs tuple= to draw regions from")
    regions = env.regions(tnode, G, "tuple")
    rng = random.Random(seed)
    pair = None
    if isinstance(G, groups.InfiniteDihedral) and isinstance(S.cs.subgroup, groups.Multiples) \
            and S.cs.subgroup.k == 1 and S.cs._override is None:
        pair = coinduction.DihedralPairSystem(S.base)
    nonempty = replay_fail = disagree = 0
    for _ in range(samples):
        q = systems.make_query((rng.choice(pool), rng.choice(regions))
                               for _ in range(rng.randint(1, 3)))
        w = S.emptiness(q)
        if w is not None:
            nonempty += 1
            if not S.replay(w, q):
                replay_fail += 1
        if pair is not None and (pair.emptiness(q) is None) != (w is None):
            disagree += 1
    return {"samples": samples, "nonempty": nonempty, "replay_failures": replay_fail,
            "differential": "dihedral_pair" if pair is not None else None,
            "disagreements": disagree, "ok": replay_fail == 0 and disagree == 0}, None


VERB_IMPL = {
    "indep": verb_indep,
    "maxindep": verb_maxindep,
    "refute": verb_refute,
    "entropy": verb_entropy,
    "weakmix": verb_weakmix,
    "x1verify": verb_x1verify,
    "coinduce-check": verb_coinduce_check,
}


def run_experiment(spec, timings=False):
    """Run a parsed spec; returns ``(report dict, optional table rows)``."""
    t0 = time.perf_counter()
    try:
        env = Env(spec)
        body, table = VERB_IMPL[spec.verb.name](env, spec.verb)
    except UnknownRegionError as exc:
        raise SpecError(str(exc)) from exc
    report = {
        "schema": SCHEMA,
        "verb": spec.verb.name,
        "spec": print_spec(spec),
        "budget": {"assignment_cap": independence.assignment_cap()},
        "result": body,
    }
    if timings:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    return report, table


def _table_text(report, table):
    if table is None:
        return None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p_star", "log_p_over_n"])
    w.writerows(table)
    return buf.getvalue()


def _emit(report, table, args):
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "csv", None):
        csv_text = _table_text(report, table)
        if csv_text is None:
            print("warning: this verb produces no table", file=sys.stderr)
        else:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write(csv_text)


def _verb_args(verb):
    required, optional = VERBS[verb]
    return list(required) + list(optional)


def build_parser():
    p = argparse.ArgumentParser(prog="coinduct", description="co-induction experiments")
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run a spec file")
    r.add_argument("file")
    r.add_argument("--out")
    r.add_argument("--csv")
    r.add_argument("--timings", action="store_true")
    for verb in VERB_IMPL:
        vp = sub.add_parser(verb, help=f"{verb} with declarations from --spec")
        vp.add_argument("--spec", help="file of declarations")
        for a in _verb_args(verb):
            vp.add_argument(f"--{a}", dest=f"v_{a}")
        vp.add_argument("--out")
        vp.add_argument("--csv")
        vp.add_argument("--timings", action="store_true")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "run":
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = ""
            if args.spec:
                with open(args.spec, encoding="utf-8") as fh:
                    text = fh.read()
            parts = [f"{a}={getattr(args, 'v_' + a)}" for a in _verb_args(args.cmd)
                     if getattr(args, "v_" + a) is not None]
            text = text.rstrip("\n") + "\n" + " ".join([args.cmd] + parts) + "\n"
        spec = parse_spec(text)
        report, table = run_experiment(spec, timings=args.timings)
        _emit(report, table, args)
    except SpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CoinductError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
