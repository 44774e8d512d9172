"""Command line front-end: roots, check, decompose, interp.

Reports are JSON with sorted keys and no timings, so equal inputs give equal bytes.
Exit codes: 0 all checks pass, 1 a check failed, 2 usage error or refused instance.
"""

from __future__ import annotations

import argparse
import json
import random
import sys as _sys

import numpy as np

from .errors import ChevlocError, GroupTooLarge, NoIrreducible, NonUnitTorusParameter, NotPrime, ParseError, RankTooSmall
from .gauss import big_cell_factor, decode, gauss_decompose
from .group import (
    ChevalleyGroup,
    check_additivity,
    check_commutant,
    check_commutator_formula,
    check_torus_relation,
    enumerate_group,
    sl2_identity_check,
)
from .rings import make_ring, required_unit_message
from .roots import b_set, deletion_closure, format_root, parse_root, parse_system

SCHEMA = 1
SUITES = ("roots", "steinberg", "sl2", "gauss", "ej", "sandwich", "rootsub", "ring", "theta", "params", "commutant")
DEFAULT_CAP = 200_000


class UsageError(Exception):
    pass


def _r(a) -> str:
    return format_root(a)


# ---------------------------------------------------------------- suites


class Context:
    """One instance with a lazily enumerated table shared by the suites."""

    def __init__(self, system: str, ring: str, seed: int, cap: int, words: int):
        self.sys = parse_system(system)
        self.ring = make_ring(ring)
        self.G = ChevalleyGroup(self.sys, self.ring)
        self.seed = seed
        self.cap = cap
        self.words = words
        self._table = None
        self._kernel = None

    @property
    def table(self):
        if self._table is None:
            self._table = enumerate_group(self.sys, self.G, cap=self.cap)
        return self._table

    @property
    def kernel(self):
        from .definability import congruence_kernel

        if self._kernel is None:
            self._kernel = congruence_kernel(self.table)
        return self._kernel


def suite_roots(ctx: Context) -> dict:
    sys = ctx.sys
    bad = []
    for a in sys.ordered_roots:
        deleted, _ = deletion_closure(sys, a)
        if deleted != sys.roots - {a}:
            bad.append(_r(a))
    return {"passed": not bad, "roots_checked": len(sys.roots), "failures": bad}


def suite_steinberg(ctx: Context) -> dict:
    G = ctx.G
    a, t, c = check_additivity(G), check_torus_relation(G), check_commutator_formula(G)
    return {
        "passed": not (a or t or c),
        "exhaustive": True,
        "additivity_failures": len(a),
        "torus_failures": len(t),
        "commutator_failures": len(c),
    }


def suite_sl2(ctx: Context) -> dict:
    G, R = ctx.G, ctx.ring
    checked, bad = 0, []
    for g in ctx.sys.ordered_roots:
        for s in range(R.size):
            if not R.is_unit(R.sub(R.one, s)):
                continue
            checked += 1
            if not sl2_identity_check(ctx.sys, G, g, R.element(s)):
                bad.append([_r(g), R.format(s)])
    return {"passed": not bad, "cases": checked, "failures": bad}


def suite_gauss(ctx: Context) -> dict:
    G = ctx.G
    rng = random.Random(ctx.seed)
    bad = 0
    big = 0
    for _ in range(ctx.words):
        g = G.evaluate(G.random_word(rng, rng.randint(1, 12), "xwh"))
        f = gauss_decompose(g)
        if decode(G, f) != g:
            bad += 1
        if not any(f.u2):
            big += 1
    out = {"words": ctx.words, "round_trip_failures": bad, "u2_trivial": big}
    try:
        T = ctx.table
    except GroupTooLarge:
        out["uniqueness"] = "skipped (capped)"
        out["passed"] = bad == 0
        return out
    forms = set()
    count = 0
    for i in range(len(T)):
        try:
            forms.add(big_cell_factor(T.element(i)))
            count += 1
        except ChevlocError:
            continue
    out["big_cell_size"] = count
    out["distinct_forms"] = len(forms)
    out["passed"] = bad == 0 and count == len(forms)
    return out


def suite_ej(ctx: Context) -> dict:
    from .definability import e_j_by_formula, find_M_N

    T = ctx.table
    M, N = find_M_N(T)
    res = e_j_by_formula(T, M, N)
    k = ctx.kernel
    return {
        "passed": bool((res.mask == k).all()),
        "group_order": len(T),
        "kernel_order": int(k.sum()),
        "formula_order": len(res),
        "M": M,
        "N": N,
        "phi_count": res.params["phi_count"],
    }


def suite_sandwich(ctx: Context) -> dict:
    from .definability import check_sandwich

    rows = {}
    ok = True
    for a in ctx.sys.ordered_roots:
        rep = check_sandwich(ctx.table, a, ctx.kernel, strict=False)
        ok &= rep.passed
        rows[_r(a)] = {"middle": rep.middle, "root_subgroup": rep.root_subgroup, "units": rep.unit_part, "passed": rep.passed}
    return {"passed": ok, "group_order": len(ctx.table), "kernel_order": int(ctx.kernel.sum()), "roots": rows}


def suite_rootsub(ctx: Context) -> dict:
    from .definability import root_subgroup_definable, root_subgroup_mask

    rows = {}
    ok = True
    for a in ctx.sys.ordered_roots:
        ds = root_subgroup_definable(ctx.table, a, strict=False)
        eq = bool((ds.mask == root_subgroup_mask(ctx.table, a)).all())
        ok &= eq
        rows[_r(a)] = {"size": len(ds), "center_size": ds.params["center_size"], "equals_root_subgroup": eq}
    return {"passed": ok, "roots": rows}


def suite_ring(ctx: Context) -> dict:
    from .interp import ring_from_group, round_trip_ring

    try:
        table = ctx.table
        carrier = "Z(C(x_delta(1)))"
    except GroupTooLarge:
        table = None
        carrier = "constructed"
    _, rep = ring_from_group(ctx.G, table)
    _, rep2 = round_trip_ring(ctx.sys, ctx.ring)
    d1 = rep.to_dict()
    d1["carrier"] = carrier
    return {"passed": rep.passed and rep2.passed, "in_group": d1, "through_codes": rep2.to_dict()}


def suite_theta(ctx: Context) -> dict:
    from .interp import check_coded_group, theta_isomorphism

    _, trep = theta_isomorphism(ctx.table)
    crep = check_coded_group(ctx.table)
    return {"passed": trep.passed and crep.passed, "theta": trep.to_dict(), "coded_group": crep.to_dict()}


def suite_params(ctx: Context) -> dict:
    from .interp import true_parameters, verify_parameter_formula

    T = ctx.table
    true = true_parameters(ctx.G)
    rep = verify_parameter_formula(T, true)
    rejected = 0
    for a in ctx.sys.ordered_roots:
        cand = dict(true)
        cand[a] = ctx.G.identity
        if not verify_parameter_formula(T, cand).passed:
            rejected += 1
    return {
        "passed": rep.passed and rejected == len(ctx.sys.ordered_roots),
        "true_tuple": {
            "conjugacy": rep.conjugacy, "commutators": rep.commutators,
            "rings": rep.rings, "decomposition": rep.decomposition, "notes": rep.notes,
        },
        "corruptions": len(ctx.sys.ordered_roots),
        "corruptions_rejected": rejected,
    }


def suite_commutant(ctx: Context) -> dict:
    rep = check_commutant(ctx.sys, ctx.G, cap=ctx.cap)
    return {
        "passed": rep.passed, "e_order": rep.e_order, "g_order": rep.g_order,
        "width": rep.width, "cumulative_sizes": rep.widths,
    }


SUITE_FUNCS = {
    "roots": suite_roots, "steinberg": suite_steinberg, "sl2": suite_sl2, "gauss": suite_gauss,
    "ej": suite_ej, "sandwich": suite_sandwich, "rootsub": suite_rootsub, "ring": suite_ring,
    "theta": suite_theta, "params": suite_params, "commutant": suite_commutant,
}


def run_suites(ctx: Context, names) -> dict:
    out = {}
    for name in names:
        try:
            res = SUITE_FUNCS[name](ctx)
            res["status"] = "pass" if res.pop("passed") else "fail"
        except GroupTooLarge as e:
            res = {"status": "skipped (capped)", "reason": str(e)}
        out[name] = res
    return out


# ---------------------------------------------------------------- commands


def _parse_suites(text: str) -> list[str]:
    if text == "all":
        return list(SUITES)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown or not names:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)} or all")
    return names


def _refusal(sys, ring) -> str | None:
    return required_unit_message(ring, sys)


def cmd_roots(args) -> tuple[dict, int]:
    sys = parse_system(args.system)
    alphas = [parse_root(args.alpha, sys)] if args.alpha else list(sys.ordered_roots)
    rows = []
    ok = True
    for a in alphas:
        deleted, trace = deletion_closure(sys, a)
        full = deleted == sys.roots - {a}
        ok &= full
        rows.append({
            "alpha": _r(a),
            "b_set": sorted(_r(b) for b in b_set(sys, a)),
            "trace": [{"root": _r(d.root), "rule": d.rule, "witness": _r(d.witness)} for d in trace],
            "full_deletion": full,
        })
    report = {
        "command": "roots",
        "system": sys.name,
        "roots": [_r(a) for a in sys.ordered_roots],
        "root_count": len(sys.roots),
        "alphas": rows,
        "passed": ok,
    }
    return report, 0 if ok else 1


def cmd_check(args) -> tuple[dict, int]:
    names = _parse_suites(args.suites)
    ctx = Context(args.system, args.ring, args.seed, args.cap, args.words)
    base = {"command": "check", "system": ctx.sys.name, "ring": ctx.ring.name, "seed": args.seed, "cap": args.cap}
    msg = _refusal(ctx.sys, ctx.ring)
    if msg:
        return {**base, "refused": f"required unit missing: {msg}", "passed": False}, 2
    results = run_suites(ctx, names)
    ok = all(r["status"] != "fail" for r in results.values())
    return {**base, "suites": results, "passed": ok}, 0 if ok else 1


def cmd_decompose(args) -> tuple[dict, int]:
    sys = parse_system(args.system)
    ring = make_ring(args.ring)
    msg = _refusal(sys, ring)
    if msg:
        return {"command": "decompose", "refused": f"required unit missing: {msg}", "passed": False}, 2
    G = ChevalleyGroup(sys, ring)
    g = G.parse_word(args.word or "")
    form = gauss_decompose(g)
    ok = decode(G, form) == g
    report = {
        "command": "decompose",
        "system": sys.name,
        "ring": ring.name,
        "word": g.format_word(),
        "form": json.loads(form.to_json(ring)),
        "recomposes": ok,
        "passed": ok,
    }
    return report, 0 if ok else 1


def cmd_interp(args) -> tuple[dict, int]:
    ctx = Context(args.system, args.ring, args.seed, args.cap, 0)
    base = {"command": "interp", "system": ctx.sys.name, "ring": ctx.ring.name, "direction": args.direction}
    msg = _refusal(ctx.sys, ctx.ring)
    if msg:
        return {**base, "refused": f"required unit missing: {msg}", "passed": False}, 2
    suite = {"ring": "ring", "group": "theta", "params": "params"}[args.direction]
    results = run_suites(ctx, [suite])
    ok = results[suite]["status"] != "fail"
    return {**base, "result": results[suite], "passed": ok}, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chevloc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ring=True):
        sp.add_argument("--system", required=True, help="root system, e.g. A2, B2, G2")
        if ring:
            sp.add_argument("--ring", required=True, help="ring descriptor: zmod:4, gf:9, dual:2")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest group order to enumerate")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    sp = sub.add_parser("roots", help="root list, B-set and deletion trace")
    common(sp, ring=False)
    sp.add_argument("--alpha", help='root literal such as "[1,0]"; all roots if omitted')

    sp = sub.add_parser("check", help="run verification suites")
    common(sp)
    sp.add_argument("--suites", default="all", help=f"comma list of {', '.join(SUITES)} or all")
    sp.add_argument("--words", type=int, default=1000, help="random words for the gauss suite")

    sp = sub.add_parser("decompose", help="Gauss decomposition of a generator word")
    common(sp)
    sp.add_argument("--word", default="", help='e.g. "x[0,-1](1) * x[1,0](2)"')

    sp = sub.add_parser("interp", help="interpretation round trips")
    common(sp)
    sp.add_argument("--direction", required=True, choices=["ring", "group", "params"])
    return p


COMMANDS = {"roots": cmd_roots, "check": cmd_check, "decompose": cmd_decompose, "interp": cmd_interp}


def render(report: dict) -> str:
    return json.dumps({"schema": SCHEMA, **report}, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = COMMANDS[args.command](args)
    except (ParseError, UsageError, NonUnitTorusParameter, RankTooSmall, NotPrime, NoIrreducible, ValueError) as e:
        print(f"chevloc {args.command}: {e}", file=_sys.stderr)
        return 2
    except ChevlocError as e:
        report, code = {"command": args.command, "error": f"{type(e).__name__}: {e}", "passed": False}, 1
    text = render(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
