"""``depthlab`` command line.

Exit codes: 0 success, 1 mathematical failure (a violated check or a
failing corpus instance), 2 input or usage error, 3 refused hypothesis.
"""

import argparse
import json
import math
import random
import sys

from . import checks
from .algebra import InhomogeneousError, PolynomialSyntaxError, StructuralError
from .corpus import corpus_files, corpus_session, exit_code, resolve_file, run_corpus, run_instance
from .homology import ext, tor
from .invariants import complexity_estimate, depth_module
from .reducing import search_reducing_sequence
from .resolve import minimal_free_resolution
from .session import DescriptionError, Session

SCHEMA = 1


class UsageError(Exception):
    pass


def _clean(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf"
        return round(obj, 9)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(payload):
    return json.dumps(_clean({"schema": SCHEMA, **payload}), sort_keys=True, indent=2, ensure_ascii=False)


def _emit(args, payload, summary):
    text = dumps(payload)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(summary)
    else:
        print(text)


def _session(args):
    return Session(resolve_file(args.file))


def _module(session, name):
    try:
        session.desc.module(name)
    except KeyError:
        raise UsageError(f"unknown module {name!r}; defined: {', '.join(m.name for m in session.desc.modules)}")
    return session.module(name)


def _bound(args, session):
    return args.bound if args.bound is not None else session.ring.dim + 6


# -- commands --------------------------------------------------------------------------

def cmd_resolve(args):
    s = _session(args)
    M = _module(s, args.module)
    bound = args.bound if args.bound is not None else 10
    res = minimal_free_resolution(M, bound, over=args.ring)
    table = res.betti()
    payload = {"command": "resolve", "module": args.module, "ring": args.ring, "resolution": res.to_json(),
               "betti_table": str(table).splitlines()}
    if len(table.totals()) >= 4:
        payload["complexity"] = complexity_estimate(table).to_json()
    _emit(args, payload, str(table))
    return 0


def _homology_payload(mods):
    out = []
    for i, H in enumerate(mods):
        out.append({"index": i, "rank": H.rank, "twists": list(H.twists), "relations": H.relation_matrix()})
    return out


def cmd_tor(args):
    s = _session(args)
    M, N = _module(s, args.M), _module(s, args.N)
    bound = _bound(args, s)
    T = tor(M, N, bound)
    q = max([i for i in range(1, bound + 1) if T[i].rank] or [0])
    payload = {"command": "tor", "M": args.M, "N": args.N, "bound_B": bound, "tor": _homology_payload(T),
               "q": {"value": q, "certified_below": bound, "saturated": q == bound}}
    _emit(args, payload, f"Tor ranks {[t.rank for t in T]}, q = {q} (certified below {bound})")
    return 0


def cmd_ext(args):
    s = _session(args)
    M, N = _module(s, args.M), _module(s, args.N)
    bound = _bound(args, s)
    E = ext(M, N, bound)
    p = max([i for i in range(bound + 1) if E[i].rank] or [0])
    payload = {"command": "ext", "M": args.M, "N": args.N, "bound_B": bound, "ext": _homology_payload(E),
               "p": {"value": p, "certified_below": bound, "saturated": p == bound}}
    _emit(args, payload, f"Ext ranks {[e.rank for e in E]}, p = {p} (certified below {bound})")
    return 0


def cmd_depth(args):
    s = _session(args)
    M = _module(s, args.module)
    rep = depth_module(M)
    payload = {"command": "depth", "module": args.module, "depth": rep.to_json(),
               "ring": {"dim": s.ring.dim, "depth": s.ring.depth, "cohen_macaulay": s.ring.dim == s.ring.depth}}
    v = "inf" if rep.value == math.inf else rep.value
    _emit(args, payload, f"depth {args.module} = {v}")
    return 0


def cmd_check(args):
    s = _session(args)
    try:
        inst = s.desc.instance(args.instance)
    except KeyError:
        raise UsageError(f"unknown instance {args.instance!r}")
    if args.mode or args.bound is not None:
        opts = [(k, v) for k, v in inst.options if not (k == "mode" and args.mode) and
                not (k == "bound" and args.bound is not None)]
        if args.mode:
            opts.append(("mode", args.mode))
        if args.bound is not None:
            opts.append(("bound", str(args.bound)))
        inst = type(inst)(inst.name, tuple(opts), inst.line)
    report = run_instance(s, inst)
    _emit(args, {"command": "check", **report}, f"{inst.name}: {report['verdict']}")
    return exit_code(report["verdict"])


def cmd_search(args):
    s = _session(args)
    M = _module(s, args.module)
    budgets = dict(max_r=args.max_r, max_n=args.max_n, max_ab=args.max_ab, pd_bound=args.pd_bound,
                   class_budget=args.class_budget, min_n=args.min_n)
    seq = search_reducing_sequence(M, **budgets)
    payload = {"command": "search-redpd", "module": args.module, "budgets": budgets}
    if seq is None:
        payload["result"] = "no certificate within budgets"
        _emit(args, payload, "no certificate within budgets")
        return 3
    payload["result"] = seq.to_json()
    _emit(args, payload, f"red-pd({args.module}) <= {seq.length}")
    return 0


def _random_instances(seed, count):
    """Seeded derived-formula checks on pairs of corpus modules over CM rings."""
    rng = random.Random(seed)
    pool = []
    for fname in corpus_files():
        s = corpus_session(fname)
        if s.ring.dim != s.ring.depth or s.ring.nvars > 3:
            continue
        for m in s.desc.modules:
            pool.append((fname, m.name))
    out = []
    for _ in range(count):
        fname, a = rng.choice(pool)
        s = corpus_session(fname)
        b = rng.choice([m.name for m in s.desc.modules])
        M, N = s.module(a), s.module(b)
        if M.is_zero() or N.is_zero():
            continue
        rep = checks.depth_formula_check(M, N, s.ring.dim + 4, "derived")
        ok = rep.verdict != "violated"
        out.append({"instance": f"random:{fname}:{a}:{b}", "check": "depth-formula", "verdict": rep.verdict,
                    "passed": ok})
    return out


def cmd_corpus(args):
    pattern = None if args.all else args.name
    if pattern is None and not args.all:
        raise UsageError("pass --all or --name PATTERN")
    reports = run_corpus(pattern)
    if args.seed is not None and args.random:
        reports += _random_instances(args.seed, args.random)
    if not reports:
        print(f"no instances match {pattern!r}", file=sys.stderr)
        return 2
    width = max(len(r["instance"]) for r in reports)
    lines = [f"{r['instance']:<{width}}  {r['verdict']:<14}  {'pass' if r['passed'] else 'FAIL'}" for r in reports]
    failed = sum(not r["passed"] for r in reports)
    lines.append(f"{len(reports) - failed}/{len(reports)} instances passed")
    payload = {"command": "corpus", "pattern": pattern, "instances": reports, "failed": failed}
    if args.json:
        _emit(args, payload, "\n".join(lines))
    else:
        print("\n".join(lines))
    return 1 if failed else 0


# -- parser -----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="depthlab", description="Homological invariants and depth formula checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, bound=True):
        sp.add_argument("--json", metavar="OUT", help="write the JSON report to OUT")
        sp.add_argument("--seed", type=int, default=None, help="seed for randomized runs")
        if bound:
            sp.add_argument("--bound", type=int, default=None, help="truncation bound B")

    sp = sub.add_parser("resolve", help="minimal free resolution and Betti table")
    sp.add_argument("file")
    sp.add_argument("module")
    sp.add_argument("--ring", choices=("quotient", "ambient"), default="quotient")
    common(sp)
    sp.set_defaults(func=cmd_resolve)

    for name, func in (("tor", cmd_tor), ("ext", cmd_ext)):
        sp = sub.add_parser(name, help=f"{name.capitalize()} modules up to the bound")
        sp.add_argument("file")
        sp.add_argument("M")
        sp.add_argument("N")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("depth", help="depth of a module")
    sp.add_argument("file")
    sp.add_argument("module")
    common(sp, bound=False)
    sp.set_defaults(func=cmd_depth)

    sp = sub.add_parser("check", help="run a named instance")
    sp.add_argument("file")
    sp.add_argument("instance")
    sp.add_argument("--mode", choices=("classic", "derived"), default=None)
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("search-redpd", help="bounded search for a reducing pd-sequence")
    sp.add_argument("file")
    sp.add_argument("module")
    sp.add_argument("--max-r", type=int, default=1)
    sp.add_argument("--max-n", type=int, default=1)
    sp.add_argument("--max-ab", type=int, default=4)
    sp.add_argument("--min-n", type=int, default=0)
    sp.add_argument("--pd-bound", type=int, default=None)
    sp.add_argument("--class-budget", type=int, default=256)
    common(sp, bound=False)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("corpus", help="run the shipped corpus")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--name", metavar="PATTERN")
    sp.add_argument("--random", type=int, default=0, metavar="K", help="add K seeded random checks (needs --seed)")
    common(sp, bound=False)
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except (DescriptionError, UsageError, PolynomialSyntaxError, InhomogeneousError, StructuralError) as e:
        print(f"depthlab: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"depthlab: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
