"""Command line front end: analyze, census, verify, extend, maltsev.

Exit codes: 0 ok, 1 a lemma check failed, 2 bad input, 3 a budget or cap was
hit before an answer was reached.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import census, fixtures, galois, perm, verify
from .commutator import classify_abelianness
from .congruence import congruence_lattice, is_distributive
from .errors import BudgetExhausted, CapExceeded, LeftqError, MalformedInput, NotLeftQuasigroup, SpecViolation
from .extension import central_extension, idempotence_check, latin_check, spec_from_dict
from .maltsev import MALTSEV_BUDGET, connectivity_report, maltsev_search, nilpotent_latin_suite
from .table import classify, load, parse, to_dict, to_lq

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
SECTIONS = ("classify", "groups", "lattice", "galois", "commutator", "maltsev")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _read_table(path):
    if path == "-":
        return parse(sys.stdin.read())
    try:
        return load(path)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------


def analyze_report(Q, sections=SECTIONS, budget=MALTSEV_BUDGET) -> dict:
    rep = {"order": Q.n, "table": to_dict(Q)["mul"]}
    summary = {}
    if "classify" in sections:
        c = classify(Q)
        rep["classify"] = c.as_dict()
        summary.update(projection=c.projection, quandle=c.quandle, latin=c.latin, idempotent=c.idempotent)
    if "groups" in sections:
        rep["groups"] = {
            "lmlt": perm.group_predicates(galois.lmlt(Q)).as_dict(),
            "dis": perm.group_predicates(galois.dis(Q)).as_dict(),
            "dis_center_order": perm.center(galois.dis(Q)).size,
        }
        conn = connectivity_report(Q)
        rep["connectivity"] = {k: conn[k] for k in ("connected", "connected_by_dis", "superconnected")}
        summary.update(semiregular=galois.is_semiregular(Q), connected=conn["connected"])
    if "lattice" in sections:
        L = congruence_lattice(Q)
        rep["lattice"] = {
            "size": len(L),
            "congruences": [a.to_list() for a in L],
            "distributive": is_distributive(L),
            "cayley_kernel": galois.cayley_kernel(Q).to_list(),
            "cayley": galois.is_cayley(Q),
            "sigma": galois.sigma(Q).to_list(),
        }
    if "galois" in sections:
        rep["galois"] = {"verify": galois.galois_verify(Q).as_dict(), "records": galois.galois_records(Q)}
    if "commutator" in sections:
        ab = classify_abelianness(Q)
        rep["commutator"] = ab.as_dict()
        summary.update(abelian=ab.abelian, nilpotent=ab.nilpotent)
    if "maltsev" in sections:
        rep["maltsev"] = maltsev_report(Q, budget)
        summary["maltsev"] = rep["maltsev"]["status"]
    rep["summary"] = summary
    return rep


def maltsev_report(Q, budget=MALTSEV_BUDGET) -> dict:
    r = maltsev_search(Q, budget)
    out = {"status": r.status, "term": r.term, "explored": r.explored, "reason": r.reason,
           "witness": list(r.witness) if r.witness else None}
    try:
        out["nilpotent_latin"] = nilpotent_latin_suite(Q, budget).as_dict()
    except LeftqError as exc:
        out["nilpotent_latin"] = {"skipped": str(exc)}
    return out


def _text_analyze(rep) -> str:
    lines = [f"order {rep['order']}"]
    for k, v in sorted(rep["summary"].items()):
        lines.append(f"  {k}: {v}")
    if "groups" in rep:
        g = rep["groups"]
        lines.append(f"  |LMlt| = {g['lmlt']['size']}, |Dis| = {g['dis']['size']}")
    if "lattice" in rep:
        lat = rep["lattice"]
        lines.append(f"  |Con| = {lat['size']}, distributive: {lat['distributive']}")
        lines.append(f"  Cayley kernel: {_blocks(lat['cayley_kernel'])}")
        lines.append(f"  sigma: {_blocks(lat['sigma'])}")
    if "commutator" in rep:
        lines.append(f"  center: {_blocks(rep['commutator']['center_blocks'])}")
    if "galois" in rep:
        v = rep["galois"]["verify"]
        lines.append(f"  galois connection: {v['checks']} checks, {len(v['violations'])} violations")
    if "maltsev" in rep:
        m = rep["maltsev"]
        lines.append(f"  Mal'tsev term: {m['status']}" + (f" {m['term']}" if m["term"] else ""))
    return "\n".join(lines)


def _blocks(blocks):
    return " | ".join(" ".join(map(str, b)) for b in blocks)


def cmd_analyze(args):
    Q = _read_table(args.path)
    sections = tuple(s.strip() for s in args.sections.split(",")) if args.sections else SECTIONS
    bad = [s for s in sections if s not in SECTIONS]
    if bad:
        raise MalformedInput(f"unknown section(s) {bad}; choose from {', '.join(SECTIONS)}")
    rep = analyze_report(Q, sections, args.budget)
    print(_dump(rep) if args.json else _text_analyze(rep))
    galois_bad = "galois" in rep and rep["galois"]["verify"]["violations"]
    if galois_bad:
        return EXIT_FAIL
    if "maltsev" in rep and rep["maltsev"]["status"] == "unknown":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_census(args):
    order = args.order if args.order is not None else args.order_pos
    if order is None:
        raise MalformedInput("census needs an order")
    cfg = census.CensusConfig(
        order=order,
        idempotent=args.idempotent,
        reduce=args.reduce,
        filters=census.parse_filters(args.filter),
        sample=args.sample,
        seed=args.seed,
    )
    res = census.run_census(cfg)
    d = res.as_dict()
    if args.limit is not None:
        d["instances"] = d["instances"][: args.limit]
    if args.json:
        print(_dump(d))
    else:
        what = "classes" if cfg.reduce else "tables"
        print(f"order {order}{' idempotent' if cfg.idempotent else ''}: total {res.total}"
              + (f", {res.classes} classes" if cfg.reduce else "")
              + f", {len(res.matched)} matching {what}")
        for inst in d["instances"]:
            print("  " + " / ".join(" ".join(map(str, r)) for r in inst["mul"])
                  + (f"  (class size {inst['class_size']})" if cfg.reduce else ""))
    return EXIT_OK


def _corpus(args):
    if args.table:
        return [_read_table(p) for p in args.table]
    if args.order is not None:
        cfg = census.CensusConfig(args.order, args.idempotent, args.reduce, sample=args.sample, seed=args.seed)
        return [Q for Q, _ in census.census_instances(cfg)]
    return list(fixtures.all_fixtures().values())


def cmd_verify(args):
    if args.replay:
        with open(args.replay) as fh:
            record = json.load(fh)
        witnesses = verify.replay(record)
        out = {"check": record["check"], "reproduced": bool(witnesses), "witnesses": witnesses[:5]}
        print(_dump(out) if args.json else f"{record['check']}: {'fail reproduced' if witnesses else 'passes'}")
        return EXIT_FAIL if witnesses else EXIT_OK
    verify.SEARCH_BUDGET = args.budget
    try:
        ids = verify.resolve(args.suite)
    except KeyError:
        raise MalformedInput(
            f"unknown suite {args.suite!r}; use 'all', a module name or one of: {', '.join(verify.REGISTRY)}"
        ) from None
    instances = _corpus(args)
    specs = verify.random_specs(args.specs, args.seed)
    results = [verify.run_check(i, instances, specs) for i in ids]
    if args.json:
        print(_dump([r.as_dict() for r in results]))
    else:
        for r in results:
            line = f"{r.verdict.upper():7s} {r.id}  ({r.in_scope}/{r.instances} in scope"
            line += f", {r.failures} failing" if r.failures else ""
            line += f", {r.unknown} undecided" if r.unknown else ""
            print(line + ")")
            if r.counterexample:
                print("        counterexample: " + json.dumps(r.counterexample, sort_keys=True))
    if any(r.verdict == "fail" for r in results):
        return EXIT_FAIL
    if any(r.verdict == "unknown" for r in results):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_extend(args):
    try:
        with open(args.spec) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {args.spec}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"bad JSON: {exc}") from None
    spec = spec_from_dict(data)
    E, kernel = central_extension(spec)
    idem, lat = idempotence_check(spec), latin_check(spec)
    if args.json:
        print(_dump({"table": to_dict(E), "kernel": kernel.to_list(),
                     "predicted": {"idempotent": idem, "latin": lat}}))
    else:
        comment = f"kernel of the projection: {kernel}\npredicted idempotent: {idem}\npredicted latin: {lat}"
        text = to_lq(E, comment)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_maltsev(args):
    Q = _read_table(args.path)
    rep = maltsev_report(Q, args.budget)
    if args.json:
        print(_dump(rep))
    else:
        print(f"Mal'tsev term: {rep['status']}" + (f" {rep['term']}" if rep["term"] else "")
              + (f" ({rep['reason']})" if rep["reason"] else "") + f"; {rep['explored']} vectors")
    return EXIT_BUDGET if rep["status"] == "unknown" else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="leftq", description="Finite left quasigroup workbench")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="report invariants of one table")
    a.add_argument("path", help=".lq or JSON file, or - for stdin")
    a.add_argument("--sections", help=f"comma list from {','.join(SECTIONS)}")
    a.add_argument("--budget", type=int, default=MALTSEV_BUDGET)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("census", help="enumerate small tables")
    c.add_argument("order_pos", nargs="?", type=int, metavar="order")
    c.add_argument("--order", type=int)
    c.add_argument("--idempotent", action="store_true")
    c.add_argument("--reduce", action="store_true", help="one representative per isomorphism class")
    c.add_argument("--filter", help="comma list such as semiregular,idempotent,not-quandle")
    c.add_argument("--sample", type=int, help="draw this many random tables instead of enumerating")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--limit", type=int, help="list at most this many instances")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="run lemma checks over a corpus")
    v.add_argument("suite", nargs="?", default="all", help="check id, module name or 'all'")
    v.add_argument("--table", action="append", help="check this table (repeatable)")
    v.add_argument("--order", type=int, help="use the census of this order as corpus")
    v.add_argument("--idempotent", action="store_true")
    v.add_argument("--reduce", action="store_true")
    v.add_argument("--sample", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--specs", type=int, default=20, help="random extension specs for extension checks")
    v.add_argument("--budget", type=int, default=verify.SEARCH_BUDGET, help="Mal'tsev search cap")
    v.add_argument("--replay", help="counterexample JSON to rerun")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extend", help="build a central extension from a JSON spec")
    e.add_argument("spec")
    e.add_argument("-o", "--output")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_extend)

    m = sub.add_parser("maltsev", help="search for a Mal'tsev term")
    m.add_argument("path")
    m.add_argument("--budget", type=int, default=MALTSEV_BUDGET)
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_maltsev)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, NotLeftQuasigroup, SpecViolation) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapExceeded, BudgetExhausted) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
