"""Command-line front end.

Exit codes: 0 no failed checks, 1 some check failed, 2 bad invocation,
3 spec parse error, 4 cap or truncation bound exceeded.
"""

import argparse
import hashlib
import json
import sys

from . import algebra, catalog, filters, pgraph, spielberg
from .errors import CapExceeded, SpecParseError, TruncationError
from .qlo import join_all, vee_closure
from .report import Report

SUITES = ("relations", "gaps", "theta", "decomp85", "decomposition", "norms", "spielberg", "grading")


class UsageError(Exception):
    pass


def _load(args):
    try:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read {}: {}".format(args.spec, exc))
    doc, graph = catalog.parse_spec(text, cap=args.cap, bound=args.bound)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return doc, graph, digest


def _representation(graph, flavor):
    if flavor == algebra.OMEGA and graph.truncated:
        if getattr(graph, "hybrid", None) is None:
            raise UsageError("the omega flavor needs a finite graph or a hybrid graph")
        return spielberg.omega_representation(graph)
    return algebra.Representation(graph, flavor)


def _theta_degrees(graph):
    gens = [graph.group.element(w) for w in graph.group.generators()]
    present = set(graph.degrees())
    return sorted((p for p in vee_closure(gens) if p in present), key=lambda p: p.sort_key())


def _norm_families(graph):
    gens = [graph.group.element(w) for w in graph.group.generators()]
    present = set(graph.degrees())
    top = join_all(gens)
    out = []
    for g in gens:
        if g not in present:
            continue
        if top in present and top != g:
            out.append([g, top])
        else:
            out.append([g])
    return out


def run_suite(graph, suite, flavor, seed):
    if suite == "validate":
        return pgraph.validate(graph)
    if suite == "spielberg":
        if getattr(graph, "hybrid", None) is None:
            raise UsageError("the spielberg suite needs a [hybrid] spec")
        R = _representation(graph, flavor)
        rep = spielberg.check_spielberg_relations(R)
        rep.extend(spielberg.verify_t4_hybrid(graph, R))
        rep.extend(spielberg.check_mce_closed_form(graph))
        return rep
    R = _representation(graph, flavor)
    if suite == "relations":
        rep = algebra.check_balanced_relations(R)
        rep.extend(algebra.check_path_relations(R))
        if R.exact:
            rep.extend(algebra.check_adjoint_formula(R))
        return rep
    if not R.exact and suite in ("gaps", "theta", "decomp85", "decomposition", "norms", "grading"):
        raise UsageError("suite {} needs a finite graph".format(suite))
    if suite == "gaps":
        return algebra.check_gap_dichotomy(R)
    if suite == "theta":
        return algebra.check_theta(R, _theta_degrees(graph))
    if suite in ("decomp85", "decomposition"):
        return algebra.check_decomposition(R)
    if suite == "norms":
        rep = Report("norm lower bound")
        for F in _norm_families(graph):
            sub = algebra.check_norm_lower_bound(R, F, seed=seed)
            for c in sub.checks:
                c.id += " F=" + ",".join(str(p) for p in F)
            rep.extend(sub)
        return rep
    if suite == "grading":
        return algebra.check_grading(graph, seed=seed, R=R)
    raise UsageError("unknown suite " + suite)


def report_document(rep, suite, digest, graph, seed):
    return {
        "suite": suite,
        "graph_hash": digest,
        "checks": [c.to_dict() for c in rep.checks],
        "bounds": None if graph.bound is None else str(graph.bound),
        "seed": seed,
    }


def emit_report(doc, fmt):
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = [
        "suite: {}".format(doc["suite"]),
        "graph: {}".format(doc["graph_hash"][:16]),
        "bounds: {}".format(doc["bounds"]),
        "seed: {}".format(doc["seed"]),
    ]
    failed = 0
    for c in doc["checks"]:
        lines.append(
            "{:<8} {:<28} checked={:<7} failed={:<5} skipped={:<6} {}".format(
                c["status"], c["id"], c["checked"], c["failed"], c["skipped"], c["anchor"]
            )
        )
        for w in c["witness"]:
            lines.append("         witness: {}".format(w))
        for k, v in c["notes"].items():
            lines.append("         {}: {}".format(k, v))
        failed += c["failed"]
    lines.append("{} violations".format(failed))
    return "\n".join(lines) + "\n"


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError("cannot write {}: {}".format(out, exc))


def cmd_checks(args, suite):
    _, graph, digest = _load(args)
    rep = run_suite(graph, suite, args.flavor, args.seed)
    doc = report_document(rep, suite, digest, graph, args.seed)
    _write(emit_report(doc, args.format), args.out)
    return 0 if rep.ok else 1


def cmd_mce(args):
    _, graph, _ = _load(args)
    try:
        mu, nu = (graph.path(p) for p in args.pair)
    except KeyError as exc:
        raise UsageError("unknown path id {}".format(exc))
    found = pgraph.mce(graph, mu, nu)
    print("MCE({}, {}) = {{{}}}".format(mu.id, nu.id, ", ".join(p.id for p in found)))
    return 0


def cmd_filters(args):
    _, graph, _ = _load(args)
    space = filters.enumerate_filters(graph, ultra_only=args.ultra, cap=args.cap)
    for U in space.filters:
        print("{:<22} {}".format(U.status, U))
    kind = "ultrafilters" if args.ultra else "filters"
    note = "" if space.exact else " (maximality relative to the bound)"
    print("{} {}{}".format(len(space.filters), kind, note))
    return 0


def _parser():
    p = argparse.ArgumentParser(prog="pgraph", description="P-graph verification suites")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("spec")
        sp.add_argument("--bound", default=None, help="override the spec file's bound")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--cap", type=int, default=catalog.DEFAULT_CAP)
        return sp

    v = common(sub.add_parser("validate", help="check the category and factorisation axioms"))
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", default=None)

    m = common(sub.add_parser("mce", help="minimal common extensions of two paths"))
    m.add_argument("--pair", nargs=2, required=True, metavar=("P1", "P2"))

    f = common(sub.add_parser("filters", help="list filters or ultrafilters"))
    f.add_argument("--ultra", action="store_true")

    c = common(sub.add_parser("check", help="run one verification suite"))
    c.add_argument("--suite", choices=SUITES, required=True)
    c.add_argument("--flavor", choices=(algebra.T, algebra.OMEGA), default=algebra.T)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--out", default=None)

    r = common(sub.add_parser("report", help="write a suite report to a file"))
    r.add_argument("--suite", choices=("validate",) + SUITES, default="validate")
    r.add_argument("--flavor", choices=(algebra.T, algebra.OMEGA), default=algebra.T)
    r.add_argument("--out", required=True)
    r.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.command == "validate":
            args.flavor = algebra.T
            return cmd_checks(args, "validate")
        if args.command == "check":
            return cmd_checks(args, args.suite)
        if args.command == "report":
            return cmd_checks(args, args.suite)
        if args.command == "mce":
            return cmd_mce(args)
        if args.command == "filters":
            return cmd_filters(args)
    except UsageError as exc:
        print("pgraph: error: {}".format(exc), file=sys.stderr)
        return 2
    except SpecParseError as exc:
        print("pgraph: spec error: {}".format(exc), file=sys.stderr)
        return 3
    except (CapExceeded, TruncationError) as exc:
        print("pgraph: bound exceeded: {}".format(exc), file=sys.stderr)
        return 4
    return 2


if __name__ == "__main__":
    sys.exit(main())
