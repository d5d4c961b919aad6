"""Command-line front end.

Exit codes: 0 on success, 1 for computation errors (reported as a structured
error object) and for failed corpus verification, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, harness
from .arrangements import (LineArrangement, arrangement_mu_tau, characteristic_polynomial,
                           chi_factorization_check, intersection_points, read_arrangement)
from .errors import CurveError, NotNearlyFree
from .exact_linalg import GF, QQ, PrimeSampler
from .jacobian import FieldUsage, analyze
from .monodromy import PuiseuxSequence, le_delta, order_hypothesis
from .poly import Curve, parse
from .singular_locus import total_milnor


MAX_EXPANDED_DEGREE = 200


class UsageError(Exception):
    pass


def _field(args):
    """Field object, or None for the automatic choice."""
    if args.field == "qq":
        return QQ
    if args.field == "fp":
        if args.prime is not None:
            return GF(args.prime)
        return GF(PrimeSampler(args.seed).draw())
    if args.prime is not None:
        raise UsageError("--prime requires --field fp")
    return None


def _curve(args, text) -> Curve:
    f = parse(text)
    if f.degree > args.max_degree:
        raise UsageError(f"degree {f.degree} exceeds --max-degree {args.max_degree}")
    return Curve.from_poly(f, seed=args.seed)


def _fraction_str(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Commands; each returns (json_document, text_lines, exit_code)


def cmd_classify(args):
    c = _curve(args, args.polynomial)
    usage = FieldUsage("QQ")
    rep = analyze(c, field=_field(args), seed=args.seed, betti=not args.no_betti, usage=usage)
    cls = rep.classification
    mu = total_milnor(c, seed=args.seed).mu if args.milnor else None
    doc = {
        "input": str(c.f),
        "degree": rep.degree,
        "tau": cls.tau,
        "mu": mu,
        "mdr": cls.mdr,
        "ct": cls.ct,
        "st": cls.st,
        "hilbert": list(rep.hilbert.values),
        "nDims": list(rep.n_dims.values),
        "betti": [list(e) for e in rep.betti.entries] if rep.betti else None,
        "classification": {"kind": cls.kind, "d1": cls.d1, "d2": cls.d2, "b": cls.b,
                           "almost": cls.almost},
        "checks": dict(sorted(rep.checks.items())),
        "provenance": {"seed": args.seed, "prime": list(usage.primes) or None,
                       "field": usage.field},
    }
    if cls.witness:
        doc["classification"]["witness"] = list(cls.witness)
    label = cls.kind
    if cls.kind == "NearlyFree" and cls.almost:
        label += " (almost free)"
    lines = [f"curve: {c.f}", f"degree: {rep.degree}", f"kind: {label}"]
    if cls.exponents:
        lines.append(f"exponents: {cls.exponents}")
    if cls.b is not None:
        lines.append(f"b: {cls.b}")
    lines += [f"tau: {cls.tau}", f"mdr: {cls.mdr}", f"ct: {cls.ct}", f"st: {cls.st}"]
    if mu is not None:
        lines.append(f"mu: {mu}")
    lines += [f"hilbert: {list(rep.hilbert.values)}", f"nDims: {list(rep.n_dims.values)}"]
    if rep.betti:
        lines.append(f"resolution: {rep.betti.as_resolution()}")
    bad = [k for k, v in sorted(rep.checks.items()) if not v and k != "plateau_at_boundary"]
    lines.append("checks: " + ("all passed" if not bad else "FAILED " + ", ".join(bad)))
    lines.append(f"field: {usage.field}" + (f" primes {usage.primes}" if usage.primes else "")
                 + f" seed {args.seed}")
    return doc, lines, 0


def cmd_betti(args):
    c = _curve(args, args.polynomial)
    usage = FieldUsage("QQ")
    rep = analyze(c, field=_field(args), seed=args.seed, usage=usage)
    doc = {"degree": rep.degree, "betti": [list(e) for e in rep.betti.entries],
           "resolution": rep.betti.as_resolution(),
           "shape": {"kind": rep.shape.kind, "exponents": list(rep.shape.exponents),
                     "b": rep.shape.b},
           "provenance": {"seed": args.seed, "prime": list(usage.primes) or None,
                          "field": usage.field}}
    lines = [rep.betti.as_resolution()]
    for i, j, v in rep.betti.entries:
        lines.append(f"beta[{i},{j}] = {v}")
    return doc, lines, 0


def cmd_monodromy(args):
    try:
        ps = PuiseuxSequence.parse(args.pairs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    delta = le_delta(ps)
    doc = {"pairs": [list(p) for p in ps.pairs], "cyclotomic": {str(k): e for k, e in
                                                                 delta.multiplicities},
           "degree": delta.degree, "conventionSensitive": ps.convention_sensitive}
    lines = [f"Delta = {delta}", f"degree: {delta.degree}"]
    if delta.degree <= MAX_EXPANDED_DEGREE:
        doc["coefficients"] = delta.expand()
        lines.append(f"coefficients (low to high): {delta.expand()}")
    if ps.convention_sensitive:
        lines.append("note: several Puiseux pairs; result depends on the pair convention")
    if args.degree is not None:
        verdict = order_hypothesis(args.degree, [ps])
        doc["orderHypothesis"] = {"d": args.degree, "passed": verdict.passed,
                                  "reason": verdict.reason}
        lines.append(f"order hypothesis at d={args.degree}: {verdict}")
    return doc, lines, 0


def cmd_arrangement(args):
    if args.file:
        arr = read_arrangement(args.file)
    elif args.forms:
        arr = LineArrangement.from_forms([f for f in args.forms.split(";") if f.strip()])
    else:
        raise UsageError("give an arrangement file or --forms")
    if arr.degree > args.max_degree:
        raise UsageError(f"degree {arr.degree} exceeds --max-degree {args.max_degree}")
    chi = characteristic_polynomial(arr)
    pts = intersection_points(arr)
    rep = analyze(arr.curve(seed=args.seed), field=_field(args), seed=args.seed, betti=False)
    cls = rep.classification
    try:
        factor = chi_factorization_check(arr, cls)
    except NotNearlyFree:
        factor = None
    doc = {"degree": arr.degree,
           "points": [{"point": [_fraction_str(c) for c in p], "multiplicity": m}
                      for p, m in pts],
           "mu": arrangement_mu_tau(arr), "tau": cls.tau,
           "chi": {"b1": chi.b1, "b2": chi.b2},
           "classification": {"kind": cls.kind, "d1": cls.d1, "d2": cls.d2, "b": cls.b,
                              "almost": cls.almost},
           "chiFactorization": factor}
    lines = [f"lines: {arr.degree}", f"points: {len(pts)}",
             f"mu = tau from points: {doc['mu']} (jacobian tau {cls.tau})",
             f"chi(t) = {chi}",
             f"kind: {cls.kind}" + (f" {cls.exponents}" if cls.exponents else "")]
    if factor is None:
        lines.append("chi(t) - 1 = (t - d1)(t - d2 + 1): not applicable (not nearly free)")
    else:
        lines.append(f"chi(t) - 1 = (t - d1)(t - d2 + 1): {factor}")
    return doc, lines, 0


def _load_corpus(args):
    if args.file:
        return catalog.loads(Path(args.file).read_text())
    return catalog.corpus()


def cmd_corpus_verify(args):
    entries = [e for e in _load_corpus(args) if e.degree <= args.max_degree]
    results = harness.verify_corpus(entries, seed=args.seed, field=_field(args),
                                    workers=args.workers)
    doc = {"total": len(results), "passed": sum(r.ok for r in results),
           "results": [{"name": r.name, "ok": r.ok, "error": r.error,
                        "mismatches": [{"key": k, "expected": _plain(e), "computed": _plain(g)}
                                       for k, e, g in r.mismatches]} for r in results]}
    lines = []
    for r in results:
        line = f"{'PASS' if r.ok else 'FAIL'}  {r.name}"
        if r.error:
            line += f"  error: {r.error}"
        for k, e, g in r.mismatches:
            line += f"  {k}: expected {e}, got {g}"
        lines.append(line)
    lines.append(f"{doc['passed']}/{doc['total']} passed")
    return doc, lines, 0 if doc["passed"] == doc["total"] else 1


def cmd_corpus_export(args):
    text = catalog.dumps()
    if args.out:
        Path(args.out).write_text(text + "\n")
        return {"written": args.out}, [f"wrote {args.out}"], 0
    return json.loads(text), [text], 0


def _plain(v):
    if isinstance(v, dict):
        return {str(k): w for k, w in v.items()}
    if isinstance(v, tuple):
        return [_plain(w) for w in v]
    return v


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("auto", "qq", "fp"), default="auto",
                        help="coefficient field: automatic, rationals, or a prime field")
    common.add_argument("--prime", type=int, help="prime for --field fp")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="print one JSON document")
    common.add_argument("--max-degree", type=int, default=16)

    p = argparse.ArgumentParser(prog="nearlyfree",
                                description="Jacobian syzygies and freeness of plane curves")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="full invariant report")
    c.add_argument("polynomial")
    c.add_argument("--milnor", action="store_true", help="also compute the total Milnor number")
    c.add_argument("--no-betti", action="store_true", help="skip the Betti table")
    c.set_defaults(func=cmd_classify)

    b = sub.add_parser("betti", parents=[common], help="graded Betti numbers of M(f)")
    b.add_argument("polynomial")
    b.set_defaults(func=cmd_betti)

    m = sub.add_parser("monodromy", parents=[common], help="monodromy of a cusp")
    m.add_argument("--pairs", required=True, help='Puiseux pairs, e.g. "2,3" or "2,3;2,13"')
    m.add_argument("--degree", type=int, help="check the eigenvalue-order hypothesis at d")
    m.set_defaults(func=cmd_monodromy)

    a = sub.add_parser("arrangement", parents=[common], help="line arrangement invariants")
    a.add_argument("file", nargs="?", help="one linear form per line")
    a.add_argument("--forms", help='semicolon-separated forms, e.g. "x;y;z;x+y+z"')
    a.set_defaults(func=cmd_arrangement)

    cp = sub.add_parser("corpus", help="catalog verification and export")
    csub = cp.add_subparsers(dest="corpus_command", required=True)
    v = csub.add_parser("verify", parents=[common])
    v.add_argument("--file", help="corpus JSON (default: the built-in catalog)")
    v.add_argument("--workers", type=int, default=None, help="parallel processes")
    v.set_defaults(func=cmd_corpus_verify)
    e = csub.add_parser("export", parents=[common])
    e.add_argument("--out", help="output path (default: stdout)")
    e.set_defaults(func=cmd_corpus_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, lines, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except CurveError as exc:
        err = {"error": exc.to_dict()}
        if args.json:
            print(json.dumps(err, sort_keys=True))
        else:
            print(f"error [{exc.kind}]: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
