"""Command-line front end.

Exit codes: 0 realizable (or success for informational commands),
1 not realizable (or a failed selftest), 2 undetermined, 64 usage or
input error, 70 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .arith import DEFAULT_RHO_ROUNDS, DEFAULT_TRIAL_LIMIT, factor_integer
from .decision import (
    NOT_REALIZABLE,
    REALIZABLE,
    UNDETERMINED,
    DecisionReport,
    MilnorProfile,
    SignatureTarget,
    engine,
)
from .errors import InternalInconsistency, IsolatError, ParseError
from .expr import parse_char_poly, parse_plain
from .fppoly import factor_mod, is_self_reciprocal, reduce_mod
from .intpoly import resultant, to_text
from .knots import TorusKnotSpec, knot_milnor_realizable, realizable_indices, torus_alexander
from .obstruction import FactoredCharPoly, ShGroup, common_symmetric_factors, sh_group, sh_rational_bounded
from .realroots import factor_m

SCHEMA_VERSION = 1
EXIT_OK, EXIT_NO, EXIT_UNDETERMINED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 64, 70
VERDICT_EXIT = {REALIZABLE: EXIT_OK, NOT_REALIZABLE: EXIT_NO, UNDETERMINED: EXIT_UNDETERMINED}

# Audit output lists the shared factors mod p only for modest degrees.
AUDIT_DEGREE = 400


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- serialization ---------------------------------------------------------


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed layout, no floats."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _poly_json(p) -> list[str]:
    return [str(c) for c in p.coeffs]


def _factors_json(F: FactoredCharPoly) -> list[dict]:
    out = []
    for i, f in enumerate(F.factors, 1):
        out.append({
            "index": i,
            "coefficients": _poly_json(f.poly),
            "multiplicity": f.mult,
            "cyclotomic_index": f.cyclotomic_index,
            "text": to_text(f.poly),
        })
    return out


def sh_json(sh: ShGroup, F: FactoredCharPoly | None = None, audit: bool = False) -> dict:
    edges = []
    for (i, j), primes in sorted(sh.edges.items()):
        item = {"pair": [i + 1, j + 1], "primes": [str(p) for p in primes]}
        if audit and F is not None and max(F.factors[i].degree, F.factors[j].degree) <= AUDIT_DEGREE:
            item["common_symmetric_factors"] = {
                str(p): [g.to_text() for g in common_symmetric_factors(F.factors[i].poly, F.factors[j].poly, p)]
                for p in primes if isinstance(p, int)
            }
        edges.append(item)
    return {
        "rank": sh.rank,
        "classes": [[i + 1 for i in cls] for cls in sh.classes],
        "edges": edges,
        "unresolved": [{"pair": [i + 1, j + 1], "cofactor": str(c)} for i, j, c in sh.unresolved],
        "upper_bound": sh.upper_bound,
    }


def report_json(rep: DecisionReport) -> dict:
    out = {
        "verdict": rep.verdict,
        "rule": rep.rule,
        "reason": rep.reason,
        "trust": rep.trust,
        "c1": None,
        "c2": None,
        "sh": None,
        "epsilon": None,
        "real_data": [a.to_list() for a in rep.real_data],
        "witness": rep.witness.to_list() if rep.witness is not None else None,
        "split": list(rep.split) if rep.split is not None else None,
    }
    if rep.c1 is not None:
        out["c1"] = {
            "at_one": str(rep.c1.at_one),
            "at_minus_one": str(rep.c1.at_minus_one),
            "product": str(rep.c1.product),
            "passed": rep.c1.passed,
        }
    if rep.c2 is not None:
        out["c2"] = {"m": rep.c2.m, "degree": rep.c2.degree, "failures": list(rep.c2.failures),
                     "passed": rep.c2.passed}
    if rep.sh is not None:
        out["sh"] = sh_json(rep.sh)
    if rep.epsilon is not None:
        out["epsilon"] = {
            "source": rep.epsilon.source,
            "total": rep.epsilon.total.to_list(),
            "per_prime": {str(p): v.to_list() for p, v in rep.epsilon.per_prime.items()},
        }
    return out


# -- argument helpers ------------------------------------------------------


def _pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must look like A,B, got {text!r}") from None
    return a, b


def _signature(text: str, F: FactoredCharPoly) -> SignatureTarget:
    r, s = _pair(text, "--signature")
    if r < 0 or s < 0:
        raise UsageError("signature entries must be nonnegative")
    if r + s != F.degree:
        raise UsageError(f"r + s = {r + s} but the polynomial has degree {F.degree}")
    return SignatureTarget(r, s)


def _profile(text: str, F: FactoredCharPoly) -> MilnorProfile:
    """'i:N,...' with 1-based factor indices; missing factors get 0."""
    counts = [0] * len(F)
    seen = set()
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        try:
            i, n = (int(x) for x in chunk.split(":"))
        except ValueError:
            raise UsageError(f"bad profile entry {chunk!r}; expected i:N") from None
        if not 1 <= i <= len(F) or i in seen or n < 0:
            raise UsageError(f"bad profile entry {chunk!r}")
        seen.add(i)
        counts[i - 1] = n
    return MilnorProfile(counts)


def _profile_signature(F: FactoredCharPoly, prof: MilnorProfile) -> SignatureTarget:
    m = sum(f.mult * factor_m(f) for f in F.factors)
    s = m + 2 * sum(prof.neg_pairs)
    if s > F.degree:
        raise UsageError("profile has more negative pairs than the degree allows")
    return SignatureTarget(F.degree - s, s)


# -- commands ----------------------------------------------------------------


def cmd_decide(args) -> tuple[int, dict, str]:
    F = parse_char_poly(args.poly)
    t = _signature(args.signature, F)
    rep = engine(F, args.extended, args.trial_limit, args.rho_rounds).lattice(t)
    body = {"input": {"poly": args.poly, "signature": [t.r, t.s], "extended": args.extended,
                      "factors": _factors_json(F)}}
    body.update(report_json(rep))
    return VERDICT_EXIT[rep.verdict], body, _verdict_line(rep)


def cmd_milnor(args) -> tuple[int, dict, str]:
    F = parse_char_poly(args.poly)
    prof = _profile(args.profile, F)
    t = _signature(args.signature, F) if args.signature else _profile_signature(F, prof)
    eng = engine(F, args.extended, args.trial_limit, args.rho_rounds)
    try:
        eng.check_profile(t, prof)
    except IsolatError as exc:
        raise UsageError(str(exc)) from None
    rep = eng.milnor(t, prof)
    body = {"input": {"poly": args.poly, "signature": [t.r, t.s], "profile": list(prof.neg_pairs),
                      "extended": args.extended, "factors": _factors_json(F)}}
    body.update(report_json(rep))
    return VERDICT_EXIT[rep.verdict], body, _verdict_line(rep)


def _verdict_line(rep: DecisionReport) -> str:
    line = f"{rep.verdict} (rule: {rep.rule})"
    return line + (f": {rep.reason}" if rep.reason else "")


def cmd_sh(args) -> tuple[int, dict, str]:
    F = parse_char_poly(args.poly)
    if args.rational:
        sh = sh_rational_bounded(F, args.bound)
        audit = False
    else:
        sh = sh_group(F, args.trial_limit, args.rho_rounds)
        audit = True
    info = sh_json(sh, F, audit)
    body = {"input": {"poly": args.poly, "rational": args.rational, "bound": args.bound,
                      "factors": _factors_json(F)}, "sh": info}
    lines = [f"rank {sh.rank}" + (" (upper bound)" if sh.upper_bound else ""),
             "classes " + " ".join("{" + ",".join(map(str, c)) + "}" for c in info["classes"])]
    for e in info["edges"]:
        if e["primes"]:
            lines.append(f"V{tuple(e['pair'])} = {{{', '.join(e['primes'])}}}")
    return EXIT_OK, body, "\n".join(lines)


def cmd_knot(args) -> tuple[int, dict, str]:
    if bool(args.torus) == bool(args.poly):
        raise UsageError("give exactly one of --torus and --poly")
    if args.torus:
        u, v = _pair(args.torus, "--torus")
        F = torus_alexander(TorusKnotSpec(u, v))
    else:
        F = parse_char_poly(args.poly)
    inp = {"torus": args.torus, "poly": args.poly, "factors": _factors_json(F)}
    if args.milnor is not None:
        prof = _profile(args.milnor, F)
        t = _profile_signature(F, prof)
        rep = knot_milnor_realizable(F, t, prof, args.extended)
        body = {"input": dict(inp, profile=list(prof.neg_pairs), signature=[t.r, t.s])}
        body.update(report_json(rep))
        return VERDICT_EXIT[rep.verdict], body, _verdict_line(rep)
    rep = realizable_indices(F, args.extended)
    body = {
        "input": inp,
        "degree": rep.degree,
        "realizable_indices": rep.realizable_indices,
        "witnesses": {str(k): list(v) for k, v in rep.witnesses.items()},
        "refused": {str(k): v for k, v in rep.refused.items()},
    }
    text = f"degree {rep.degree}; indices " + " ".join(map(str, rep.realizable_indices))
    if rep.refused:
        text += "\nundetermined: " + " ".join(map(str, rep.refused))
    return EXIT_OK, body, text


def cmd_resultant(args) -> tuple[int, dict, str]:
    f, g = parse_plain(args.f), parse_plain(args.g)
    res = resultant(f, g)
    fac = factor_integer(res, args.trial_limit, args.rho_rounds)
    body = {
        "input": {"f": args.f, "g": args.g},
        "resultant": str(res),
        "primes": {str(p): e for p, e in fac.primes.items()},
        "unresolved": [str(c) for c in fac.unresolved],
    }
    return EXIT_OK, body, str(res)


def cmd_factors_modp(args) -> tuple[int, dict, str]:
    f = parse_plain(args.poly)
    fac = factor_mod(reduce_mod(f, args.prime))
    items = [{"factor": g.to_text(), "coefficients": [str(c) for c in g.coeffs], "multiplicity": e,
              "self_reciprocal": is_self_reciprocal(g)} for g, e in fac.factors]
    body = {"input": {"poly": args.poly, "prime": args.prime}, "unit": str(fac.unit), "factors": items}
    text = "\n".join(f"({d['factor']})^{d['multiplicity']}" + (" symmetric" if d["self_reciprocal"] else "")
                     for d in items)
    return EXIT_OK, body, text


def cmd_selftest(args) -> tuple[int, dict, str]:
    from .selftest import load_corpus, run_fixture

    results = []
    lines = []
    for fx in load_corpus():
        ok, detail = run_fixture(fx)
        results.append({"name": fx["name"], "passed": ok, "detail": detail})
        lines.append(f"{'PASS' if ok else 'FAIL'} {fx['name']}" + ("" if ok else f": {detail}"))
    failed = sum(1 for r in results if not r["passed"])
    lines.append(f"{len(results) - failed}/{len(results)} fixtures passed")
    return (EXIT_OK if not failed else EXIT_NO), {"fixtures": results, "failed": failed}, "\n".join(lines)


# -- main --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--quiet", action="store_true", help="print nothing; the exit code carries the verdict")
    common.add_argument("--trial-limit", type=int, default=DEFAULT_TRIAL_LIMIT)
    common.add_argument("--rho-rounds", type=int, default=DEFAULT_RHO_ROUNDS)
    common.add_argument("--extended", action="store_true",
                        help="treat a missing class split as a proof of non-existence")

    top = _Parser(prog="isolat", description="Isometries of even unimodular lattices.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", parents=[common], help="decide one signature")
    p.add_argument("--poly", required=True)
    p.add_argument("--signature", required=True, metavar="R,S")
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("milnor", parents=[common], help="decide one Milnor profile")
    p.add_argument("--poly", required=True)
    p.add_argument("--profile", required=True, metavar="i:N,...")
    p.add_argument("--signature", metavar="R,S")
    p.set_defaults(run=cmd_milnor)

    p = sub.add_parser("sh", parents=[common], help="obstruction group and V-set audit")
    p.add_argument("--poly", required=True)
    p.add_argument("--rational", action="store_true", help="bounded upper bound for the rational group")
    p.add_argument("--bound", type=int, default=1000)
    p.set_defaults(run=cmd_sh)

    p = sub.add_parser("knot", parents=[common], help="knot indices or one Milnor profile")
    p.add_argument("--torus", metavar="U,V")
    p.add_argument("--poly")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--indices", action="store_true")
    mode.add_argument("--milnor", metavar="i:N,...")
    p.set_defaults(run=cmd_knot)

    p = sub.add_parser("resultant", parents=[common], help="resultant of two polynomials")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(run=cmd_resultant)

    p = sub.add_parser("factors-modp", parents=[common], help="factor a polynomial mod p")
    p.add_argument("--poly", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(run=cmd_factors_modp)

    p = sub.add_parser("selftest", parents=[common], help="replay the fixture corpus")
    p.set_defaults(run=cmd_selftest)
    return top


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    start = time.perf_counter_ns()
    try:
        code, body, text = args.run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=err)
        return EXIT_INTERNAL
    except IsolatError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE
    if args.quiet:
        return code
    if args.json:
        body = dict(body, schema_version=SCHEMA_VERSION, command=args.command,
                    elapsed_us=(time.perf_counter_ns() - start) // 1000)
        out.write(dumps(body))
    else:
        print(text, file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
