"""Replay the JSON fixture corpus shipped in isolat/corpus."""

from __future__ import annotations

import json
from importlib import resources

from .decision import MilnorProfile, SignatureTarget, engine
from .expr import parse_char_poly, parse_plain
from .intpoly import resultant
from .knots import TorusKnotSpec, realizable_indices, three_torus_sh, torus_alexander
from .obstruction import common_symmetric_factors, sh_group
from .realroots import m_of


def load_corpus() -> list[dict]:
    out = []
    for entry in sorted(resources.files("isolat.corpus").iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out.extend(json.loads(entry.read_text(encoding="utf-8")))
    return out


def _check(got, want) -> tuple[bool, str]:
    return got == want, f"got {got!r}, want {want!r}"


def run_fixture(fx: dict) -> tuple[bool, str]:
    kind = fx["kind"]
    if kind == "resultant":
        return _check(str(resultant(parse_plain(fx["f"]), parse_plain(fx["g"]))), fx["expect"])
    if kind == "common_factors":
        f, g, p = parse_plain(fx["f"]), parse_plain(fx["g"]), fx["prime"]
        have = {h.to_text() for h in common_symmetric_factors(f, g, p)}
        want = set(fx["expect_contains"])
        return want <= have, f"found {sorted(have)}, want {sorted(want)}"
    if kind == "common_gcd_factors":
        # Factors of gcd(f, g) mod p, self-reciprocal or not.
        from .fppoly import factor_mod, gcd_mod, reduce_mod

        f, g, p = parse_plain(fx["f"]), parse_plain(fx["g"]), fx["prime"]
        common = gcd_mod(reduce_mod(f, p), reduce_mod(g, p))
        have = {h.to_text() for h, _ in factor_mod(common).factors} if common.degree > 0 else set()
        want = set(fx["expect_contains"])
        return want <= have, f"found {sorted(have)}, want {sorted(want)}"
    if kind == "m":
        return _check(m_of(parse_char_poly(fx["poly"])), fx["expect"])
    if kind == "sh":
        sh = sh_group(parse_char_poly(fx["poly"]))
        ok, msg = _check(sh.rank, fx["expect_rank"])
        if ok and "expect_edges" in fx:
            edges = {f"{i + 1},{j + 1}": ps for (i, j), ps in sh.edges.items() if ps}
            ok, msg = _check(edges, fx["expect_edges"])
        return ok, msg
    if kind == "three_torus":
        return _check(three_torus_sh(*fx["primes"]).rank, fx["expect_rank"])
    if kind == "decide":
        F = parse_char_poly(fx["poly"])
        r, s = fx["signature"]
        rep = engine(F, fx.get("extended", False)).lattice(SignatureTarget(r, s))
        ok, msg = _check(rep.verdict, fx["expect"])
        if ok and "rule" in fx:
            ok, msg = _check(rep.rule, fx["rule"])
        return ok, msg
    if kind == "milnor":
        F = parse_char_poly(fx["poly"])
        r, s = fx["signature"]
        rep = engine(F).milnor(SignatureTarget(r, s), MilnorProfile(fx["profile"]))
        return _check(rep.verdict, fx["expect"])
    if kind == "knot_indices":
        u, v = fx["torus"]
        F = torus_alexander(TorusKnotSpec(u, v))
        rep = realizable_indices(F)
        top = F.degree - fx["bound_offset"]
        want = [i for i in range(-F.degree, F.degree + 1) if i % 8 == 0 and abs(i) <= top]
        return _check(rep.realizable_indices, want)
    return False, f"unknown fixture kind {kind!r}"


__all__ = ["load_corpus", "run_fixture"]
