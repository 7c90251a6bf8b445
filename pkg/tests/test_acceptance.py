"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
are produced; a summary is also printed at the end of any pytest run that
includes this module.
"""

import functools
import random
import time

from expr_corpus import CORPUS
from oracles import free_algebra_relations, rewrite_words

from weylbrauer.azalg import (
    azumaya_check,
    diffop_representation,
    matrix_algebra,
    opposite,
    restricted_weyl_algebra,
    tensor_over_R,
    verify_by_generators,
    weyl_structure_constants,
)
from weylbrauer.brauer import (
    br_compose,
    br_inverse,
    class_order,
    omega_algebra,
    omega_class,
    quaternion,
    tensor_square_relations,
    verify_group_law_concretely,
    verify_opposite_iso,
)
from weylbrauer.cli.suites import dual_numbers, run_suite
from weylbrauer.dpic import non_surjectivity_witnesses
from weylbrauer.envs import TensorSquare
from weylbrauer.expr import parse, to_text
from weylbrauer.ring.fields import PrimeField, QuadraticField
from weylbrauer.ring.poly import PolyRing
from weylbrauer.weyl import WeylContext

RESULTS: dict[int, str] = {}
PARAMS = ((3, 1), (5, 1), (3, 2))


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def guarded(number: int):
    """Record a FAIL line when the body raises instead of returning."""

    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.monotonic()
            try:
                ok, detail = fn()
            except Exception as exc:
                RESULTS[number] = f"criterion {number}: FAIL - {type(exc).__name__}: {exc}"
                print(RESULTS[number])
                raise
            record(number, ok, f"{detail} [{time.monotonic() - t0:.1f}s]")

        return run

    return wrap


@functools.lru_cache(maxsize=None)
def group_law_certificate(p, n, c, cp):
    return verify_group_law_concretely(p, n, c, cp)


# ---------------------------------------------------------------------------


@guarded(1)
def test_criterion_1_weyl_relations():
    t0 = time.monotonic()
    ok = True
    checked = 0
    for p, n in PARAMS:
        m = 2 * n
        for c in range(1, p):
            for cp in range(1, p):
                if (c + cp) % p == 0:
                    continue
                rels = tensor_square_relations(p, n, c, cp)
                counts = {f: sum(r["rel"] == f for r in rels) for f in "abcde"}
                ok &= counts == {"a": m * m, "b": m * m, "c": m * m, "d": m, "e": m}
                ok &= all(r["holds"] for r in rels)
                checked += len(rels)
        # (d) and (e) at c = c' = 1 recomputed by hand: zeta_i^p = 2^omega_i z_i, alpha_i^p = 0
        ts = TensorSquare(p, n)
        ctx = WeylContext(p, n)
        zero = ((0,) * m, (0,) * m)
        for i in range(1, m + 1):
            eps, om = ctx.eps(i), ctx.omega(i)
            zeta = ts.parse(f"inv(2)^{eps}*(x{i} + y{i})")
            alpha = ts.parse(f"inv(2)^{eps}*(x{i} - y{i})")
            ok &= ts.reduce(zeta**p) == {zero: ctx.center.gen(i - 1).scale(pow(2, om, p))}
            ok &= ts.reduce(alpha**p) == {}
    # the A_2n bridge against structure constants, where both are affordable
    for c, cp in ((1, 1), (2, 2)):
        ok &= tensor_square_relations(3, 1, c, cp) == free_algebra_relations(3, 1, c, cp)
    elapsed = time.monotonic() - t0
    ok &= elapsed < 30
    return ok, f"{checked} relation instances over (p,n) in {list(PARAMS)} hold; runtime {elapsed:.1f}s < 30s"


@guarded(2)
def test_criterion_2_azumaya():
    F3 = PolyRing(PrimeField(3), 0)
    cases = [
        ("A_1(F_3)", weyl_structure_constants(3, 1), True),
        ("M_2(F_3)", matrix_algebra(2, F3), True),
        ("M_3(F_3)", matrix_algebra(3, F3), True),
        ("F_3[u]/(u^2)", dual_numbers(F3), False),
    ]
    ok = True
    parts = []
    for label, alg, expected in cases:
        cert = azumaya_check(alg)
        rep = cert.det_report
        ok &= cert.is_azumaya == expected
        ok &= sorted(rep.ran()) == ["bareiss", "grid"] and rep.agree is True
        parts.append(f"{label}: {'azumaya' if cert.is_azumaya else 'not azumaya'} via {'+'.join(rep.ran())}")
    # with no time budget the grid strategy completes alone and says so
    fallback = azumaya_check(matrix_algebra(3, F3), budget_seconds=0.0)
    ok &= fallback.is_azumaya and fallback.det_report.ran() == ["grid"]
    ok &= fallback.det_report.strategies["bareiss"].startswith("skipped")
    parts.append("budget 0: grid only, bareiss reported skipped")
    return ok, "; ".join(parts)


@guarded(3)
def test_criterion_3_group_law_certificate():
    cert = group_law_certificate(3, 1, 1, 1)
    d = diffop_representation(3)
    ok = cert.passed and cert.verdict.is_hom and bool(cert.verdict.is_iso)
    ok &= cert.source.rank == cert.target.rank == 81
    ok &= cert.extras["diffop"]["passed"]
    ok &= bool(d.verdict.is_iso) and d.rank_of_image == 9
    return ok, f"{cert.claim}: hom and iso ({cert.verdict.iso_witness['method']}); M_3 step via diffop rank {d.rank_of_image}"


@guarded(4)
def test_criterion_4_group_law_and_order():
    ok = True
    pairs = 0
    for p in (3, 5):
        for n in (1, 2):
            ok &= omega_class(p, n, 0).is_trivial
            for c in range(p):
                ok &= br_compose(omega_class(p, n, c), br_inverse(omega_class(p, n, c))).is_trivial
                ok &= class_order(omega_class(p, n, c)) == (p if c else 1)
                for cp in range(p):
                    ok &= br_compose(omega_class(p, n, c), omega_class(p, n, cp)) == omega_class(p, n, c + cp)
                    pairs += 1
    opp = {p: verify_opposite_iso(p, 1).passed for p in (3, 5)}
    ok &= all(opp.values())
    concrete = group_law_certificate(5, 1, 2, 1)
    ok &= concrete.passed
    return ok, (
        f"{pairs} pairs additive with identity omega(0), order p for c != 0; "
        f"opposite certificates (3,1) and (5,1) pass; concrete (5,1,c=2,c'=1) certificate passes"
    )


@guarded(5)
def test_criterion_5_csa_quaternion():
    t0 = time.monotonic()
    rep = run_suite("csa-quaternion", {})
    ok = rep.verdict == "pass" and all(c.status == "pass" for c in rep.checks)
    by_claim = {c.claim: c.witness for c in rep.checks}
    groups = by_claim["DPic(A) = Z and DPic(K) = Z x Z/2"]
    torsion = by_claim["torsion parts differ: DPic(A) is not DPic(K)"]
    ok &= groups["DPic(A)"]["describe"] == "Z" and groups["DPic(K)"]["describe"] == "Z x Z/2"
    ok &= torsion == {"torsion(DPic(A))": "1", "torsion(DPic(K))": "Z/2"}
    elapsed = time.monotonic() - t0
    ok &= elapsed < 5
    return ok, f"{len(rep.checks)} checks pass; DPic(A) = Z, DPic(K) = Z x Z/2, torsion 1 vs Z/2"


@guarded(6)
def test_criterion_6_dpic_group_laws():
    hashes = []
    ok = True
    elapsed = 0.0
    for _ in range(2):
        t0 = time.monotonic()
        a = run_suite("dpic-axioms", {"seed": 0, "cases": 500})
        b = run_suite("shift-laws", {"seed": 0, "cases": 500})
        elapsed = time.monotonic() - t0
        ok &= a.verdict == b.verdict == "pass"
        ok &= all(c.status == "pass" for c in a.checks + b.checks)
        hashes.append((a.determinism_hash(), b.determinism_hash()))
    ok &= hashes[0] == hashes[1]
    other = run_suite("dpic-axioms", {"seed": 1, "cases": 500}).determinism_hash()
    ok &= other != hashes[0][0]
    ok &= elapsed < 10
    return ok, f"500 cases: associativity, identity, inverses, action law, shift additivity; one run {elapsed:.1f}s; hashes stable"


@guarded(7)
def test_criterion_7_non_surjectivity():
    t0 = time.monotonic()
    ws = non_surjectivity_witnesses(3, 1)
    ok = len(ws) == 2
    for w in ws:
        chain = w["justification"]
        ok &= chain["premise"]["machine_checked"] and chain["premise"]["pairs_checked"] == 1000
        ok &= bool(chain["deduction"])
    elapsed = time.monotonic() - t0
    ok &= elapsed < 10
    labels = ", ".join(f"{w['label']} ({w['kind']})" for w in ws)
    return ok, f"2 witnesses: {labels}; each with a 1000-pair domain certificate and deduction"


@guarded(8)
def test_criterion_8_kernel_soundness():
    ok = True
    # weyl-pbw: random associativity and unit, plus the rewriting oracle on random words
    rng = random.Random(0)
    for p, n in PARAMS:
        ctx = WeylContext(p, n)
        for _ in range(30):
            a, b, c = (ctx.random_element(rng) for _ in range(3))
            ok &= (a * b) * c == a * (b * c)
            ok &= ctx.one() * a == a == a * ctx.one()
            w = tuple(rng.randint(1, 2 * n) for _ in range(rng.randint(0, 5)))
            prod = ctx.one()
            for g in w:
                prod = prod * ctx.gen(g)
            ok &= dict(prod.terms) == rewrite_words(p, n, {w: 1})
    # every kind of FreeAlgebra the package builds
    K = QuadraticField(2)
    algebras = []
    for p, n in PARAMS:
        A = weyl_structure_constants(p, n)
        algebras += [A, opposite(A), matrix_algebra(p**n, A.base)]
        algebras += [omega_algebra(p, n, c, A) for c in range(2, p)]
    F3 = PolyRing(PrimeField(3), 0)
    algebras += [matrix_algebra(m, F3) for m in (1, 2, 3)] + [dual_numbers(F3)]
    algebras += [quaternion(-1, -1), quaternion(-1, -K.sqrt, K), quaternion(1, 1)]
    algebras += [restricted_weyl_algebra(3), restricted_weyl_algebra(5), diffop_representation(3).hom.target]
    A31 = weyl_structure_constants(3, 1)
    algebras.append(tensor_over_R(A31, A31))
    for cert in (group_law_certificate(3, 1, 1, 1), group_law_certificate(5, 1, 2, 1), verify_opposite_iso(5, 1)):
        algebras += [cert.source, cert.target]
    largest = 0
    for X in algebras:
        info = X.verify() if X.rank <= 81 else verify_by_generators(X)
        ok &= info["unit"]
        largest = max(largest, X.rank)
    # parser fixed point
    ok &= len(CORPUS) == 50
    for text in CORPUS:
        printed = to_text(parse(text))
        ok &= parse(printed) == parse(text) and to_text(parse(printed)) == printed
    return ok, f"weyl-pbw random laws on {list(PARAMS)}; {len(algebras)} algebras up to rank {largest}; 50-expression round trip"
