"""The ten acceptance criteria, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.  A failing criterion is reported and
its test fails; nothing is relaxed to make a line pass.
"""

import io
import random
import re
import time
from fractions import Fraction
from functools import lru_cache

import pytest
import sympy as sp
from sympy.parsing.sympy_parser import implicit_multiplication_application, parse_expr, standard_transformations

from tritile.casework import (certify_pi11_all, certify_pi14, certify_piover5, certify_piover6, certify_twopifive,
                              classify, eliminate_ell, engine_32_case1, engine_32_case2, lemma46_scan, table_ell3)
from tritile.casework.algebra import normalize_tex
from tritile.casework.classify import witness_tiling
from tritile.cli import run
from tritile.exactalg import (CycloNum, UniPoly, automorphism, cos_pi, field, minpoly, parse_poly, sin_pi)
from tritile.tiling import gen_27, gen_3m2, gen_three, verify_tiling

RESULTS: dict[int, str] = {}
_IMPLICIT = standard_transformations + (implicit_multiplication_application,)
_PQR = {v: sp.Symbol(v) for v in "PQR"}

# Transcribed printed forms
PSI28_PRINTED = "x^{12}-x^{10} +x^8 - x^6 + x^4 - x^2 + 1"
A8_PRINTED = "256(q\\ell + rn)"
PHI22_PRINTED = "x^{10} - x^9 + x^8 - x^7 + x^6 - x^5 + x^4 - x^3 + x^2 - x + 1"
MINPOLY_SIN_PI11_PRINTED = ("x^{10} - \\frac {11} 4 x^8 + \\frac{11} 4 x^6 - \\frac {77}{64}  x^4 "
                            "+ \\frac{55}{256}x^2 - \\frac{11}{1024}")
ELL3_PRINTED = [
    ("1", "", "0", "\\frac 1 { 3P-2}", "\\frac{P-1}{3P-2}", "\\frac{2P-2}{3P-2}", "\\gamma = 2\\beta"),
    ("0", "", "Q \\le 2", "\\frac {3-Q} { 3P-Q}", "\\frac{P-1}{3P-Q}", "\\frac{2P-2}{3P-Q}", "\\gamma = 2\\beta"),
    ("1", "", "0", "\\frac 1 { 3P-1}", "\\frac{P-1}{3P-1}", "\\frac{2P-1}{3P-1}", "\\gamma = 2\\beta + \\alpha"),
    ("0", "P \\ge 3", "Q \\le 2", "\\frac {3-Q} { 3P-2Q}", "\\frac{P-2}{3P-2Q}", "\\frac{2P-Q-1}{3P-2Q}",
     "\\gamma= 2\\beta+ \\alpha"),
    ("0", "P \\ge 6-Q", "0 or 1", "\\frac {2-Q} { 2P-3Q}", "\\frac{P-3}{2P-3Q}", "\\frac{P-2Q+1}{2P-3Q}",
     "\\gamma = 2\\alpha + \\beta"),
]


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def _cli(*argv) -> tuple[int, str, float]:
    out, err = io.StringIO(), io.StringIO()
    start = time.perf_counter()
    code = run(list(argv), out, err)
    return code, out.getvalue() + err.getvalue(), time.perf_counter() - start


def _best_time(*argv, repeat=5) -> tuple[str, float]:
    results = [_cli(*argv) for _ in range(repeat)]
    return results[0][1], min(r[2] for r in results)


# ------------------------------------------------------------------ 1

def test_criterion_1_cyclotomic_printing():
    text28, t28 = _best_time("cyclo", "28")
    text22, t22 = _best_time("cyclo", "22")
    exact = (normalize_tex(text28) == normalize_tex(PSI28_PRINTED)
             and normalize_tex(text22) == normalize_tex(PHI22_PRINTED)
             and text28 == "x^12 - x^10 + x^8 - x^6 + x^4 - x^2 + 1\n")
    fast = t28 < 1e-3 and t22 < 1e-3
    record(1, exact and fast, f"match={exact}, best times {t28 * 1e3:.3f} ms and {t22 * 1e3:.3f} ms")


# ------------------------------------------------------------------ 2

def _tex_to_poly(tex: str) -> UniPoly:
    text = re.sub(r"\\frac\s*\{?\s*(\d+)\s*\}?\s*\{?\s*(\d+)\s*\}?", r"(\1/\2)*", tex)
    text = text.replace("{", "").replace("}", "")
    text = re.sub(r"\)\*\s*x", ")*x", text)
    text = re.sub(r"\)\*\s*$", ")", text.strip())
    return UniPoly.from_param(parse_poly(text), "x")


def test_criterion_2_minimal_polynomials():
    start = time.perf_counter()
    code1, out1, _ = _cli("minpoly", "sin", "1/11")
    code2, out2, _ = _cli("minpoly", "sin", "1/5")
    elapsed = time.perf_counter() - start
    ours11 = UniPoly.from_param(parse_poly(out1.strip()), "x")
    ours5 = UniPoly.from_param(parse_poly(out2.strip()), "x")
    ref11 = _tex_to_poly(MINPOLY_SIN_PI11_PRINTED).monic()
    ref5 = UniPoly([Fraction(5, 16), 0, Fraction(-20, 16), 0, Fraction(16, 16)], "x")
    ok = code1 == code2 == 0 and ours11 == ref11 and ours5 == ref5 and elapsed < 1
    record(2, ok, f"sin(pi/11) {ours11 == ref11}, sin(pi/5) {ours5 == ref5}, {elapsed:.2f} s")


# ------------------------------------------------------------------ 3

def test_criterion_3_pi11():
    start = time.perf_counter()
    rep = certify_pi11_all()
    elapsed = time.perf_counter() - start
    exc = next(b for b in rep.branches if b.case.endswith("(2, 4, 5)"))
    identities = [ok for label, ok in rep.checks if "cos(pi/11)" in label or "sin(7pi/11)" in label]
    a8 = normalize_tex(rep.equation("area coefficient of a^8")) == normalize_tex(A8_PRINTED)
    others = [b for b in rep.branches if not b.case.endswith(("(2, 4, 5)", "(1, 3, 7)"))]
    others_unsat = all(b.verdict.kind == "unsat" for b in others)
    exceptional = exc.verdict.kind
    ok = all(identities) and len(identities) >= 3 and a8 and others_unsat and exceptional == "inconclusive" \
        and elapsed < 10
    record(3, ok, f"identities {all(identities)}, a8 {a8}, other shapes unsat {others_unsat}, "
                  f"(2,4,5) is {exceptional} (expected inconclusive), {elapsed:.1f} s")


# ------------------------------------------------------------------ 4

def test_criterion_4_pi14():
    start = time.perf_counter()
    reps = [certify_pi14("gamma"), certify_pi14("gamma+alpha")]
    elapsed = time.perf_counter() - start
    verbatim = {}
    for rep in reps:
        for b in rep.branches:
            for label, ok in b.checks:
                if "reference" in label:
                    key = label.split(":")[0].split(" ")[0]
                    verbatim[key] = verbatim.get(key, True) and ok
    unsat = all(r.verdict.kind == "unsat" for r in reps)
    ok = len(verbatim) >= 3 and all(verbatim.values()) and unsat and elapsed < 10
    record(4, ok, f"reference remainders {verbatim}, unsat for both angles {unsat}, {elapsed:.1f} s")


# ------------------------------------------------------------------ 5

def test_criterion_5_small_angle_and_threetwo_chains():
    start = time.perf_counter()
    p6 = certify_piover6()
    kinds = {b.case.split()[-1]: b for b in p6.branches}
    eq_ok = kinds["equilateral"].verdict.kind == "family" and "3m^2" in kinds["equilateral"].verdict.description
    right = kinds["30-60-90"].verdict
    right_ok = right.kind == "unsat" and "f^2 = 6e^2" in right.description
    p5 = certify_piover5().verdict.kind == "unsat"
    t25 = certify_twopifive().verdict.kind == "unsat"
    c2, c1 = engine_32_case2(), engine_32_case1()
    chains = {"case2": c2.all_checks_pass and c2.verdict.kind == "unsat",
              "case1": c1.all_checks_pass and c1.verdict.kind == "unsat"}
    elapsed = time.perf_counter() - start
    ok = eq_ok and right_ok and p5 and t25 and all(chains.values()) and elapsed < 30
    record(5, ok, f"equilateral family {eq_ok}, 30-60-90 {right.to_text()} (expected f^2 = 6e^2), piover5 {p5}, "
                  f"twopifive {t25}, chains {chains}, {elapsed:.1f} s")


# ------------------------------------------------------------------ 6

def test_criterion_6_generators():
    start = time.perf_counter()
    cases = [(gen_three(), 3, 1), (gen_3m2(2), 12, 2), (gen_3m2(3), 27, 3), (gen_27(), 27, 3)]
    good = []
    for t, n, m in cases:
        rep = verify_tiling(t)
        good.append(rep.passed and rep.N == n and rep.dmatrix.rows() == ((0, 0, m),) * 3)
    elapsed = time.perf_counter() - start
    record(6, all(good) and elapsed < 5, f"per generator {good}, {elapsed:.1f} s")


# ------------------------------------------------------------------ 7

@lru_cache(maxsize=None)
def _search(workers: int):
    return _cli("search", "threetwo", "--nmax", "100", "--workers", str(workers))


def test_criterion_7_search():
    code1, text1, t1 = _search(1)
    code8, text8, _ = _search(8)
    empty = code1 == 0 and text1.rstrip().endswith("\n0 solutions")
    same = text1 == text8
    count = text1.rstrip().rsplit("\n", 1)[-1]
    first = next((ln for ln in text1.splitlines() if ln.startswith("solution")), "none")
    record(7, empty and same and t1 < 600,
           f"{count}, first {first}, 1 vs 8 workers identical {same}, {t1:.0f} s")


# ------------------------------------------------------------------ 8

def _frac_text(tex: str):
    t = re.sub(r"\\frac\s*\{?\s*([^{}\s]+)\s*\}?\s*\{\s*([^{}]+)\}", r"(\1)/(\2)", tex)
    return parse_expr(t.replace(" ", ""), transformations=_IMPLICIT, local_dict=_PQR)


def _cell_equal(ours: str, printed: str) -> bool:
    if "\\frac" in printed:
        return sp.simplify(parse_expr(ours, transformations=_IMPLICIT, local_dict=_PQR) - _frac_text(printed)) == 0
    text = printed.replace("\\le", "<=").replace("\\ge", ">=").replace("\\", "")
    return ours.replace(" ", "") == text.replace(" ", "")


def test_criterion_8_lemma46_and_ell():
    start = time.perf_counter()
    scan = lemma46_scan(18) == [(Fraction(2, 7), Fraction(1, 14)), (Fraction(2, 9), Fraction(1, 6))]
    rows = table_ell3().rows
    table = len(rows) == 5 and all(
        all(_cell_equal(o, p) for o, p in zip(r.cells(), printed)) for r, printed in zip(rows, ELL3_PRINTED))
    verdicts = {ell: eliminate_ell(ell, 30) for ell in (3, 4, 5)}
    ends = {ell: rep.verdict.kind for ell, rep in verdicts.items()}
    chain = "3P <= Q + 2R with Q + 2R <= 2" in verdicts[3].to_text()
    elapsed = time.perf_counter() - start
    ok = scan and table and chain and all(k == "unsat" for k in ends.values()) and elapsed < 60
    record(8, ok, f"lemma scan {scan}, table {table}, ell verdicts {ends}, 3P <= Q + 2R step {chain}, "
                  f"{elapsed:.1f} s")


# ------------------------------------------------------------------ 9

def _rand_cyclo(rng, m):
    fld = field(m)
    return CycloNum(fld, [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(fld.degree)])


def test_criterion_9_properties():
    rng = random.Random(20261017)
    failures = {"field": 0, "automorphism": 0, "pythagoras": 0, "minpoly": 0, "census": 0}
    for _ in range(1000):
        m = rng.choice((5, 7, 8, 12, 14, 15, 20, 28))
        x, y, z = (_rand_cyclo(rng, m) for _ in range(3))
        ok = (x + y == y + x and (x * y) * z == x * (y * z) and x * (y + z) == x * y + x * z
              and (x.is_zero() or x * x.inverse() == 1))
        failures["field"] += not ok
        k = rng.choice([k for k in range(1, m) if sp.gcd(k, m) == 1])
        failures["automorphism"] += not (automorphism(k, x * y + z) == automorphism(k, x) * automorphism(k, y)
                                         + automorphism(k, z))
        n, j = rng.randint(1, 40), rng.randint(-80, 80)
        failures["pythagoras"] += not (sin_pi(j, n) ** 2 + cos_pi(j, n) ** 2 == 1)
        val = sin_pi(rng.randint(1, 20), rng.randint(2, 14))
        f = minpoly(val)
        acc = val.field.zero()
        for c in reversed(f.coeffs):
            acc = acc * val + c
        failures["minpoly"] += not acc.is_zero()
    tilings = [gen_three(), gen_3m2(1), gen_3m2(2), gen_3m2(3), gen_27()]
    reports = [verify_tiling(t) for t in tilings]
    for _ in range(1000):
        rep = rng.choice(reports)
        failures["census"] += not (rep.passed and rep.census.totals() == (rep.N,) * 3)
    record(9, not any(failures.values()), f"1000 cases each, failures {failures}")


# ------------------------------------------------------------------ 10

def test_criterion_10_classify():
    start = time.perf_counter()
    empty = all(classify(n) == [] for n in (7, 11, 19))
    fam = True
    for n in (3, 12, 27, 48, 75):
        fams = [f for f in classify(n) if f.key == "i"]
        if not fams or not fams[0].witnesses:
            fam = False
            continue
        rep = verify_tiling(witness_tiling(fams[0].witnesses[0]))
        fam &= rep.passed and rep.N == n
    elapsed = time.perf_counter() - start
    record(10, empty and fam and elapsed < 5, f"excluded N empty {empty}, family (i) witnesses verify {fam}, "
                                              f"{elapsed:.1f} s")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in sorted(tests, key=lambda f: int(f.__name__.split("_")[2])):
        try:
            fn()
        except AssertionError:
            pass
