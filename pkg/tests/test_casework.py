import itertools
from fractions import Fraction
from math import gcd

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from tritile.casework import (AngleForm, SplitBounds, Verdict, ZeroFactBase, certify_pi11, certify_pi11_all,
                              certify_pi14, certify_piover5, certify_piover6, certify_twopifive, classify,
                              eliminate_ell, engine_32_case1, engine_32_case2, engine_32_shapes,
                              enumerate_splits, lemma46_scan, propagate_nonneg, settle, side_ratio_certificate,
                              table_ell3)
from tritile.casework.classify import witness_tiling
from tritile.casework.facts import check_soundness
from tritile.casework.search import cubic1, equations_hold, exact_survivor, roots_between_sqrts, search_32
from tritile.exactalg import ParamPoly
from tritile.tiling import verify_tiling

# ---------------------------------------------------------------- zero facts

VARS = ("p", "d", "e", "g")


@st.composite
def sign_equations(draw):
    """Small polynomial equations in nonnegative unknowns."""
    eqs = []
    for _ in range(draw(st.integers(1, 3))):
        terms = {}
        for _ in range(draw(st.integers(1, 3))):
            vs = draw(st.lists(st.sampled_from(VARS), min_size=0, max_size=2))
            mono = tuple(sorted({v: vs.count(v) for v in vs}.items()))
            terms[mono] = draw(st.sampled_from([-2, -1, 1, 2, 3]))
        eqs.append(ParamPoly(terms))
    nonzero = set(draw(st.lists(st.sampled_from(VARS), max_size=2)))
    return eqs, nonzero


def _solutions(eqs, nonzero, box=3):
    out = []
    for vals in itertools.product(range(box), repeat=len(VARS)):
        env = dict(zip(VARS, vals))
        if any(env[v] == 0 for v in nonzero):
            continue
        if all(e.subs(env).is_zero() for e in eqs):
            out.append(env)
    return out


@settings(max_examples=1000, deadline=None)
@given(sign_equations())
def test_propagation_is_sound(case):
    eqs, nonzero = case
    res = propagate_nonneg(eqs, ZeroFactBase(nonzero=nonzero))
    sols = _solutions(eqs, nonzero)
    if not res:
        assert sols == []
        return
    assert check_soundness(eqs, res)
    for env in sols:
        assert all(env[v] == 0 for v in res.zero & set(VARS))
        for prod in res.zero_products:
            assert any(env.get(v, 0) == 0 for v in prod)


def test_settle_finds_hidden_sum():
    p, d, e = (ParamPoly.var(x) for x in "pde")
    # p - d = 0 and d + e - p = 0 together give e = 0
    res = settle([p - d, d + e - p], ZeroFactBase(nonzero={"p"}))
    assert "e" in res.zero and "d" not in res.zero


def test_contradiction_is_falsy():
    p = ParamPoly.var("p")
    res = propagate_nonneg([p * p + p], ZeroFactBase(nonzero={"p"}))
    assert not res and "p" in res.reason


# ---------------------------------------------------------------- splits

def _brute_splits(relation: AngleForm, bounds: SplitBounds):
    a, b = sp.symbols("a b")
    out = []
    for R in range(bounds.rmax + 1):
        for P in range(bounds.pmax + 1):
            for Q in range(bounds.qmax + 1):
                if P + Q + R < bounds.min_total:
                    continue
                sol = sp.solve([P * a + Q * b + R * (1 - a - b) - 1,
                                relation.ca * a + relation.cb * b + relation.cpi], [a, b], dict=True)
                if len(sol) != 1 or len(sol[0]) != 2:
                    continue
                al, be = sol[0][a], sol[0][b]
                if 0 < al < be < 1 - al - be:
                    out.append((P, Q, R, Fraction(int(al.p), int(al.q)), Fraction(int(be.p), int(be.q))))
    return out


@pytest.mark.parametrize("relation", [AngleForm.gamma_equals(Fraction(2, 3)), AngleForm(3, 2, -1),
                                      AngleForm.from_counts(0, 0, 3, 2)])
def test_enumerate_splits_matches_brute_force(relation):
    bounds = SplitBounds(pmax=50, qmax=50, rmax=1, min_total=5)
    ours = [(s.P, s.Q, s.R, s.alpha, s.beta) for s in enumerate_splits([relation], bounds)]
    assert sorted(ours) == sorted(_brute_splits(relation, bounds))


# ---------------------------------------------------------------- side ratios

def _embedding_dimension(n, tile, shape):
    """9 minus the rank of the proportionality system stacked over every Galois conjugate."""
    mpmath.mp.dps = 40
    M = 4 * n if n % 2 else 2 * n
    rows = []
    for k in range(1, M):
        if gcd(k, M) != 1:
            continue
        s = [mpmath.sin(k * j * mpmath.pi / n) for j in tile]
        o = [mpmath.sin(k * j * mpmath.pi / n) for j in shape]
        for blk in (1, 2):
            row = [mpmath.mpf(0)] * 9
            for i in range(3):
                row[i] = s[i] * o[blk]
                row[3 * blk + i] = -s[i] * o[0]
            rows.append(row)
    sv = mpmath.svd_r(mpmath.matrix(rows), compute_uv=False)
    rank = sum(1 for x in sv if abs(x) > mpmath.mpf(10) ** -25)
    return 9 - rank


@pytest.mark.parametrize("shape", [(2, 4, 5), (3, 4, 4), (1, 1, 9), (2, 2, 7), (1, 5, 5), (3, 3, 5)])
def test_side_ratio_dimension_matches_embedding_rank(shape):
    basis, _ = side_ratio_certificate(11, (1, 3, 7), shape)
    assert len(basis) == _embedding_dimension(11, (1, 3, 7), shape)


def test_side_ratio_closes_the_245_shape():
    basis, rays = side_ratio_certificate(11, (1, 3, 7), (2, 4, 5))
    assert basis == [] and rays == []
    basis, rays = side_ratio_certificate(11, (1, 3, 7), (3, 4, 4))
    assert len(basis) == 2 and rays == []


def test_side_ratio_finds_the_tile_itself():
    _, rays = side_ratio_certificate(11, (1, 3, 7), (1, 3, 7))
    assert rays and all(n > 0 for _, n in rays)


# ---------------------------------------------------------------- certifiers

def test_piover6_branches():
    rep = certify_piover6()
    kinds = {b.case.split()[-1]: b.verdict.kind for b in rep.branches}
    assert kinds == {"equilateral": "family", "30-60-90": "unsat"}
    assert rep.all_checks_pass


def test_piover5_and_twopifive():
    assert certify_piover5().verdict.kind == "unsat"
    assert certify_twopifive().verdict.kind == "unsat"


def test_pi11_reference_forms():
    rep = certify_pi11()
    assert rep.equation("area coefficient of a^8") == "256(ql + rn)"


def test_pi11_every_shape_decided():
    rep = certify_pi11_all()
    for b in rep.branches:
        if b.case.endswith("(1, 3, 7)"):
            assert b.verdict.kind == "family"
        else:
            assert b.verdict.kind == "unsat", b.case


@pytest.mark.parametrize("C", ["gamma", "gamma+alpha"])
def test_pi14_ends_unsat(C):
    assert certify_pi14(C).verdict.kind == "unsat"


def test_threetwo_shapes():
    shapes = engine_32_shapes()
    assert len(shapes) == 2


def test_threetwo_case1_chain():
    rep = engine_32_case1()
    assert rep.verdict.kind == "unsat" and rep.all_checks_pass


def test_threetwo_case2_root_sum():
    """An independent check of the F' root sum: sympy gives 3p/(4d)."""
    s, d, e, p = sp.symbols("s d e p", positive=True)
    F = (d * s ** 2 - d - e) * (d * s ** 2 - p * s - d - e)
    Fp = sp.Poly(sp.diff(F, s), s)
    c = Fp.all_coeffs()
    assert sp.simplify(-c[1] / c[0] - 3 * p / (4 * d)) == 0
    rep = engine_32_case2()
    assert rep.verdict.kind == "inconclusive"


def test_ell_tables_and_verdicts():
    assert len(table_ell3().rows) == 5
    assert eliminate_ell(3).verdict.kind == "unsat"
    assert eliminate_ell(5).verdict.kind == "unsat"
    assert "Q + 2R" in eliminate_ell(3).to_text()


# ---------------------------------------------------------------- search

def _oracle_search(N):
    """Plain loops with sympy root counting; ratio-1 gives f, then d and e by brute force."""
    lam = sp.Symbol("lam")
    found = []
    rng = range(N + 1)
    for p, g, h, l, m, r in itertools.product(range(1, N + 1), rng, range(1, N + 1), range(1, N + 1), rng, rng):
        D = h * m - g * l
        if D <= 0:
            continue
        num = m * r * (g + h) + p * D
        if num % (l * (g + h)):
            continue
        f = num // (l * (g + h))
        if f > N or m * r - l * f >= 0:
            continue
        for d in rng:
            # ratio-2 is linear in e with coefficient (g+h)*h
            rhs = p * (g * l - h * m + h * f - g * r) + (g + h) * (p * (m + r) - d * g + N)
            if rhs % ((g + h) * h):
                continue
            e = rhs // ((g + h) * h)
            if not 0 <= e <= N:
                continue
            node = (p, d, e, g, m, f, h, l, r)
            if not equations_hold(N, node):
                continue
            poly = sp.Poly(list(reversed(cubic1(N, node))), lam)
            # lambda is a ratio of lengths, so only positive roots count
            if any(r > 0 and sp.Rational(N, 2) < r ** 2 < N for r in sp.real_roots(poly)):
                found.append((N,) + node)
    return sorted(found)


@pytest.mark.parametrize("N", range(1, 11))
def test_search_matches_brute_force(N):
    assert search_32(N, nmin=N).solutions == _oracle_search(N)


def test_search_is_monotone_and_worker_independent():
    small, big = search_32(9), search_32(12)
    assert [s for s in big.solutions if s[0] <= 9] == small.solutions
    assert search_32(12, workers=2).to_text() == big.to_text()


def test_nmax_one_is_empty():
    rep = search_32(1)
    assert rep.solutions == [] and rep.to_text().endswith("0 solutions")


def test_first_literal_survivor():
    node = (9, 1, 2, 0, 1, 1, 9, 9, 0)
    assert exact_survivor(9, node)
    assert not exact_survivor(9, node, strict=True)  # cubic lam^3 - 9 lam + 9 misses the eigen relation


def test_root_counter_on_exact_endpoint():
    # (lam^2 - 2)(lam - 5/4): sqrt 2 is the left end of (sqrt 2, sqrt 4)
    coeffs = [Fraction(10, 4), -2, Fraction(-5, 4), 1]
    assert roots_between_sqrts(coeffs, Fraction(2), Fraction(4)) == 0
    assert roots_between_sqrts(coeffs, Fraction(1), Fraction(4)) == 2


# ---------------------------------------------------------------- classify

def test_lemma46_scan():
    expected = [(Fraction(2, 7), Fraction(1, 14)), (Fraction(2, 9), Fraction(1, 6))]
    assert lemma46_scan(18) == expected
    assert lemma46_scan(40) == expected
    with pytest.raises(ValueError):
        lemma46_scan(17)


@pytest.mark.parametrize("N", [7, 11, 19])
def test_classify_excluded(N):
    assert classify(N) == []


@pytest.mark.parametrize("N", [3, 12, 27])
def test_classify_witnesses_verify(N):
    fams = classify(N)
    assert fams[0].key == "i"
    for w in fams[0].witnesses:
        rep = verify_tiling(witness_tiling(w))
        assert rep.passed and rep.N == N
