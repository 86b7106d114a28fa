"""Tiles with 3*alpha + 2*beta = pi and alpha an irrational multiple of pi.

The sides of the tile are a = sin(alpha), b = sin(beta), c = sin(gamma) and
everything is written in s = 2*sin(alpha/2), for which a/c = s, b/c = 1 - s^2
and 2*cos(alpha) = 2 - s^2.  The d-matrix entries are named

    p d e
    g m f
    h l r

so the sides of ABC are pa + db + ec, ga + mb + fc and ha + lb + rc.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..exactalg import ParamPoly, UniPoly, format_param, format_uni, pseudo_rem, sin_pi
from .algebra import parse_uni
from .reports import CertificateReport, Verdict

V = ParamPoly.var
p, d, e, g, m, f, h, l, r, N = (V(x) for x in "pdegmfhlrN")
LAM = V("lam")


def _s(coeffs) -> UniPoly:
    return UniPoly([ParamPoly._lift(c) for c in coeffs], "s")


S = _s([0, 1])
ONE_MINUS_S2 = _s([1, 0, -1])        # b/c
TWO_MINUS_S2 = _s([2, 0, -1])        # t = 2 cos(alpha)
SIN2A_OVER_C = S * TWO_MINUS_S2      # sin(2 alpha)/c
SIN3A_OVER_C = S * _s([3, 0, -4, 0, 1])

# Printed forms, transcribed with explicit products.
PSI_REFERENCE = "d*s^4 - p*s^3 + (m-3*d-e)*s^2 + (2*p-g)*s + (2*d+2*e-f-m)"
EIGEN74_REFERENCE = ("(d*f-e*m)*b + e*lam*S", "(e*g-p*f)*b + f*lam*b",
                     "(p*m - d*g)*b - (m*b + p*S)*lam + lam^2*S")
H_V_REFERENCE = "d*f*s^2 - e*g*s - (e+d)*f"
U_POLY_REFERENCE = "e*d*s^4 - e*p*s^3 + s^2*(e*m-d*f-3*e*d-e^2) + 2*e*p*s + (d*f-e*m+2*e^2+2*d*e)"
H_MINUS_PSI_REFERENCE = "-d*f*s^2 + e*g*s + d*f"          # times e
W_POLY_REFERENCE = ("-d^2*s^7 + d*p*s^5 + (4*d^2 + 2*d*e - d*m)*s^4 + (d*g-3*d*p-e*p)*s^3"
                    " + (-5*d^2 - 6*d*e - e^2 + 2*d*m + e*m)*s^2 + (-d*g + 2*d*p + 2*e*p)*s"
                    " + (2*d^2+4*d*e+2*e^2 - d*m - e*m)")
G_REFERENCE = "d*f*s^2 - e*g*s - f*(d+e)"
UW_POLY_REFERENCE = ("d^2*s^6 - d*p*s^5 + (d*m-d*e-3*d^2)*s^4 + (2*d*p-d*g)*s^3"
                     " + (3*d^2+d*e-d*f-2*d*m)*s^2 + (d*g-d*p+e*p)*s + (d^2-e^2-d*f-d*m)")
CHI_REFERENCE = "(d*m+d*e-d^2)*s^2 - (d*g-d*p+e*p)*s + d^2-e^2-d*f-d*m"
F2_REFERENCE = "d^2*s^4 - d*p*s^3 - 2*d*(d+e)*s^2 + p*(d+e)*s + (d+e)^2"
F2_PRIME1_REFERENCE = "p*(e-2*d) - 4*d*e"

EIGEN_CASE1_REFERENCE = ("(m-lam)*(r-lam) - f*l", "h*f - g*(r-lam)", "g*l - h*(m-lam)")
F5_REFERENCE = "l*s^5 - h*s^4 - (3*l + r)*s^3 + (d+2*h)*s^2 + (2*l + 2*r - p)*s - (e+d)"
H4_REFERENCE = "l*s^4 - h*s^3 + (m-2*l-r)*s^2 + (h-g)*s + l + r - m - f"
K_REFERENCE = "(l + m)*s^3 - (d+g+h)*s^2 - (f+m+l+r-p)*s + (d+e)"
CUBIC1_REFERENCE = "p*lam^3 + (-p*(m+r) + e*h + d*g - N)*lam^2 + (Delta + N*(m+r))*lam - N*(m*r-l*f)"
CUBIC2_REFERENCE = "(g+h)*lam^3 + (g*l - h*m + h*f - g*r)*lam^2 - N*h*lam - N*(g*l - h*m)"
RATIO_REFERENCES = ("p/(g+h) = (m*r - l*f)/(g*l - h*m)",
                    "p/(g+h) = (-p*(m+r) + e*h + d*g - N)/(g*l - h*m + h*f - g*r)",
                    "p/(g+h) = (Delta + N*(m+r))/(-N*h)")
MINUS_DELTA_REFERENCE = "d*g*r + p*f*l + h*m*e - p*m*r - d*f*h - e*g*l"

DELTA = p * (m * r - f * l) - d * (g * r - f * h) + e * (g * l - m * h)


# ------------------------------------------------------------------ shapes

@dataclass(frozen=True)
class Shape32:
    """Three angles i*alpha + j*beta, listed as (i, j) pairs."""

    angles: tuple[tuple[int, int], ...]

    def to_text(self) -> str:
        def one(i, j):
            parts = []
            if j:
                parts.append("beta" if j == 1 else f"{j}beta")
            if i:
                parts.append("alpha" if i == 1 else f"{i}alpha")
            return " + ".join(parts)
        return ", ".join(one(i, j) for i, j in self.angles)


def engine_32_shapes() -> list[Shape32]:
    """Shapes of ABC left when 3alpha + 2beta = pi and alpha/pi is irrational.

    An angle of ABC is i*alpha + j*beta in exactly one way, and the three add
    up to (3, 2).  Excluded: the tile itself (alpha, beta, 2alpha + beta),
    isosceles triples, and a corner made of three or more alpha angles alone,
    which gives a second independent relation and makes alpha rational.
    """
    parts = [(i, j) for i in range(4) for j in range(3) if (i, j) != (0, 0)]
    tile = sorted([(1, 0), (0, 1), (2, 1)])
    out = []
    for trip in combinations_with_replacement(parts, 3):
        if tuple(map(sum, zip(*trip))) != (3, 2):
            continue
        if len(set(trip)) < 3 or sorted(trip) == tile:
            continue
        if any(j == 0 and i >= 3 for i, j in trip):
            continue
        out.append(Shape32(tuple(sorted(trip, key=lambda t: (t[0] + t[1], t)))))
    return sorted(out, key=lambda sh: sh.angles)


# ------------------------------------------------------------------ helpers

def _same(ours, reference: str, var: str = "s") -> bool:
    return ours == parse_uni(reference, var)


def _strip_low(f: UniPoly) -> tuple[UniPoly, int]:
    """Divide out the largest power of the variable."""
    co = list(f.coeffs)
    k = 0
    while co and ParamPoly._lift(co[0]).is_zero():
        co.pop(0)
        k += 1
    return UniPoly(co, f.var), k


def _positive(pp: ParamPoly, nonzero: set[str]) -> bool:
    """pp > 0 for all nonnegative integer values with the named parameters positive."""
    if not pp.all_coeffs_nonneg() or pp.is_zero():
        return False
    return any(c > 0 and all(v in nonzero for v, _ in mono) for mono, c in pp.terms.items())


def _no_root_in_unit_interval(q: UniPoly, nonzero: set[str]) -> tuple[bool, str]:
    """Degree <= 2, leading coefficient >= 0, q(0) < 0 and q(1) <= 0: q < 0 on (0, 1)."""
    if q.degree > 2:
        return False, "degree above 2"
    c2 = ParamPoly._lift(q.coeff(2))
    at0 = ParamPoly._lift(q.coeff(0))
    at1 = sum((ParamPoly._lift(c) for c in q.coeffs), ParamPoly.const(0))
    ok = c2.all_coeffs_nonneg() and _positive(-at0, nonzero) and (-at1).all_coeffs_nonneg()
    why = (f"value at 0 is {format_param(at0)} < 0, value at 1 is {format_param(at1)} <= 0, "
           f"s^2 coefficient {format_param(c2)} >= 0")
    return ok, why


def _trig_instances():
    """(a, b, c, sin 2alpha, sin 3alpha, s) at alpha = 2pi/7 and alpha = 2pi/9, where 3alpha + 2beta = pi."""
    out = []
    for n, ka, kb in ((14, 4, 1), (18, 4, 3)):
        kc = n - ka - kb
        out.append((sin_pi(ka, n), sin_pi(kb, n), sin_pi(kc, n), sin_pi(2 * ka, n), sin_pi(3 * ka, n),
                    sin_pi(ka, 2 * n) * 2, n))
    return out


def _check_side_identities(rep: CertificateReport) -> None:
    for a, b, c, s2a, s3a, s, n in _trig_instances():
        at = lambda poly: sum((s ** k * ParamPoly._lift(co).const_value() for k, co in enumerate(poly.coeffs)),
                              s * 0)
        rep.check(f"alpha = 2pi/{n // 2}: a/c = s, b/c = 1 - s^2, "
                  f"sin(2alpha)/c = s(2 - s^2), sin(3alpha)/c = s(3 - 4s^2 + s^4)",
                  a / c == s and b / c == at(ONE_MINUS_S2) and s2a / c == at(SIN2A_OVER_C)
                  and s3a / c == at(SIN3A_OVER_C))


# ------------------------------------------------------------------ case 2

def _psi() -> UniPoly:
    lhs = S * g + ONE_MINUS_S2 * m + _s([f])
    rhs = TWO_MINUS_S2 * (S * p + ONE_MINUS_S2 * d + _s([e]))
    return rhs - lhs


def _lambda_s() -> UniPoly:
    """lambda * s from the first row: ps + d(1 - s^2) + e."""
    return S * p + ONE_MINUS_S2 * d + _s([e])


def engine_32_case2() -> CertificateReport:
    rep = CertificateReport("threetwo case 2: angles alpha, 2alpha, 2beta, two tiles at the 2beta corner")
    nonzero = {"e", "f", "r"}
    rep.facts += ["e != 0", "f != 0", "r != 0", "m + l > 0",
                  "(pigeonhole on sides without c-edges, consumed as a hypothesis)"]
    _check_side_identities(rep)
    rep.note("sin(2beta) = sin(3alpha) = 3a - 4a^3; the printed 4a^3 - 3a^2 is a typo and is not used")

    psi = _psi()
    rep.eq("psi", format_uni(psi))
    rep.check("psi equals the reference form", _same(psi, PSI_REFERENCE))
    rep.step("row 2 / row 1: gs + m(1 - s^2) + f = (2 - s^2)(ps + d(1 - s^2) + e)", "ratio of rows, sides / c")

    # psi identically zero
    zero = CertificateReport("psi identically zero")
    coeffs = [ParamPoly._lift(c) for c in psi.coeffs]
    zero.step("d = p = 0, then g = 0, m = e and f = e", "coefficients of psi")
    zero.check("d = p = g = 0, m = e, f = e solves every coefficient",
               all(c.subs({"d": 0, "p": 0, "g": 0, "m": e, "f": e}).is_zero() for c in coeffs))
    t = V("t")
    diff = e - (e * (t - 1) + e * t)
    zero.check("vc = bw with lambda = ec/a reduces to e = e(t - 1) + et, i.e. 2e(1 - t) = 0",
               diff == e * 2 - e * t * 2)
    zero.step("t = 1, so cos(alpha) = 1/2, alpha = pi/3 and beta = 0", "e != 0")
    zero.verdict = Verdict("unsat", "beta = 0")
    rep.branches.append(zero)

    lam_s = _lambda_s()
    rep.eq("lambda", "p - ds + (e + d)/s")
    rep.check("s * (p - ds + (e + d)/s) = ps + d(1 - s^2) + e", lam_s == _s([e + d, p, -d]))

    b_, S_ = V("b"), V("S")
    u = (d * f - e * m) * b_ + e * LAM * S_
    v = (e * g - p * f) * b_ + f * LAM * b_
    w = (p * m - d * g) * b_ - (m * b_ + p * S_) * LAM + LAM * LAM * S_
    # cofactors of the third row of M - lambda*I, second row scaled by S = sin(2alpha)
    row1 = [p - LAM, d, e]
    row2 = [g * b_, m * b_ - LAM * S_, f * b_]
    cof = [row1[1] * row2[2] - row1[2] * row2[1],
           -(row1[0] * row2[2] - row1[2] * row2[0]),
           row1[0] * row2[1] - row1[1] * row2[0]]
    rep.eq("eigenvector (eq 74)", f"u = {format_param(u)}; v = {format_param(v)}; w = {format_param(w)}")
    rep.check("(u, v, w) are the third-row cofactors times sin(2alpha)", cof == [u, v, w])
    rep.check("(u, v, w) equal the reference forms",
              [ParamPoly.parse(x) for x in EIGEN74_REFERENCE] == [u, v, w])

    # v = 0
    vb = CertificateReport("v = 0")
    hv = _s([-(e + d) * f, -e * g, d * f])
    lhs = S * (e * g - p * f) + lam_s * f
    vb.eq("H", format_uni(hv))
    vb.check("s(eg - pf + f*lambda) = -H", lhs == -hv)
    vb.check("H equals the reference form", _same(hv, H_V_REFERENCE))
    ok, why = _no_root_in_unit_interval(hv, nonzero)
    vb.step(why, "no root of H in (0, 1)")
    vb.note("H(0) = -(e + d)f; the printed H(0) = (e + d)f drops the sign")
    vb.verdict = Verdict("unsat", "s = 2sin(alpha/2) lies in (0, 1)") if ok else Verdict("inconclusive")
    rep.branches.append(vb)

    # u = 0
    ub = CertificateReport("u = 0")
    upoly = ONE_MINUS_S2 * (d * f - e * m) + lam_s * TWO_MINUS_S2 * e
    ub.eq("u*s/c", format_uni(upoly))
    ub.check("u*s/c equals the reference form", _same(upoly, U_POLY_REFERENCE))
    hmp = upoly - psi * e
    ub.eq("e(H - psi)", format_uni(hmp))
    ub.check("e(H - psi) equals the reference form", _same(hmp, H_MINUS_PSI_REFERENCE))
    ub.note("the constant term of e(H - psi) is df + ef; the printed form drops ef")
    ok, why = _no_root_in_unit_interval(-hmp, nonzero)
    ub.step(f"-e(H - psi) = {format_uni(-hmp)}: {why}", "no root in (0, 1)")
    ub.verdict = Verdict("unsat", "s lies in (0, 1)") if ok else Verdict("inconclusive")
    rep.branches.append(ub)

    # w = 0
    wb = CertificateReport("w = 0")
    wpoly = ONE_MINUS_S2 * S * S * (p * m - d * g) - (ONE_MINUS_S2 * m + SIN2A_OVER_C * p) * lam_s * S \
        + lam_s * lam_s * SIN2A_OVER_C
    wpoly, k = _strip_low(wpoly)
    wb.eq("w*s/c", format_uni(wpoly))
    printed_w = parse_uni(W_POLY_REFERENCE, "s")
    wb.check("w*s/c equals the reference form", wpoly == printed_w)
    fixed = printed_w - _s([0] * 7 + [-d * d]) + _s([0] * 6 + [-d * d])
    wb.check("w*s/c equals the reference form with its leading power s^7 read as s^6", wpoly == fixed)
    wb.note("the leading term of the degree-six w polynomial is printed as -d^2 s^7")
    rem, steps = pseudo_rem(wpoly, psi)
    wb.eq(f"d^{steps} * (w*s/c) mod psi", format_uni(rem))
    G = parse_uni(G_REFERENCE, "s")
    wb.check(f"remainder equals -d^{steps} G with G as printed", rem == -(G * (d ** steps)))
    ok, why = _no_root_in_unit_interval(G, nonzero)
    wb.step(why, "no root of G in (0, 1)")
    wb.verdict = Verdict("unsat", "s lies in (0, 1)") if ok else Verdict("inconclusive")
    rep.branches.append(wb)

    # a/c = u/w
    eb = CertificateReport("a/c = u/w")
    uc = ONE_MINUS_S2 * S * (d * f - e * m) + lam_s * SIN2A_OVER_C * e
    E = wpoly * S - uc
    E, _ = _strip_low(E)
    eb.eq("s*w - u, over c", format_uni(E))
    eb.check("s*w - u equals d(1 - s^2) psi", E == ONE_MINUS_S2 * psi * d)
    rem2, _ = pseudo_rem(E, psi)
    eb.check("so it is 0 mod psi", rem2.is_zero())
    eb.step("a/c = u/w is the ratio of the first two rows again and adds nothing to psi = 0",
            "exact division")
    printed_6 = parse_uni(UW_POLY_REFERENCE, "s")
    eb.check("the reference degree-six polynomial is a multiple of psi", pseudo_rem(printed_6, psi)[0].is_zero())
    eb.note("the printed degree-six polynomial writes p*sin(2alpha) and lambda^2 sin(2alpha) with the "
            "factor (1 - s^2) where s(2 - s^2) belongs, and flips the sign of its constant term; "
            "the quadratic chi derived from it is not a consequence of the tiling equations")
    chi = parse_uni(CHI_REFERENCE, "s")
    F2 = psi * d - chi
    eb.eq("chi (reference)", format_uni(chi))
    eb.eq("F = d*psi - chi", format_uni(F2))
    eb.check("d*psi - chi equals the reference F", _same(F2, F2_REFERENCE))
    F2d = F2.derivative()
    at1 = sum((ParamPoly._lift(c) for c in F2.coeffs), ParamPoly.const(0))
    d1 = sum((ParamPoly._lift(c) for c in F2d.coeffs), ParamPoly.const(0))
    eb.check("F(0) = (d + e)^2", ParamPoly._lift(F2.coeff(0)) == (d + e) ** 2)
    eb.check("F(1) = pe + e^2", at1 == p * e + e * e)
    eb.check("F'(0) = p(d + e)", ParamPoly._lift(F2d.coeff(0)) == p * (d + e))
    eb.check("F'(1) = p(e - 2d) - 4de", d1 == ParamPoly.parse(F2_PRIME1_REFERENCE))
    eb.check("product of the roots of F' is -p(d + e)/(4d^2)",
             ParamPoly._lift(F2d.coeff(0)) * -1 == -(p * (d + e)) and
             ParamPoly._lift(F2d.coeff(3)) == d * d * 4)
    eb.check("sum of the roots of F' is (d + e)/d as printed",
             -ParamPoly._lift(F2d.coeff(2)) * d == (d + e) * ParamPoly._lift(F2d.coeff(3)))
    eb.note("the sum of the roots of F' is 3p/(4d), not (d + e)/d, so the bound e < d is not derived")
    k2 = d + e
    eb.check("F factors as (ds^2 - d - e)(ds^2 - ps - d - e)", F2 == _s([-k2, 0, d]) * _s([-k2, -p, d]))
    eb.step("F has no root in (0, 1): ds^2 = d + e forces s >= 1 and ds^2 - ps - d - e is "
            "negative at 0 and at 1", "factorization")
    eb.verdict = Verdict("inconclusive", "the closing quadratic chi does not follow from psi = 0")
    rep.branches.append(eb)

    rep.step("v, u, w are nonzero, so the eigenspace of lambda is spanned by (u, v, w)", "branches above")
    rep.step("the remaining relation a/c = u/w reduces to psi = 0; no contradiction follows from rows 1-2",
             "a/c = u/w branch")
    rep.note("with row 3 and the area condition N = lambda^2 (2 - s^2) added, no d-matrix with all "
             "entries at most 3 survives a numerical scan; this is evidence, not a proof")
    rep.verdict = Verdict("inconclusive", "the printed chi is not implied by the tiling equations")
    return rep


# ------------------------------------------------------------------ case 1

def engine_32_case1() -> CertificateReport:
    rep = CertificateReport("threetwo case 1: angles 2alpha, beta, beta + alpha")
    rep.facts += ["e != 0", "f != 0", "r != 0", "g + h > 0"]
    _check_side_identities(rep)

    cof = [(m - LAM) * (r - LAM) - f * l, h * f - g * (r - LAM), g * l - h * (m - LAM)]
    rep.eq("eigenvector", "; ".join(format_param(x) for x in cof))
    rep.check("(u, v, w) equal the reference cofactors",
              [ParamPoly.parse(x) for x in EIGEN_CASE1_REFERENCE] == cof)
    rep.step("v = hf + g(lambda - r) > 0, w = gl + h(lambda - m) > 0, u = (lambda - m)(lambda - r) - lf > 0 "
             "since g + h > 0", "rows 2 and 3 of the d-matrix equation")

    F5 = S * TWO_MINUS_S2 * (S * h + ONE_MINUS_S2 * l + _s([r])) - (S * p + ONE_MINUS_S2 * d + _s([e]))
    H4 = (S * h + ONE_MINUS_S2 * l + _s([r])) * ONE_MINUS_S2 - (S * g + ONE_MINUS_S2 * m + _s([f]))
    rep.eq("F", format_uni(F5))
    rep.eq("H", format_uni(H4))
    rep.check("F equals the reference form", _same(F5, F5_REFERENCE))
    rep.check("H equals the reference form", _same(H4, H4_REFERENCE))
    rem, k = pseudo_rem(F5, H4)
    K = parse_uni(K_REFERENCE, "s")
    rep.eq(f"l^{k} * (F mod H)", format_uni(rem))
    rep.check(f"F mod H = -K with K as printed (times l^{k})", rem == -(K * (l ** k)))
    rep.step("K is a nonzero cubic in s, so s has degree 3 over Q", "a, b, c independent over Q")

    c1 = UniPoly([-(N * (m * r - l * f)), DELTA + N * (m + r), -p * (m + r) + e * h + d * g - N, p], "lam")
    # lambda * det [[p - N/lambda, d, e], [g, m - lambda, f], [h, l, r - lambda]]
    row = [p * LAM - N, d * LAM, e * LAM]
    det = row[0] * ((m - LAM) * (r - LAM) - f * l) - row[1] * (g * (r - LAM) - f * h) \
        + row[2] * (g * l - (m - LAM) * h)
    c1_param = sum((ParamPoly._lift(c) * LAM ** i for i, c in enumerate(c1.coeffs)), ParamPoly.const(0))
    rep.eq("cubic1", format_uni(c1))
    rep.check("cubic1 is lambda times the characteristic determinant", det == c1_param)
    ref1 = ParamPoly.parse(CUBIC1_REFERENCE).subs({"Delta": DELTA})
    rep.check("cubic1 equals the reference form", ref1 == c1_param)

    c2_param = (N - LAM * LAM) * (g * l - h * m + h * LAM)
    c2_param = (h * f - g * r) * LAM * LAM + g * LAM ** 3 - c2_param
    c2 = UniPoly([_coeff_in(c2_param, "lam", i) for i in range(4)], "lam")
    rep.eq("cubic2", format_uni(c2))
    rep.check("cubic2 equals the reference form", ParamPoly.parse(CUBIC2_REFERENCE) == c2_param)
    rep.step("b/c = v/w with b/c = N/lambda^2 - 1", "eigenvector proportional to (a, b, c)")

    ratios = [(c1.coeff(0), c2.coeff(0)), (c1.coeff(2), c2.coeff(2)), (c1.coeff(1), c2.coeff(1))]
    texts = ["ratio-1 p/(g+h) = (mr - lf)/(gl - hm)",
             "ratio-2 p/(g+h) = (-p(m + r) + eh + dg - N)/(gl - hm + hf - gr)",
             "ratio-3 p/(g+h) = (Delta + N(m + r))/(-Nh)"]
    for text, (a1, a2), ref in zip(texts, ratios, RATIO_REFERENCES):
        rep.eq(text.split()[0], text.split(" ", 1)[1])
        num, den = ref.split(" = ")[1].split(")/(")
        num = ParamPoly.parse(num + ")").subs({"Delta": DELTA})
        den = ParamPoly.parse("(" + den).subs({"Delta": DELTA})
        a1, a2 = ParamPoly._lift(a1), ParamPoly._lift(a2)
        rep.check(f"{text.split()[0]}: coefficient ratio of cubic1 to cubic2 is the reference ratio",
                  a1 * den == a2 * num)

    rep.step("cubic1 and cubic2 are both multiples of the minimal polynomial of lambda; compare coefficients",
             "degree of Q(lambda) is 3")
    neg_delta = ParamPoly.parse(MINUS_DELTA_REFERENCE)
    rep.check("-Delta = dgr + pfl + hme - pmr - dfh - egl", neg_delta == -DELTA)
    rep.step("N(m + r + hp/(g + h)) <= -Delta", "ratio-3 with h > 0")
    rep.step("he < lambda^2 t = N and dg <= N", "ha < lambda c and ec <= lambda at")
    rep.step("N hp/(g + h) < p(lf - mr) - dfh - egl", "substitute and cancel N(m + r)")
    rep.step("mr - lf < 0, so gl - hm < 0", "ratio-1")
    rep.step("lf <= lambda^2, hence N hp/(g + h) < p lambda^2 - pmr - dfh - egl", "fc <= lambda b, lb <= lambda c")
    G_, H_ = V("g"), V("h")
    rep.check("hp/(g + h) + gp/(g + h) = p", (H_ * p + G_ * p) == p * (G_ + H_))
    rep.step("N - lambda^2 < N g/(g + h) - mr - dfh/p - egl/p", "add Npg/(g + h), divide by p")
    rep.step("l/m < h/g and r/f < h/g, so Z/Y < h/g, i.e. c/b < h/g", "bottom row against the middle row")
    rep.step("h/g > lambda^2/(N - lambda^2)", "c/b = lambda^2/(N - lambda^2)")
    lam2 = LAM * LAM
    rep.check("N / (1 + lambda^2/(N - lambda^2)) = N - lambda^2",
              N * (N - lam2) == (N - lam2) * ((N - lam2) + lam2))
    rep.step("N - lambda^2 < N - lambda^2", "contradiction")
    rep.note("the printed step adds 'Np g(g+h)'; the quantity added is Npg/(g + h)")
    rep.note("the printed 'he <= lambda^2 t < N' should read he < lambda^2 t = N; the strictness comes from ha < lambda c")
    rep.verdict = Verdict("unsat", "N - lambda^2 < N - lambda^2")
    return rep


def _coeff_in(pp: ParamPoly, var: str, k: int) -> ParamPoly:
    out = {}
    for mono, c in pp.terms.items():
        powers = dict(mono)
        if powers.pop(var, 0) == k:
            out[tuple(powers.items())] = c
    return ParamPoly(out)

