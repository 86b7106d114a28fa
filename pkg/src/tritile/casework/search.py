"""Bounded search for d-matrices satisfying the 3alpha + 2beta = pi ratio equations.

The three ratio equations come from comparing the coefficients of cubic1 and
cubic2.  For each N the nine entries p d e / g m f / h l r range over 0..N.  A node
survives when

  * p, h, l >= 1, gl - hm < 0 and mr - lf < 0;
  * ratio-1  p(gl - hm) = (g + h)(mr - lf);
  * ratio-2  p(gl - hm + hf - gr) = (g + h)(-p(m + r) + eh + dg - N);
  * ratio-3  -pNh = (g + h)(Delta + N(m + r));
  * cubic1 has a real root lambda with N/2 < lambda^2 < N.

ratio-1 fixes f from the other entries, and ratio-2 and ratio-3 are linear
in d and e, so the inner loop only runs over g, h, l, m, p and r.  Along a root of cubic1 the
quantity hf - gr is a function of lambda, which bounds r.  Floating point is
used only to discard nodes; every reported node is re-checked exactly.

Strict mode adds two facts the ratio equations do not use: cubic1 is the
minimal polynomial of lambda, so it is irreducible, and a/c = u/w for the
cofactor eigenvector (u, v, w), i.e. u^2 lambda^2 = (2 lambda^2 - N) w^2
shares the root.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numba
import numpy as np

from ..exactalg import UniPoly, divisors, poly_divmod
from .reports import SearchReport

_OUT_ROWS = 4096


@numba.njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@numba.njit(cache=True)
def _sign_flags(c3, c2, c1, c0, x, scale):
    v = ((c3 * x + c2) * x + c1) * x + c0
    return v > -scale, v < scale


@numba.njit(cache=True)
def _cubic_may_vanish(c3, c2, c1, c0, N):
    """Loose float test: does c3 x^3 + c2 x^2 + c1 x + c0 change sign or touch 0 on [sqrt(N/2), sqrt(N)]?"""
    lo = math.sqrt(N / 2.0) * (1 - 1e-9)
    hi = math.sqrt(N) * (1 + 1e-9)
    scale = (abs(c3) * hi ** 3 + abs(c2) * hi * hi + abs(c1) * hi + abs(c0)) * 1e-9 + 1e-9
    pos, neg = _sign_flags(c3, c2, c1, c0, lo, scale)
    p2, n2 = _sign_flags(c3, c2, c1, c0, hi, scale)
    pos = pos or p2
    neg = neg or n2
    if pos and neg:
        return True
    # no sign change at the ends: look at the critical points inside
    A = 3.0 * c3
    B = 2.0 * c2
    C = float(c1)
    x1 = -1.0
    x2 = -1.0
    if A != 0:
        disc = B * B - 4 * A * C
        if disc >= 0:
            sq = math.sqrt(disc)
            x1 = (-B - sq) / (2 * A)
            x2 = (-B + sq) / (2 * A)
    elif B != 0:
        x1 = -C / B
    for x in (x1, x2):
        if lo < x < hi:
            p2, n2 = _sign_flags(c3, c2, c1, c0, x, scale)
            pos = pos or p2
            neg = neg or n2
    return pos and neg


@numba.njit(cache=True)
def _beta_range(N, g, h, D1):
    """Range of -(g+h)x + D1 + Nh/x - N*D1/x^2 over sqrt(N/2) <= x <= sqrt(N), widened slightly."""
    lo = math.sqrt(N / 2.0)
    hi = math.sqrt(N)

    def beta(x):
        return -(g + h) * x + D1 + N * h / x - N * D1 / (x * x)

    bmin = min(beta(lo), beta(hi))
    bmax = max(beta(lo), beta(hi))
    # beta' = 0 at the single root of (g+h)x^3 + Nhx - 2N*D1, an increasing function
    a = lo
    b = hi
    fa = (g + h) * a ** 3 + N * h * a - 2 * N * D1
    fb = (g + h) * b ** 3 + N * h * b - 2 * N * D1
    if fa < 0 and fb > 0:
        # increasing and convex on x > 0, so Newton from the right end falls monotonically onto the root
        x = b
        for _ in range(60):
            fx = (g + h) * x ** 3 + N * h * x - 2 * N * D1
            step = fx / (3 * (g + h) * x * x + N * h)
            x -= step
            if step < 1e-13 * x:
                break
        bmax = max(bmax, beta(x), beta(min(x * (1 + 1e-12), hi)))
    tol = 1e-7 * (abs(bmin) + abs(bmax) + (g + h) * hi + D1 + N * h / lo + N * D1 / (lo * lo)) + 1e-6
    return bmin - tol, bmax + tol


@numba.njit(cache=True)
def _emit(out, n, p, d, e, g, m, f, h, l, r):
    if n < out.shape[0]:
        out[n, 0] = p
        out[n, 1] = d
        out[n, 2] = e
        out[n, 3] = g
        out[n, 4] = m
        out[n, 5] = f
        out[n, 6] = h
        out[n, 7] = l
        out[n, 8] = r
    return n + 1


@numba.njit(cache=True)
def _kernel(N, g, out):
    """All candidate nodes with the given N and g; returns (candidates, nodes visited)."""
    n = 0
    visited = 0
    for h in range(1, N + 1):
        gh = g + h
        step_n = gh // _gcd(N * h, gh)          # ratio-3: (g+h) | Nhp
        if step_n > N:
            continue
        for l in range(1, N + 1):
            for m in range(g * l // h + 1, N + 1):
                D1 = h * m - g * l          # gl - hm < 0
                s1 = gh // _gcd(D1, gh)     # ratio-1: (g+h) | p*D1
                step_p = s1 // _gcd(s1, step_n) * step_n
                if step_p > N:
                    continue
                gl_ = _gcd(l, m)
                rs = l // gl_
                inv = 0
                if rs > 1:
                    a0, b0, x0, x1 = (m // gl_) % rs, rs, 1, 0
                    while b0:
                        qq = a0 // b0
                        a0, b0 = b0, a0 - qq * b0
                        x0, x1 = x1, x0 - qq * x1
                    inv = x0 % rs
                have_range = False
                bmin = 0.0
                bmax = 0.0
                for p in range(step_p, N + 1, step_p):
                    K = p * D1 // gh            # lf - mr
                    if K % gl_:
                        continue
                    t2 = N * h * p
                    if not have_range:
                        bmin, bmax = _beta_range(N, g, h, D1)
                        have_range = True
                    r0 = ((-(K // gl_)) * inv) % rs if rs > 1 else 0
                    rlo = (l * bmin - h * K) / D1
                    rhi = (l * bmax - h * K) / D1
                    if rhi < 0 or rlo > N:
                        continue
                    if rlo > r0:
                        r0 += int((rlo - r0) // rs) * rs
                    rtop = N
                    if rhi < N:
                        rtop = int(math.floor(rhi)) + 1
                    for r in range(r0, rtop + 1, rs):
                        f = (K + m * r) // l
                        if f > N:
                            break
                        visited += 1
                        # ratio-2: g d + h e = c1
                        t1 = p * (g * (l + m) + h * (f + r))
                        if t1 % gh:
                            continue
                        c1 = t1 // gh + N
                        # ratio-3: (fh - gr) d - D1 e = c2
                        a2 = f * h - g * r
                        c2 = -(t2 // gh) - N * (m + r) + p * K
                        det = -g * D1 - a2 * h
                        if det != 0:
                            dn = -c1 * D1 - c2 * h
                            en = g * c2 - a2 * c1
                            if dn % det or en % det:
                                continue
                            d = dn // det
                            e = en // det
                            if d < 0 or d > N or e < 0 or e > N:
                                continue
                            Delta = -p * K - d * (g * r - f * h) + e * (g * l - h * m)
                            if _cubic_may_vanish(p, -p * (m + r) + e * h + d * g - N, Delta + N * (m + r), N * K, N):
                                n = _emit(out, n, p, d, e, g, m, f, h, l, r)
                        else:
                            for d in range(0, N + 1):
                                en = c1 - g * d
                                if en < 0:
                                    break
                                if en % h:
                                    continue
                                e = en // h
                                if e > N or a2 * d - D1 * e != c2:
                                    continue
                                Delta = -p * K - d * (g * r - f * h) + e * (g * l - h * m)
                                if _cubic_may_vanish(p, -p * (m + r) + e * h + d * g - N, Delta + N * (m + r),
                                                     N * K, N):
                                    n = _emit(out, n, p, d, e, g, m, f, h, l, r)
    return n, visited


# ------------------------------------------------------------------ exact checks

def _delta(p, d, e, g, m, f, h, l, r):
    return p * (m * r - f * l) - d * (g * r - f * h) + e * (g * l - m * h)


def cubic1(N, node) -> list[int]:
    """Coefficients of cubic1 in lambda, constant term first."""
    p, d, e, g, m, f, h, l, r = node
    return [-N * (m * r - l * f), _delta(*node) + N * (m + r), -p * (m + r) + e * h + d * g - N, p]


def equations_hold(N, node) -> bool:
    p, d, e, g, m, f, h, l, r = node
    if min(node) < 0 or max(node) > N or p < 1 or h < 1 or l < 1:
        return False
    if not (g * l - h * m < 0 and m * r - l * f < 0):
        return False
    delta = _delta(*node)
    return (p * (g * l - h * m) == (g + h) * (m * r - l * f)
            and p * (g * l - h * m + h * f - g * r) == (g + h) * (-p * (m + r) + e * h + d * g - N)
            and -p * N * h == (g + h) * (delta + N * (m + r)))


def _sign_at_sqrt(coeffs: list[Fraction], q: Fraction) -> int:
    """Exact sign of sum c_k x^k at x = sqrt(q), q > 0."""
    A = sum((c * q ** (k // 2) for k, c in enumerate(coeffs) if k % 2 == 0), Fraction(0))
    B = sum((c * q ** (k // 2) for k, c in enumerate(coeffs) if k % 2 == 1), Fraction(0))
    # value = A + B*sqrt(q)
    sa = (A > 0) - (A < 0)
    sb = (B > 0) - (B < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    diff = A * A - B * B * q
    return sa if diff > 0 else (sb if diff < 0 else 0)


def _trim(c: list[Fraction]) -> list[Fraction]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    _, rem = poly_divmod(UniPoly(a, "lam"), UniPoly(b, "lam"))
    return _trim([Fraction(x) for x in rem.coeffs])


def _gcd_poly(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _rem(a, b)
    return [c / a[-1] for c in a] if a else a


def _sturm(c: list[Fraction]) -> list[list[Fraction]]:
    seq = [_trim(c)]
    deriv = _trim([k * x for k, x in enumerate(c)][1:])
    if deriv:
        seq.append(deriv)
    while len(seq[-1]) > 1:
        rem = _rem(seq[-2], seq[-1])
        if not rem:
            break
        seq.append([-x for x in rem])
    return seq


def _variations(seq, q: Fraction) -> int:
    signs = [s for s in (_sign_at_sqrt(p, q) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def roots_between_sqrts(coeffs, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the open interval (sqrt(lo), sqrt(hi))."""
    c = _trim([Fraction(x) for x in coeffs])
    if len(c) <= 1:
        return 0
    # make square-free so the Sturm count is exact
    g = _gcd_poly(c, _trim([k * x for k, x in enumerate(c)][1:]))
    if len(g) > 1:
        c, _ = poly_divmod(UniPoly(c, "lam"), UniPoly(g, "lam"))
        c = _trim([Fraction(x) for x in c.coeffs])
    for end in (lo, hi):
        if _sign_at_sqrt(c, end) == 0:
            # the endpoint is a root: divide out its minimal polynomial
            root = Fraction(math.isqrt(end.numerator), math.isqrt(end.denominator))
            mp = [-root, Fraction(1)] if root * root == end else [-end, Fraction(0), Fraction(1)]
            c, _ = poly_divmod(UniPoly(c, "lam"), UniPoly(mp, "lam"))
            c = _trim([Fraction(x) for x in c.coeffs])
            return roots_between_sqrts(c, lo, hi)
    seq = _sturm(c)
    return _variations(seq, lo) - _variations(seq, hi)


def _has_rational_root(c: list[int]) -> bool:
    c = list(c)
    while c and c[0] == 0:
        return True
    lead, const = abs(c[-1]), abs(c[0])
    for a in divisors(const):
        for b in divisors(lead):
            for sgn in (1, -1):
                x = Fraction(sgn * a, b)
                if sum(Fraction(k) * x ** i for i, k in enumerate(c)) == 0:
                    return True
    return False


def _eigen_relation(N, node) -> list[Fraction]:
    """u^2 lambda^2 - (2 lambda^2 - N) w^2 with u = (m-lam)(r-lam) - fl and w = gl - h(m-lam)."""
    p, d, e, g, m, f, h, l, r = node
    u = UniPoly([m * r - f * l, -(m + r), 1], "lam")
    w = UniPoly([g * l - h * m, h], "lam")
    lam2 = UniPoly([0, 0, 1], "lam")
    expr = u * u * lam2 - (lam2 * 2 - UniPoly([N], "lam")) * w * w
    return [Fraction(x) for x in expr.coeffs]


def _int_sign_at_sqrt(A: int, B: int, q2: int, den: int) -> int:
    """Sign of A + B*sqrt(q2/den) for integers, den in (1, 2)."""
    sa = (A > 0) - (A < 0)
    sb = (B > 0) - (B < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    diff = den * A * A - B * B * q2
    return sa if diff > 0 else (sb if diff < 0 else 0)


def _root_in_window(c: list[int], N: int) -> bool:
    c0, c1, c2, c3 = c
    # value at sqrt(N/2), doubled: (2c0 + N c2) + (2c1 + N c3) sqrt(N/2)
    s_lo = _int_sign_at_sqrt(2 * c0 + N * c2, 2 * c1 + N * c3, N, 2)
    s_hi = _int_sign_at_sqrt(c0 + N * c2, c1 + N * c3, N, 1)
    # a strict sign change settles it without building a Sturm chain
    if s_lo * s_hi < 0:
        return True
    return roots_between_sqrts(c, Fraction(N, 2), Fraction(N)) > 0


def exact_survivor(N, node, strict: bool = False) -> bool:
    if not equations_hold(N, node):
        return False
    c = cubic1(N, node)
    if not _root_in_window(c, N):
        return False
    if not strict:
        return True
    # for an irreducible cubic the gcd with the eigen relation is 1 or the cubic itself,
    # so a shared root means the cubic divides it
    if _rem(_eigen_relation(N, node), [Fraction(x) for x in c]):
        return False
    return not _has_rational_root(c)


# ------------------------------------------------------------------ driver

def _task(args):
    N, g, strict = args
    out = np.zeros((_OUT_ROWS, 9), dtype=np.int64)
    n, visited = _kernel(N, g, out)
    if n > _OUT_ROWS:
        raise RuntimeError(f"candidate buffer overflow at N={N}, g={g}")
    found = []
    for row in out[:n]:
        node = tuple(int(x) for x in row)
        if exact_survivor(N, node, strict):
            found.append((N,) + node)
    return N, g, int(visited), found


def search_32(nmax: int, workers: int = 1, strict: bool = False, nmin: int = 1) -> SearchReport:
    """Run the bounded search for N in nmin..nmax; the report does not depend on the worker count."""
    if nmax < 1 or nmin < 1:
        raise ValueError("Nmax must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    start = time.perf_counter()
    tasks = [(N, g, strict) for N in range(nmin, nmax + 1) for g in range(0, N + 1)]
    # largest tasks first keeps the pool busy; results are merged in sorted order anyway
    tasks.sort(key=lambda t: (-t[0], t[1]))
    if workers == 1:
        results = [_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_task, tasks, chunksize=4))
    nodes: dict[int, int] = {N: 0 for N in range(nmin, nmax + 1)}
    sols = []
    for N, _g, visited, found in results:
        nodes[N] += visited
        sols.extend(found)
    return SearchReport(nmin, nmax, "strict" if strict else "literal", nodes, sorted(sols),
                        time.perf_counter() - start)
