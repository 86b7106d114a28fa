"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`.  Cyclotomic numbers live in
Q(zeta_m) in the power basis reduced modulo the m-th cyclotomic polynomial.
:class:`ParamPoly` is a multivariate polynomial in named parameters and
:class:`UniPoly` a univariate polynomial whose coefficients are either
rationals or ParamPolys.
"""

from __future__ import annotations

import ast
import math
import os
import re
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational as _RationalABC

import mpmath

Rational = Fraction

DEFAULT_PRECISION = 64
DEFAULT_PRECISION_CAP = 4096


# ---------------------------------------------------------------- integers

def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    """Euler's phi via prime factorization."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"totient needs a positive integer, got {n!r}")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ------------------------------------------------------ integer coeff lists

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (lowest degree first), den monic."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact division")
    return q


@lru_cache(maxsize=None)
def _cyclo_coeffs(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = _int_divexact(num, list(_cyclo_coeffs(d)))
    return tuple(num)


def cyclotomic_poly(n: int) -> "UniPoly":
    """Phi_n, by dividing x^n - 1 by Phi_d for the proper divisors d of n."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic_poly needs a positive integer, got {n!r}")
    return UniPoly([Fraction(c) for c in _cyclo_coeffs(n)])


# ------------------------------------------------------------ cyclotomics

class CycloField:
    """Q(zeta_m) with its power basis {1, zeta, ..., zeta^(phi(m)-1)}."""

    def __init__(self, m: int):
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"field order must be a positive integer, got {m!r}")
        self.m = m
        self.modulus = _cyclo_coeffs(m)
        self.degree = len(self.modulus) - 1
        deg = self.degree
        # zeta^k in the power basis for 0 <= k < max(m, 2*deg - 1)
        rows = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(max(m, 2 * deg - 1)):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * self.modulus[j]
        self._pow = rows

    def __repr__(self):
        return f"CycloField({self.m})"

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.m == self.m

    def __hash__(self):
        return hash(("CycloField", self.m))

    def zeta_power(self, k: int) -> tuple[int, ...]:
        return self._pow[k % self.m]

    def zero(self) -> "CycloNum":
        return CycloNum(self, (Fraction(0),) * self.degree, _trusted=True)

    def one(self) -> "CycloNum":
        return self.const(1)

    def const(self, r) -> "CycloNum":
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(r)
        return CycloNum(self, tuple(c), _trusted=True)

    def zeta(self, k: int = 1) -> "CycloNum":
        return CycloNum(self, tuple(Fraction(v) for v in self.zeta_power(k)), _trusted=True)

    def from_exponents(self, terms) -> "CycloNum":
        """Element sum(c * zeta^k) for (k, c) in terms; any integer k."""
        acc = [Fraction(0)] * self.degree
        for k, c in terms:
            c = Fraction(c)
            for j, v in enumerate(self.zeta_power(k)):
                if v:
                    acc[j] += c * v
        return CycloNum(self, tuple(acc), _trusted=True)

    def i(self) -> "CycloNum":
        if self.m % 4:
            raise ValueError(f"i is not in Q(zeta_{self.m})")
        return self.zeta(self.m // 4)


@lru_cache(maxsize=None)
def field(m: int) -> CycloField:
    return CycloField(m)


class CycloNum:
    """Immutable element of Q(zeta_m), coordinates over the power basis."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, fld: CycloField, coords, _trusted: bool = False):
        if not _trusted:
            coords = tuple(Fraction(c) for c in coords)
            if len(coords) != fld.degree:
                raise ValueError(f"expected {fld.degree} coordinates, got {len(coords)}")
        self.field = fld
        self.coords = coords
        self._hash = None

    # -- basics
    @property
    def m(self) -> int:
        return self.field.m

    def __repr__(self):
        return f"CycloNum(m={self.m}, {self.to_text()})"

    def to_text(self) -> str:
        """Canonical `k:n/d,...` form used in tiling files."""
        parts = [f"{k}:{c.numerator}/{c.denominator}" for k, c in enumerate(self.coords) if c]
        return ",".join(parts) if parts else "0:0/1"

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if self.field.m != other.field.m:
                x, o = self._align(other)
                return x.coords == o.coords
            return self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.m, self.coords))
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coords[0]

    def _coerce(self, other) -> "CycloNum":
        """Same-field operand; a mismatch is an error."""
        if isinstance(other, CycloNum):
            if other.field.m != self.field.m:
                raise ValueError(f"field mismatch: Q(zeta_{self.m}) vs Q(zeta_{other.m})")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        raise TypeError(f"cannot combine CycloNum with {type(other).__name__}")

    def _align(self, other) -> tuple["CycloNum", "CycloNum"]:
        """Operands in a common field; the operators embed into Q(zeta_lcm)."""
        if isinstance(other, CycloNum) and other.field.m != self.field.m:
            big = _lcm(self.m, other.m)
            return self.embed(big), other.embed(big)
        return self, self._coerce(other)

    # -- arithmetic
    def __add__(self, other):
        try:
            x, o = self._align(other)
        except TypeError:
            return NotImplemented
        return CycloNum(x.field, tuple(a + b for a, b in zip(x.coords, o.coords)), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.coords), _trusted=True)

    def __sub__(self, other):
        try:
            x, o = self._align(other)
        except TypeError:
            return NotImplemented
        return CycloNum(x.field, tuple(a - b for a, b in zip(x.coords, o.coords)), _trusted=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.field, tuple(a * other for a in self.coords), _trusted=True)
        try:
            x, o = self._align(other)
        except TypeError:
            return NotImplemented
        fld = x.field
        deg = fld.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(x.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        out = prod[:deg]
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                for j, v in enumerate(fld.zeta_power(k)):
                    if v:
                        out[j] += c * v
        return CycloNum(fld, tuple(out), _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return self.field.const(1 / self.coords[0])
        # 1/x = prod of the other conjugates / norm
        m = self.m
        num = self.field.one()
        for k in range(2, m):
            if math.gcd(k, m) == 1:
                num = num * automorphism(k, self)
        norm = num * self
        return num * (1 / norm.rational())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        try:
            x, o = self._align(other)
        except TypeError:
            return NotImplemented
        return x * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- structure
    def conjugate(self) -> "CycloNum":
        return automorphism(-1, self)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def embed(self, big_m: int) -> "CycloNum":
        """Image in Q(zeta_M) for a multiple M of m, with zeta_m = zeta_M^(M/m)."""
        if big_m % self.m:
            raise ValueError(f"{big_m} is not a multiple of {self.m}")
        step = big_m // self.m
        return field(big_m).from_exponents((k * step, c) for k, c in enumerate(self.coords) if c)

    def approx(self) -> complex:
        m = self.m
        re_ = im_ = 0.0
        for k, c in enumerate(self.coords):
            if c:
                t = 2 * math.pi * k / m
                re_ += float(c) * math.cos(t)
                im_ += float(c) * math.sin(t)
        return complex(re_, im_)

    def __float__(self):
        return self.approx().real

    def sign(self) -> int:
        return sign(self)


def cyclo_arith(op: str, x: CycloNum, y=None) -> CycloNum:
    """Dispatch form of the field operations: add, sub, mul, inv, pow."""
    if op == "add":
        return x + x._coerce(y)
    if op == "sub":
        return x - x._coerce(y)
    if op == "mul":
        return x * x._coerce(y)
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown operation {op!r}")


def automorphism(k: int, x: CycloNum) -> CycloNum:
    """sigma_k: zeta -> zeta^k."""
    m = x.m
    if math.gcd(k, m) != 1:
        raise ValueError(f"gcd({k}, {m}) != 1; zeta -> zeta^{k} is not an automorphism")
    return x.field.from_exponents((j * k, c) for j, c in enumerate(x.coords) if c)


def _trig_field(n: int) -> tuple[CycloField, int, CycloNum]:
    if n < 1:
        raise ValueError("n must be positive")
    big = _lcm(2 * n, 4)
    return field(big), big // (2 * n), field(big).zeta(big // 4)


def sin_pi(k: int, n: int) -> CycloNum:
    """sin(k*pi/n) in Q(zeta_M), M = lcm(2n, 4)."""
    fld, step, i = _trig_field(n)
    w = fld.from_exponents([(k * step, 1), (-k * step, -1)])
    # (w^k - w^-k) / (2i) = -i (w^k - w^-k) / 2
    return (-i) * w * Fraction(1, 2)


def cos_pi(k: int, n: int) -> CycloNum:
    """cos(k*pi/n) in Q(zeta_M), M = lcm(2n, 4)."""
    fld, step, _ = _trig_field(n)
    return fld.from_exponents([(k * step, Fraction(1, 2)), (-k * step, Fraction(1, 2))])


# ----------------------------------------------------------------- sign

def precision_cap() -> int:
    raw = os.environ.get("TRITILE_PRECISION_CAP")
    if raw is None:
        return DEFAULT_PRECISION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"TRITILE_PRECISION_CAP must be an integer, got {raw!r}") from None
    return max(cap, DEFAULT_PRECISION)


@lru_cache(maxsize=None)
def _cos_table(m: int) -> tuple[float, ...]:
    return tuple(math.cos(2 * math.pi * k / m) for k in range(m))


def _float_sign(x: CycloNum) -> int:
    """Sign from a double-precision evaluation with a rigorous error bound, 0 if undecided."""
    table = _cos_table(x.m)
    total = 0.0
    mag = 0.0
    n = 0
    try:
        for k, c in enumerate(x.coords):
            if c:
                fc = float(c)
                total += fc * table[k]
                mag += abs(fc)
                n += 1
    except OverflowError:
        return 0
    # each product carries a few ulps of error; the sum adds n more
    bound = (n + 16) * 2.0 ** -50 * mag + 1e-300
    if total > bound:
        return 1
    if total < -bound:
        return -1
    return 0


def sign(x: CycloNum, start_bits: int = DEFAULT_PRECISION, cap: int | None = None) -> int:
    """Exact sign of a real cyclotomic number.

    Exact zero test first, then evaluation of the real part of the canonical
    embedding with an explicit error bound, doubling the precision until the
    bound excludes zero.
    """
    if x.is_zero():
        return 0
    if not x.is_real():
        raise ValueError("sign of a non-real cyclotomic number")
    if x.is_rational():
        return 1 if x.coords[0] > 0 else -1
    s = _float_sign(x)
    if s:
        return s
    cap = precision_cap() if cap is None else cap
    bits = start_bits
    m = x.m
    terms = [(k, c) for k, c in enumerate(x.coords) if c]
    while bits <= cap:
        ctx = mpmath.MPContext()
        ctx.prec = bits + 16
        total = ctx.mpf(0)
        mag = ctx.mpf(0)
        for k, c in terms:
            v = ctx.mpf(c.numerator) / c.denominator
            total += v * ctx.cospi(ctx.mpf(2 * k) / m)
            mag += abs(v)
        bound = mag * ctx.ldexp(1, -bits) * (len(terms) + 4)
        if total > bound:
            return 1
        if total < -bound:
            return -1
        bits *= 2
    raise ArithmeticError(f"sign undecided at {cap} bits for a nonzero element")


def compare(x: CycloNum, y) -> int:
    return sign(x - y)


# ---------------------------------------------------------------- minpoly

def minpoly(x: CycloNum) -> "UniPoly":
    """Monic minimal polynomial over Q, by the first linear dependence among powers."""
    deg = x.field.degree
    rows: list[tuple[int, list[Fraction], list[Fraction]]] = []  # pivot, vector, combination
    power = x.field.one()
    for k in range(deg + 1):
        vec = list(power.coords)
        comb = [Fraction(0)] * (k + 1)
        comb[k] = Fraction(1)
        for piv, rvec, rcomb in rows:
            c = vec[piv]
            if c:
                for j in range(deg):
                    if rvec[j]:
                        vec[j] -= c * rvec[j]
                for j, v in enumerate(rcomb):
                    if v:
                        comb[j] -= c * v
        piv = next((j for j, v in enumerate(vec) if v), None)
        if piv is None:
            lead = comb[k]
            return UniPoly([c / lead for c in comb])
        inv = 1 / vec[piv]
        rows.append((piv, [v * inv for v in vec], [v * inv for v in comb]))
        power = power * x
    raise ArithmeticError("no linear dependence found")  # unreachable


def algebraic_degree(x: CycloNum) -> int:
    return minpoly(x).degree


# ---------------------------------------------------------------- ParamPoly

PARAM_ORDER = ("p", "d", "e", "g", "m", "f", "h", "l", "r", "N", "q", "n", "k", "t", "lam", "s", "x")
_ORDER_INDEX = {v: i for i, v in enumerate(PARAM_ORDER)}


def _var_key(v: str):
    return (_ORDER_INDEX.get(v, len(PARAM_ORDER)), v)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: _var_key(t[0])))


def _mono_div(a: tuple, b: tuple):
    d = dict(a)
    for v, e in b:
        if d.get(v, 0) < e:
            return None
        d[v] -= e
        if not d[v]:
            del d[v]
    return tuple(sorted(d.items(), key=lambda t: _var_key(t[0])))


def _mono_deg(a: tuple) -> int:
    return sum(e for _, e in a)


class ParamPoly:
    """Multivariate polynomial in named parameters with rational coefficients.

    Terms map a monomial (sorted tuple of (name, exponent)) to a nonzero Fraction.
    Printing uses graded lexicographic order with variables ordered
    p, d, e, g, m, f, h, l, r, N, q, n, then alphabetically.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    if len(mono) > 1:
                        mono = tuple(sorted(mono, key=lambda t: _var_key(t[0])))
                    clean[mono] = clean.get(mono, 0) + c
            clean = {k: v for k, v in clean.items() if v}
        self.terms = clean
        self._hash = None

    # -- constructors
    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({(): c})

    @classmethod
    def vars(cls, names: str):
        return tuple(cls.var(v) for v in names.replace(",", " ").split())

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        return parse_poly(text)

    # -- queries
    def variables(self) -> list[str]:
        vs = {v for mono in self.terms for v, _ in mono}
        return sorted(vs, key=_var_key)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return all(not mono for mono in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.terms.get((), Fraction(0))

    def degree(self) -> int:
        return max((_mono_deg(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def ordered_terms(self) -> list[tuple[tuple, Fraction]]:
        vs = self.variables()

        def key(item):
            mono = dict(item[0])
            return (_mono_deg(item[0]), tuple(mono.get(v, 0) for v in vs))

        return sorted(self.terms.items(), key=key, reverse=True)

    def leading(self) -> tuple[tuple, Fraction]:
        return self.ordered_terms()[0]

    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.ordered_terms()]

    def all_coeffs_nonneg(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    # -- arithmetic
    @staticmethod
    def _lift(other):
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in o.terms.items():
            out[mono] = out.get(mono, 0) + c
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = _mono_mul(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = ParamPoly.const(1)
        for _ in range(e):
            result = result * self
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.exact_div(o)

    def exact_div(self, other: "ParamPoly") -> "ParamPoly":
        """Quotient of an exact multivariate division; raises if not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_const():
            return self * (1 / other.const_value())
        lm, lc = other.leading()
        rem = self
        quo = ParamPoly()
        while rem:
            mono, c = rem.leading()
            qm = _mono_div(mono, lm)
            if qm is None:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            t = ParamPoly({qm: c / lc})
            quo = quo + t
            rem = rem - t * other
        return quo

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def subs(self, values: dict) -> "ParamPoly":
        """Substitute numbers or ParamPolys for variables."""
        out = ParamPoly()
        for mono, c in self.terms.items():
            t = ParamPoly.const(c)
            for v, e in mono:
                if v in values:
                    val = values[v]
                    t = t * (val ** e if isinstance(val, ParamPoly) else ParamPoly.const(Fraction(val) ** e))
                else:
                    t = t * ParamPoly({((v, e),): 1})
            out = out + t
        return out

    def evaluate(self, values: dict) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            t = c
            for v, e in mono:
                t *= Fraction(values[v]) ** e
            total += t
        return total

    # -- printing
    def __str__(self):
        return format_param(self)

    def __repr__(self):
        return f"ParamPoly({self})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_mono(mono: tuple) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


def _join_terms(pieces: list[tuple[bool, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for idx, (neg, body) in enumerate(pieces):
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_param(pp: ParamPoly) -> str:
    return _join_terms(_param_pieces(pp))


# ------------------------------------------------------------------ parser

_ALIASES = {"ℓ": "l", "λ": "lam", "Δ": "Delta"}


def _normalize_source(text: str) -> str:
    for k, v in _ALIASES.items():
        text = text.replace(k, v)
    text = text.replace("^", "**").replace("−", "-")
    return text


def parse_poly(text: str) -> ParamPoly:
    """Parse an expression with +, -, *, /, ^ and parentheses into a ParamPoly.

    Division is allowed by rational constants only.
    """
    try:
        tree = ast.parse(_normalize_source(text), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ParamPoly.const(node.value)
        if isinstance(node, ast.Name):
            return ParamPoly.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError(f"non-integer exponent in {text!r}")
                return left ** node.right.value
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_const():
                    raise ValueError(f"division by a non-constant in {text!r}")
                return left / right.const_value()
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)


# ------------------------------------------------------------------ UniPoly

def _is_zero(c) -> bool:
    return c == 0


class UniPoly:
    """Univariate polynomial, coefficients lowest degree first.

    The coefficient ring is rational (Fraction) unless some coefficient is a
    ParamPoly, in which case the ring tag is ``"param"``.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "x"):
        cs = []
        for c in coeffs:
            if isinstance(c, ParamPoly):
                cs.append(c.const_value() if c.is_const() else c)
            else:
                cs.append(Fraction(c))
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @property
    def ring(self) -> str:
        return "param" if any(isinstance(c, ParamPoly) for c in self.coeffs) else "rational"

    @classmethod
    def from_param(cls, pp: ParamPoly, var: str = "x") -> "UniPoly":
        """Collect a ParamPoly by powers of the variable ``var``."""
        buckets: dict[int, dict] = {}
        for mono, c in pp.terms.items():
            d = dict(mono)
            e = d.pop(var, 0)
            rest = tuple(sorted(d.items(), key=lambda t: _var_key(t[0])))
            buckets.setdefault(e, {})[rest] = c
        if not buckets:
            return cls([], var)
        top = max(buckets)
        return cls([ParamPoly(buckets.get(k, {})) for k in range(top + 1)], var)

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "UniPoly":
        return cls.from_param(parse_poly(text), var)

    def to_param(self) -> ParamPoly:
        x = ParamPoly.var(self.var)
        out = ParamPoly()
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                out = out + ParamPoly._lift(c) * x ** k
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    # -- arithmetic
    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return UniPoly([other], self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self.coeff(k) + o.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                if not _is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly([1], self.var)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, g: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        return poly_divmod(self, g)

    def __mod__(self, g):
        return poly_rem(self, g)

    def derivative(self) -> "UniPoly":
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, value):
        """Horner evaluation at a number, CycloNum, ParamPoly or UniPoly."""
        acc = Fraction(0) if not isinstance(value, CycloNum) else value.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def subs_params(self, values: dict) -> "UniPoly":
        return UniPoly(
            [c.subs(values) if isinstance(c, ParamPoly) else c for c in self.coeffs], self.var
        )

    def monic(self) -> "UniPoly":
        lc = self.lead()
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def scaled_to_integers(self) -> "UniPoly":
        """Rational polynomial scaled to primitive integer coefficients, positive lead."""
        den = reduce(_lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0) or 1
        if ints and ints[-1] < 0:
            g = -g
        return UniPoly([Fraction(v, g) for v in ints], self.var)

    def __str__(self):
        return format_uni(self)

    def __repr__(self):
        return f"UniPoly({self})"


def _xpow(var: str, k: int) -> str:
    return "" if k == 0 else (var if k == 1 else f"{var}^{k}")


def _param_pieces(pp: ParamPoly) -> list[tuple[bool, str]]:
    out = []
    for mono, c in pp.ordered_terms():
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = _fmt_mono(mono)
        else:
            body = f"{_fmt_coeff(a)}*{_fmt_mono(mono)}"
        out.append((neg, body))
    return out


def format_uni(f: UniPoly) -> str:
    """Descending powers; multi-term parameter coefficients are parenthesized."""
    pieces = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if _is_zero(c):
            continue
        xp = _xpow(f.var, k)
        if isinstance(c, ParamPoly):
            if not xp:
                pieces.extend(_param_pieces(c))
                continue
            terms = c.ordered_terms()
            if len(terms) == 1:
                neg, core = _param_pieces(c)[0]
                body = f"{core}*{xp}"
            else:
                neg = terms[0][1] < 0
                body = f"({format_param(-c if neg else c)})*{xp}"
        else:
            neg = c < 0
            a = -c if neg else c
            if not xp:
                body = _fmt_coeff(a)
            elif a == 1:
                body = xp
            else:
                body = f"{_fmt_coeff(a)}*{xp}"
        pieces.append((neg, body))
    return _join_terms(pieces)


def poly_divmod(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Quotient and remainder; leading-coefficient division must be exact."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    var = f.var
    rem = list(f.coeffs)
    dg = g.degree
    lc = g.lead()
    quo = [Fraction(0)] * max(len(rem) - dg, 0)
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k]
        if _is_zero(c):
            continue
        if isinstance(lc, ParamPoly):
            t = ParamPoly._lift(c).exact_div(lc)
        elif isinstance(c, ParamPoly):
            t = c / lc
        else:
            t = c / lc
        quo[k - dg] = t
        for j, gj in enumerate(g.coeffs):
            if not _is_zero(gj):
                rem[k - dg + j] = rem[k - dg + j] - t * gj
    return UniPoly(quo, var), UniPoly(rem[:dg] if dg > 0 else [], var)


def poly_rem(f: UniPoly, g: UniPoly) -> UniPoly:
    return poly_divmod(f, g)[1]


def pseudo_rem(f: UniPoly, g: UniPoly) -> tuple[UniPoly, int]:
    """lc(g)^k * f mod g without coefficient division; returns (remainder, k)."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lc = g.lead()
    rem = f
    k = 0
    while not rem.is_zero() and rem.degree >= g.degree:
        shift = rem.degree - g.degree
        lead = rem.lead()
        rem = rem * lc - UniPoly([0] * shift + [lead], f.var) * g
        k += 1
    return rem, k


def is_rational_number(x) -> bool:
    return isinstance(x, (int, Fraction, _RationalABC))


_CYC_TERM = re.compile(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*/\s*(\d+)\s*$")


def parse_cyclo(text: str, m: int) -> CycloNum:
    """Parse `k1:n1/d1,k2:n2/d2` into an element of Q(zeta_m)."""
    fld = field(m)
    coords = [Fraction(0)] * fld.degree
    for part in text.split(","):
        mt = _CYC_TERM.match(part)
        if not mt:
            raise ValueError(f"bad cyclotomic term {part!r}")
        k, num, den = int(mt.group(1)), int(mt.group(2)), int(mt.group(3))
        if den == 0:
            raise ValueError(f"zero denominator in {part!r}")
        if not 0 <= k < fld.degree:
            raise ValueError(f"exponent {k} outside 0..{fld.degree - 1}")
        coords[k] += Fraction(num, den)
    return CycloNum(fld, tuple(coords), _trusted=True)
