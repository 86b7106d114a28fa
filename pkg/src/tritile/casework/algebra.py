"""Small algebra helpers shared by the certifiers.

Polynomials in one variable with parameter coefficients are reduced modulo a
rational minimal polynomial; Laurent polynomials in a root of unity are kept
as exponent maps and folded with zeta^(m/2) = -1.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..exactalg import CycloNum, ParamPoly, UniPoly, parse_poly, poly_rem

P0 = ParamPoly.const(0)


def as_param_uni(f: UniPoly) -> UniPoly:
    return UniPoly([ParamPoly._lift(c) for c in f.coeffs], f.var)


def reduce_mod(f: UniPoly, modulus: UniPoly) -> UniPoly:
    """f mod modulus, with the result padded to the modulus degree."""
    rem = poly_rem(f, modulus)
    coeffs = [ParamPoly._lift(c) for c in rem.coeffs]
    coeffs += [P0] * (modulus.degree - len(coeffs))
    return UniPoly(coeffs, f.var)


def coefficient_equations(lhs: UniPoly, rhs: UniPoly, modulus: UniPoly) -> list[tuple[int, ParamPoly]]:
    """Reduce both sides and return (power, rhs_k - lhs_k) for every power below the modulus degree."""
    a, b = reduce_mod(lhs, modulus), reduce_mod(rhs, modulus)
    out = []
    for k in range(modulus.degree - 1, -1, -1):
        out.append((k, ParamPoly._lift(b.coeff(k)) - ParamPoly._lift(a.coeff(k))))
    return out


def parse_uni(text: str, var: str) -> UniPoly:
    """Read a transcribed formula as a polynomial in var with parameter coefficients."""
    pp = parse_poly(text)
    deg = pp.degree_in(var)
    co = [P0] * (deg + 1)
    for mono, c in pp.terms.items():
        powers = dict(mono)
        k = powers.pop(var, 0)
        co[k] = co[k] + ParamPoly({tuple(powers.items()): c})
    return UniPoly(co, var)


# ------------------------------------------------------------ Laurent forms

class Laurent:
    """Finite sum of c_k * z^k with ParamPoly coefficients and integer k of either sign."""

    def __init__(self, terms=None):
        self.terms = {k: ParamPoly._lift(v) for k, v in (terms or {}).items() if ParamPoly._lift(v)}

    @classmethod
    def sine(cls, k: int) -> "Laurent":
        """z^k - z^-k, which is 2i*sin(k*theta) for z = e^(i*theta)."""
        return cls({k: 1, -k: -1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, P0) + v
        return Laurent(out)

    def __neg__(self):
        return Laurent({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return Laurent({k: v * other for k, v in self.terms.items()})
        out: dict[int, ParamPoly] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = out.get(i + j, P0) + a * b
        return Laurent(out)

    __rmul__ = __mul__

    def fold(self, order: int, shift: int = 0, var: str = "x") -> UniPoly:
        """Multiply by z^shift and use z^order = 1, z^(order/2) = -1; degree stays below order/2."""
        half = order // 2
        co = [P0] * half
        for k, c in self.terms.items():
            e = (k + shift) % order
            if e >= half:
                co[e - half] = co[e - half] - c
            else:
                co[e] = co[e] + c
        return UniPoly(co, var)


# ------------------------------------------------------------ linear algebra

def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} over Q by Gauss-Jordan elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def coords(x: CycloNum, m: int) -> list[Fraction]:
    return list(x.embed(m).coords) if x.m != m else list(x.coords)


# ------------------------------------------------------------ printing

def compact_param(pp: ParamPoly, order: str) -> str:
    """Implicit-product printing with the given variable order, e.g. '256(ql + rn)'."""
    from math import gcd
    if pp.is_zero():
        return "0"
    rank = {v: i for i, v in enumerate(order)}
    vals = list(pp.terms.values())
    content = 0
    for c in vals:
        content = gcd(content, c.numerator) if c.denominator == 1 else 1
    if content in (0, 1) or len(vals) == 1:
        content = 1
    if all(c < 0 for c in vals) and len(vals) > 1:
        content = -content

    def mono_text(mono):
        parts = sorted(mono, key=lambda t: rank.get(t[0], len(rank)))
        return "".join(v if e == 1 else f"{v}^{e}" for v, e in parts)

    def mono_key(mono):
        parts = sorted(mono, key=lambda t: rank.get(t[0], len(rank)))
        return tuple(rank.get(v, len(rank)) for v, _ in parts)

    items = sorted(pp.terms.items(), key=lambda kv: (-sum(e for _, e in kv[0]), mono_key(kv[0])))
    pieces = []
    for mono, c in items:
        c = c / content
        neg = c < 0
        a = -c if neg else c
        body = mono_text(mono)
        if not body:
            body = str(a)
        elif a != 1:
            body = f"{a}{body}"
        pieces.append((neg, body))
    text = ""
    for i, (neg, body) in enumerate(pieces):
        if i == 0:
            text = ("-" if neg else "") + body
        else:
            text += (" - " if neg else " + ") + body
    if content == 1:
        return text
    if content == -1:
        return f"-({text})"
    return f"{content}({text})"


def compact_uni(f: UniPoly, order: str) -> str:
    """Descending powers with implicit products: '-qnx^11 + qnx^9 - ... - N'."""
    pieces = []
    for k in range(f.degree, -1, -1):
        c = ParamPoly._lift(f.coeff(k))
        if c.is_zero():
            continue
        xp = "" if k == 0 else (f.var if k == 1 else f"{f.var}^{k}")
        inner = compact_param(c, order)
        neg = inner.startswith("-")
        core = inner[1:] if neg else inner
        if len(c.terms) > 1 and not core.endswith(")"):
            core = f"({core})"
        if xp:
            core = xp if core == "1" else f"{core}{xp}"
        pieces.append((neg, core))
    text = ""
    for i, (neg, body) in enumerate(pieces):
        text += (("-" if neg else "") if i == 0 else (" - " if neg else " + ")) + body
    return text or "0"


def normalize_tex(text: str) -> str:
    """Flatten a TeX-typeset formula for comparison: drop braces, spacing and macro names."""
    text = text.replace("\\ell", "l").replace("\\zeta", "x").replace("ζ", "x").replace("ℓ", "l")
    text = re.sub(r"\\[a-zA-Z]+", "", text)
    text = text.replace("{", "").replace("}", "").replace("*", "")
    return re.sub(r"\s+", "", text)
