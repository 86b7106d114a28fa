"""Zero-fact propagation for equations in nonnegative integer parameters.

Every parameter is a count of tile edges, so it is a nonnegative integer.
That alone settles many equations: a vanishing sum of nonnegative monomials
kills every monomial, and a vanishing product kills a factor once the other
factors are known to be nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exactalg import ParamPoly, format_param
from .reports import Step


@dataclass
class ZeroFactBase:
    zero: set[str] = field(default_factory=set)
    nonzero: set[str] = field(default_factory=set)
    zero_products: set[tuple[str, ...]] = field(default_factory=set)
    positive_sums: set[tuple[str, ...]] = field(default_factory=set)
    trace: list[Step] = field(default_factory=list)

    def __post_init__(self):
        self.zero = set(self.zero)
        self.nonzero = set(self.nonzero)
        self.zero_products = {tuple(sorted(p)) for p in self.zero_products}
        self.positive_sums = {tuple(sorted(s)) for s in self.positive_sums}
        clash = self.zero & self.nonzero
        if clash:
            raise ValueError(f"parameters both zero and nonzero: {sorted(clash)}")

    def copy(self) -> "ZeroFactBase":
        return ZeroFactBase(set(self.zero), set(self.nonzero), set(self.zero_products),
                            set(self.positive_sums), list(self.trace))

    def is_consistent(self) -> bool:
        return not (self.zero & self.nonzero)

    def summary(self) -> list[str]:
        out = [f"{v} = 0" for v in sorted(self.zero)]
        out += [f"{v} != 0" for v in sorted(self.nonzero)]
        out += ["*".join(p) + " = 0" for p in sorted(self.zero_products)]
        out += [" + ".join(s) + " > 0" for s in sorted(self.positive_sums)]
        return out


@dataclass
class Contradiction:
    reason: str
    facts: ZeroFactBase

    @property
    def trace(self) -> list[Step]:
        return self.facts.trace

    def __bool__(self):
        return False


class _Stop(Exception):
    def __init__(self, reason: str):
        self.reason = reason


def _monomial_vars(mono: tuple) -> tuple[str, ...]:
    return tuple(sorted(v for v, _ in mono))


def _split_common_monomial(pp: ParamPoly) -> tuple[tuple[str, ...], ParamPoly]:
    """Write pp = (product of variables) * rest with the variable product as large as possible."""
    monos = list(pp.terms)
    common = None
    for mono in monos:
        d = dict(mono)
        common = d if common is None else {v: min(e, d.get(v, 0)) for v, e in common.items()}
    common = {v: e for v, e in (common or {}).items() if e > 0}
    if not common:
        return (), pp
    divisor = ParamPoly({tuple(sorted(common.items())): 1})
    return tuple(sorted(common)), pp.exact_div(divisor)


class _Engine:
    def __init__(self, facts: ZeroFactBase):
        self.f = facts

    def log(self, statement: str, rule: str) -> None:
        self.f.trace.append(Step(statement, rule))

    def known_positive(self, pp: ParamPoly) -> bool:
        """All coefficients nonnegative and some term is certainly positive."""
        if not pp.all_coeffs_nonneg():
            return False
        for mono, c in pp.terms.items():
            vs = _monomial_vars(mono)
            if c > 0 and all(v in self.f.nonzero for v in vs):
                return True
        vs = set(pp.variables())
        if pp.degree() == 1 and all(c == 1 for c in pp.terms.values()):
            for s in self.f.positive_sums:
                if set(s) <= vs:
                    return True
        return False

    def set_zero(self, v: str, why: str) -> bool:
        if v in self.f.zero:
            return False
        if v in self.f.nonzero:
            self.log(f"{v} = 0", why)
            raise _Stop(f"{v} is known nonzero but is forced to 0")
        self.f.zero.add(v)
        self.log(f"{v} = 0", why)
        for s in self.f.positive_sums:
            if all(x in self.f.zero for x in s):
                raise _Stop(f"{' + '.join(s)} is known positive but every term is 0")
        return True

    def product_zero(self, vs: tuple[str, ...], why: str) -> bool:
        vs = tuple(sorted(set(vs)))
        if any(v in self.f.zero for v in vs):
            return False
        if len(vs) == 1:
            return self.set_zero(vs[0], why)
        open_vars = [v for v in vs if v not in self.f.nonzero]
        if not open_vars:
            self.log("*".join(vs) + " = 0", why)
            raise _Stop(f"product {'*'.join(vs)} of nonzero parameters is forced to 0")
        if len(open_vars) == 1:
            v = open_vars[0]
            known = ", ".join(x for x in vs if x != v)
            return self.set_zero(v, f"{'*'.join(vs)} = 0 with {known} nonzero")
        if vs in self.f.zero_products:
            return False
        self.f.zero_products.add(vs)
        self.log("*".join(vs) + " = 0", why)
        return True

    def revisit_products(self) -> bool:
        changed = False
        for prod in sorted(self.f.zero_products):
            if any(v in self.f.zero for v in prod):
                continue
            open_vars = [v for v in prod if v not in self.f.nonzero]
            if len(open_vars) <= 1:
                changed |= self.product_zero(prod, f"{'*'.join(prod)} = 0 with the other factors nonzero")
        # x*s = 0 for every s in a positive sum forces x = 0
        for s in sorted(self.f.positive_sums):
            live = [t for t in s if t not in self.f.zero]
            candidates = set()
            for prod in self.f.zero_products:
                candidates.update(prod)
            for x in sorted(candidates):
                if x in self.f.zero or x in s:
                    continue
                if live and all(tuple(sorted((x, t))) in self.f.zero_products for t in live):
                    changed |= self.set_zero(x, f"{x}*({' + '.join(s)}) = 0 with {' + '.join(s)} > 0")
        return changed

    def apply(self, eq: ParamPoly) -> bool:
        pp = eq.subs({v: 0 for v in self.f.zero})
        if pp.is_zero():
            return False
        if not pp.all_coeffs_nonneg():
            if (-pp).all_coeffs_nonneg():
                pp = -pp
            else:
                return False
        text = format_param(pp) + " = 0"
        if () in pp.terms:
            raise _Stop(f"{text}: a positive constant cannot vanish")
        common, rest = _split_common_monomial(pp)
        if common and self.known_positive(rest):
            return self.product_zero(common, f"{text} and {format_param(rest)} > 0")
        if len(pp.terms) == 1:
            return self.product_zero(common, f"{text}")
        changed = False
        for mono in sorted(pp.terms, key=lambda m: format_param(ParamPoly({m: 1}))):
            vs = _monomial_vars(mono)
            changed |= self.product_zero(vs, f"{text}: a sum of nonnegative monomials vanishes termwise")
        return changed


def propagate_nonneg(equations, facts: ZeroFactBase | None = None) -> ZeroFactBase | Contradiction:
    """Apply the nonnegativity rules to a fixpoint.

    Returns the enlarged fact base, or a :class:`Contradiction` (falsy) when a
    quantity known to be positive is forced to vanish.
    """
    base = facts.copy() if facts is not None else ZeroFactBase()
    eqs = [ParamPoly._lift(e) if not isinstance(e, ParamPoly) else e for e in equations]
    eng = _Engine(base)
    try:
        changed = True
        while changed:
            changed = False
            for e in eqs:
                changed |= eng.apply(e)
            changed |= eng.revisit_products()
    except _Stop as stop:
        base.trace.append(Step("contradiction", stop.reason))
        return Contradiction(stop.reason, base)
    return base


def check_soundness(equations, facts: ZeroFactBase) -> bool:
    """The derived zeros must be consistent with every source equation."""
    zero = {v: 0 for v in facts.zero}
    for e in equations:
        pp = ParamPoly._lift(e) if not isinstance(e, ParamPoly) else e
        reduced = pp.subs(zero)
        if reduced.is_const() and reduced.const_value() != 0:
            return False
    return True


def _atoms(polys) -> list[tuple]:
    seen = set()
    for pp in polys:
        seen.update(pp.terms)
    return sorted(seen, key=lambda mono: (len(mono) == 0, format_param(ParamPoly({mono: 1}))))


def _rref(rows: list[list], order: list[int]) -> list[list]:
    from fractions import Fraction
    m = [[Fraction(r[c]) for c in order] for r in rows]
    out, row = [], 0
    for col in range(len(order)):
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
        row += 1
    for r in m[:row]:
        back = [Fraction(0)] * len(order)
        for pos, c in enumerate(order):
            back[c] = r[pos]
        out.append(back)
    return out


def settle(equations, facts: ZeroFactBase | None = None, max_rounds: int = 20) -> ZeroFactBase | Contradiction:
    """Nonnegativity propagation interleaved with linear elimination.

    Monomials are treated as unknown nonnegative quantities.  Row-reducing
    the coefficient equations under several column orders exposes rows whose
    coefficients share one sign; such a row is a new vanishing sum of
    nonnegative monomials and is handed back to the propagation.
    """
    eqs = [ParamPoly._lift(e) if not isinstance(e, ParamPoly) else e for e in equations]
    known = {_primitive(e) for e in eqs if not e.is_zero()}
    base = facts.copy() if facts is not None else ZeroFactBase()
    for _ in range(max_rounds):
        res = propagate_nonneg(eqs, base)
        if not res:
            return res
        base = res
        zero = {v: 0 for v in base.zero}
        reduced = [e.subs(zero) for e in eqs]
        reduced = [e for e in reduced if not e.is_zero()]
        atoms = _atoms(reduced)
        if not atoms:
            return base
        rows = [[e.terms.get(a, 0) for a in atoms] for e in reduced]
        idx = list(range(len(atoms)))
        orders = [idx] + [[k] + [j for j in idx if j != k] for k in idx] + [[j for j in idx if j != k] + [k] for k in idx]
        found = False
        for order in orders:
            for row in _rref(rows, order):
                nz = [c for c in row if c != 0]
                if len(nz) < 1 or not (all(c > 0 for c in nz) or all(c < 0 for c in nz)):
                    continue
                pp = ParamPoly({a: c for a, c in zip(atoms, row) if c != 0})
                key = _primitive(pp)
                if key in known:
                    continue
                known.add(key)
                eqs.append(pp)
                base.trace.append(Step(f"{format_param(key)} = 0", "linear combination of the equations"))
                found = True
        if not found:
            return base
    return base


def _primitive(pp: ParamPoly) -> ParamPoly:
    from fractions import Fraction
    from math import gcd, lcm
    vals = list(pp.terms.values())
    if not vals:
        return pp
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    nums = [int(v * den) for v in vals]
    g = 0
    for n in nums:
        g = gcd(g, abs(n))
    lead = pp.ordered_terms()[0][1]
    scale = Fraction(den, g) * (1 if lead > 0 else -1)
    return pp * scale
