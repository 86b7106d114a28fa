"""Vertex splitting: the corner relation P*alpha + Q*beta + R*gamma = pi.

Angles are measured in units of pi, so every angle here is a Fraction and
gamma is always eliminated through alpha + beta + gamma = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class AngleForm:
    """The linear form ca*alpha + cb*beta + cpi*pi, read as the relation form = 0."""

    ca: Fraction
    cb: Fraction
    cpi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ca", Fraction(self.ca))
        object.__setattr__(self, "cb", Fraction(self.cb))
        object.__setattr__(self, "cpi", Fraction(self.cpi))

    @classmethod
    def from_counts(cls, n, m, l, k) -> "AngleForm":
        """n*alpha + m*beta + l*gamma = k*pi with gamma = pi - alpha - beta."""
        return cls(Fraction(n) - l, Fraction(m) - l, Fraction(l) - k)

    @classmethod
    def corner(cls, P: int, Q: int, R: int) -> "AngleForm":
        return cls.from_counts(P, Q, R, 1)

    @classmethod
    def gamma_equals(cls, value) -> "AngleForm":
        """gamma = value*pi, that is alpha + beta = (1 - value)*pi."""
        return cls(1, 1, Fraction(value) - 1)

    def at(self, alpha, beta) -> Fraction:
        return self.ca * alpha + self.cb * beta + self.cpi

    def is_trivial(self) -> bool:
        return self.ca == 0 and self.cb == 0

    def to_text(self) -> str:
        parts = []
        for c, name in ((self.ca, "alpha"), (self.cb, "beta"), (self.cpi, "pi")):
            if c == 0:
                continue
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append((c < 0, body))
        if not parts:
            return "0 = 0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out + " = 0"


def solve_pair(f: AngleForm, g: AngleForm) -> tuple[Fraction, Fraction] | None:
    """Cramer's rule for f = g = 0; None when the determinant vanishes."""
    det = f.ca * g.cb - f.cb * g.ca
    if det == 0:
        return None
    alpha = (-f.cpi * g.cb + f.cb * g.cpi) / det
    beta = (-f.ca * g.cpi + f.cpi * g.ca) / det
    return alpha, beta


def strictly_ordered(alpha, beta) -> bool:
    """0 < alpha < beta < gamma: a genuine non-isosceles triangle with the labels in order."""
    gamma = 1 - alpha - beta
    return 0 < alpha < beta < gamma


@dataclass(frozen=True)
class SplitRecord:
    P: int
    Q: int
    R: int
    alpha: Fraction | None = None
    beta: Fraction | None = None

    @property
    def gamma(self) -> Fraction | None:
        if self.alpha is None:
            return None
        return 1 - self.alpha - self.beta

    def to_text(self) -> str:
        if self.alpha is None:
            return f"P={self.P} Q={self.Q} R={self.R} undetermined"
        return (f"P={self.P} Q={self.Q} R={self.R} alpha={self.alpha}pi "
                f"beta={self.beta}pi gamma={self.gamma}pi")


@dataclass(frozen=True)
class SplitBounds:
    pmax: int = 50
    qmax: int = 50
    rmax: int = 1
    min_total: int = 5


def enumerate_splits(relations, bounds: SplitBounds | None = None) -> list[SplitRecord]:
    """All corner splittings compatible with the given angle relations.

    For each (P, Q, R) inside the bounds with P + Q + R >= min_total the
    corner relation is solved together with the first relation by Cramer's
    rule.  Singular systems are discarded, remaining relations must hold
    exactly, and the solution must satisfy 0 < alpha < beta < gamma.
    """
    b = bounds or SplitBounds()
    rels = [r for r in relations if not r.is_trivial()]
    if not rels:
        raise ValueError("need at least one relation besides alpha + beta + gamma = pi")
    out = []
    for R in range(0, b.rmax + 1):
        for P in range(0, b.pmax + 1):
            for Q in range(0, b.qmax + 1):
                if P + Q + R < b.min_total:
                    continue
                sol = solve_pair(AngleForm.corner(P, Q, R), rels[0])
                if sol is None:
                    continue
                alpha, beta = sol
                if any(r.at(alpha, beta) != 0 for r in rels[1:]):
                    continue
                if strictly_ordered(alpha, beta):
                    out.append(SplitRecord(P, Q, R, alpha, beta))
    return out


def line_meets_open_triangle(form: AngleForm) -> bool:
    """Does form = 0 meet the open region 0 < alpha < beta < gamma?

    That region is the open triangle with corners (0,0), (0,1/2), (1/3,1/3)
    in the (alpha, beta) plane, so the line crosses it exactly when the
    form takes both signs at the corners.
    """
    vals = [form.at(Fraction(0), Fraction(0)), form.at(Fraction(0), Fraction(1, 2)),
            form.at(Fraction(1, 3), Fraction(1, 3))]
    return min(vals) < 0 < max(vals)


def _feasible_segment(form: AngleForm) -> list[tuple[Fraction, Fraction]]:
    """Endpoints of form = 0 inside the closed triangle 0 <= alpha <= beta, alpha + 2*beta <= 1."""
    corners = [(Fraction(0), Fraction(0)), (Fraction(0), Fraction(1, 2)), (Fraction(1, 3), Fraction(1, 3))]
    pts = []
    for i in range(3):
        (a0, b0), (a1, b1) = corners[i], corners[(i + 1) % 3]
        v0, v1 = form.at(a0, b0), form.at(a1, b1)
        if v0 == 0:
            pts.append((a0, b0))
        if (v0 < 0 < v1) or (v1 < 0 < v0):
            t = v0 / (v0 - v1)
            pts.append((a0 + t * (a1 - a0), b0 + t * (b1 - b0)))
    return sorted(set(pts))


@dataclass(frozen=True)
class PInterval:
    """Integers P with lo < P < hi (None = unbounded), P >= pmin, and the determinant sign fixed."""

    R: int
    Q: int
    det_sign: int
    lo: Fraction | None
    hi: Fraction | None
    pmin: int

    def is_empty(self) -> bool:
        lo = self.pmin - 1 if self.lo is None else max(self.lo, Fraction(self.pmin - 1))
        if self.hi is None:
            return False
        # need an integer P with lo < P < hi
        return not any(lo < p < self.hi for p in range(int(lo) - 1, int(self.hi) + 2))

    def members(self, cap: int) -> list[int]:
        lo = self.pmin - 1 if self.lo is None else max(self.lo, Fraction(self.pmin - 1))
        hi = Fraction(cap + 1) if self.hi is None else min(self.hi, Fraction(cap + 1))
        return [p for p in range(max(0, int(lo) - 1), int(hi) + 2) if lo < p < hi]


def symbolic_splits(relation: AngleForm, rmax: int = 1, min_total: int = 5):
    """Solve the corner relation with symbolic P against one angle relation.

    For every R <= rmax and every Q allowed by the lower bound on beta along
    the relation, alpha and beta are ratios of linear functions of P.  The
    order conditions 0 < alpha < beta < gamma become linear inequalities in P
    once both sides are multiplied by the determinant, split by its sign.
    Returns (intervals, steps): every P-interval that survives, and the
    derivation as text lines.
    """
    steps: list[tuple[str, str]] = []
    seg = _feasible_segment(relation)
    if not seg or not line_meets_open_triangle(relation):
        steps.append((f"{relation.to_text()} misses 0 < alpha < beta < gamma", "order constraints"))
        return [], steps
    beta_min = min(b for _, b in seg)
    if beta_min <= 0:
        raise ValueError("relation allows arbitrarily small beta; Q is unbounded")
    qmax = int(1 / beta_min)
    if Fraction(qmax) * beta_min >= 1:
        qmax -= 1
    steps.append((f"beta > {beta_min}pi along the relation, so Q <= {qmax}", "Q*beta < pi"))
    out = []
    ca, cb, cpi = relation.ca, relation.cb, relation.cpi
    for R in range(0, rmax + 1):
        for Q in range(0, qmax + 1):
            pmin = max(0, min_total - Q - R)
            # corner: (P-R) alpha + (Q-R) beta + (R-1) = 0, i.e. coefficients (P-R, Q-R, R-1)
            # det(P) = (P-R)*cb - (Q-R)*ca = cb*P + (-R*cb - (Q-R)*ca)
            d1, d0 = cb, -R * cb - (Q - R) * ca
            # alpha*det = -(R-1)*cb + (Q-R)*cpi ; beta*det = -(P-R)*cpi + (R-1)*ca
            a1, a0 = Fraction(0), -(R - 1) * cb + (Q - R) * cpi
            b1, b0 = -cpi, R * cpi + (R - 1) * ca
            for sgn in (1, -1):
                # with s = sign(det): s*alpha*det > 0, s*(beta-alpha)*det > 0, s*(gamma-beta)*det > 0,
                # s*det > 0; gamma*det = det - alpha*det - beta*det
                g1, g0 = d1 - a1 - b1, d0 - a0 - b0
                ineqs = [(sgn * d1, sgn * d0), (sgn * a1, sgn * a0),
                         (sgn * (b1 - a1), sgn * (b0 - a0)), (sgn * (g1 - b1), sgn * (g0 - b0))]
                lo, hi, dead = None, None, False
                for k1, k0 in ineqs:
                    if k1 == 0:
                        if k0 <= 0:
                            dead = True
                        continue
                    bound = -k0 / k1
                    if k1 > 0:
                        lo = bound if lo is None else max(lo, bound)
                    else:
                        hi = bound if hi is None else min(hi, bound)
                iv = PInterval(R, Q, sgn, lo, hi, pmin)
                label = (f"R={R} Q={Q} det {'>' if sgn > 0 else '<'} 0: "
                         f"det = {_lin(d1, d0)}, alpha*det = {_lin(a1, a0)}, beta*det = {_lin(b1, b0)}")
                if dead or iv.is_empty():
                    why = "a constant inequality fails" if dead else _interval_text(iv)
                    steps.append((label, f"empty: {why}"))
                else:
                    steps.append((label, f"open: {_interval_text(iv)}"))
                    out.append(iv)
    return out, steps


def _lin(k1: Fraction, k0: Fraction) -> str:
    if k1 == 0:
        return f"{k0}"
    head = "P" if k1 == 1 else ("-P" if k1 == -1 else f"{k1}*P")
    if k0 == 0:
        return head
    return f"{head} {'+' if k0 > 0 else '-'} {abs(k0)}"


def _interval_text(iv: PInterval) -> str:
    parts = [f"P >= {iv.pmin}"]
    if iv.lo is not None:
        parts.append(f"P > {iv.lo}")
    if iv.hi is not None:
        parts.append(f"P < {iv.hi}")
    return ", ".join(parts)
