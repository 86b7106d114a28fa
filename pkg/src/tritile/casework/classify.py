"""Which rational angles survive 3alpha + 2beta = pi, and which tiling families an N admits.

Angles are returned as rational multiples of pi: Fraction(2, 7) stands for
2pi/7.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..exactalg import algebraic_degree, sin_pi, totient


def _angle_ok(alpha: Fraction) -> bool:
    beta = (1 - 3 * alpha) / 2
    if alpha <= 0 or beta <= 0:
        return False
    # alpha < pi/3, beta < pi/2, and the smaller of the two is below pi/5
    return alpha < Fraction(1, 3) and beta < Fraction(1, 2) and min(alpha, beta) < Fraction(1, 5)


def lemma46_scan(nmax: int) -> list[tuple[Fraction, Fraction]]:
    """Pairs (alpha, beta) with alpha = 2m*pi/n, n <= nmax, that pass the angle and degree filters.

    The degree of Q(exp(i alpha/2)) is the totient of its order.  When
    sin(alpha/2) is irrational that degree must be 6; when sin(alpha/2) is
    rational it must be 2 or 4.  Rationality is decided by the exact minimal
    polynomial.  (sin(alpha/2) itself has degree 6 for alpha = 2pi/7; it is
    sin^2(alpha/2) that has degree 3.)
    """
    if nmax < 18:
        raise ValueError("nmax must be at least 18")
    found = []
    for n in range(1, nmax + 1):
        for m in range(1, n):
            if math.gcd(m, n) != 1:
                continue
            alpha = Fraction(2 * m, n)
            if not _angle_ok(alpha):
                continue
            # exp(i alpha/2) = exp(2 pi i m / 2n) has order 2n / gcd(m, 2n)
            order = 2 * n // math.gcd(m, 2 * n)
            phi = totient(order)
            if phi not in (2, 4, 6):
                continue
            rational = algebraic_degree(sin_pi(m, n)) == 1
            if (phi in (2, 4)) if rational else (phi == 6):
                found.append((alpha, (1 - 3 * alpha) / 2))
    return sorted(set(found), key=lambda ab: (ab[0].denominator, ab[0]))


def format_angle(x: Fraction) -> str:
    num = "pi" if x.numerator == 1 else f"{x.numerator}pi"
    return num if x.denominator == 1 else f"{num}/{x.denominator}"


@dataclass(frozen=True)
class Family:
    key: str
    description: str
    witnesses: tuple[str, ...] = ()

    def to_text(self) -> str:
        text = f"family ({self.key}): {self.description}"
        if self.witnesses:
            text += "; witness " + ", ".join(self.witnesses)
        return text


def _square_root(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def classify(N: int) -> list[Family]:
    """Families of non-similar tilings by a non-right tile that allow N tiles.

    Family (i) is constructive.  Family (ii), the rational sin(alpha/2) case
    with 3alpha + 2beta = pi, is only known to need N >= 28 here; it is
    reported without a witness.  The 120 degree family lies outside the scope
    and is never returned.
    """
    if N < 1:
        raise ValueError("N must be positive")
    out = []
    if N % 3 == 0:
        m = _square_root(N // 3)
        if m:
            wit = [f"gen_3m2({m})"]
            if N == 27:
                wit.append("gen_27")
            out.append(Family("i", f"equilateral ABC, isosceles tile with base angles pi/6, N = 3*{m}^2",
                              tuple(wit)))
    if N >= 28:
        out.append(Family("ii", "3alpha + 2beta = pi with sin(alpha/2) rational; necessary condition N >= 28 only"))
    return out


def witness_tiling(name: str):
    """Build the tiling named by a witness string such as 'gen_3m2(2)'."""
    from ..tiling import gen_27, gen_3m2
    if name == "gen_27":
        return gen_27()
    if name.startswith("gen_3m2(") and name.endswith(")"):
        return gen_3m2(int(name[len("gen_3m2("):-1]))
    raise ValueError(f"unknown witness {name!r}")
