"""Triangle tilings with exact cyclotomic coordinates.

A tiling is a boundary triangle ABC, a tile shape with sides a <= b <= c and
a list of tile triangles.  :func:`verify_tiling` certifies it exactly:
congruence, containment, pairwise interior disjointness and area equality,
then reads off the d-matrix and the vertex census.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .exactalg import CycloNum, cos_pi, field, parse_cyclo, sign, sin_pi

LABELS = ("alpha", "beta", "gamma")
EDGE_LABELS = ("a", "b", "c")


class TilingError(ValueError):
    """Malformed tiling input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


# ------------------------------------------------------------------ geometry

@dataclass(frozen=True)
class Point:
    x: CycloNum
    y: CycloNum

    def __post_init__(self):
        if self.x.m != self.y.m:
            raise TilingError(f"coordinates in different fields Q(zeta_{self.x.m}) and Q(zeta_{self.y.m})")

    @property
    def m(self) -> int:
        return self.x.m

    def key(self):
        return (self.x.coords, self.y.coords)

    def is_real(self) -> bool:
        return self.x.is_real() and self.y.is_real()

    def approx(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def embed(self, m: int) -> "Point":
        return self if m == self.m else Point(self.x.embed(m), self.y.embed(m))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, s) -> "Point":
        return Point(self.x * s, self.y * s)

    def to_text(self) -> str:
        return f"({self.x.to_text()}|{self.y.to_text()})"


def cross(o: Point, p: Point, q: Point) -> CycloNum:
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x)


def _approx_orient(o, p, q) -> float:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def orient(o: Point, p: Point, q: Point, approx=None) -> int:
    """Exact sign of the orientation determinant.

    ``approx`` may carry double-precision images of the three points; a
    result far from zero relative to the coordinate scale is trusted directly.
    """
    if approx is not None:
        ao, ap, aq = approx
        v = _approx_orient(ao, ap, aq)
        scale = 1.0 + max(abs(t) for pt in approx for t in pt)
        if abs(v) > 1e-9 * scale * scale:
            return 1 if v > 0 else -1
    return sign(cross(o, p, q))


def dist2(p: Point, q: Point) -> CycloNum:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


@dataclass(frozen=True)
class TriangleGeom:
    vertices: tuple[Point, Point, Point]

    def __post_init__(self):
        if len(self.vertices) != 3:
            raise TilingError("a triangle needs three vertices")

    @property
    def m(self) -> int:
        return self.vertices[0].m

    def orientation(self) -> int:
        return orient(*self.vertices)

    def is_degenerate(self) -> bool:
        return self.orientation() == 0

    def signed_area2(self) -> CycloNum:
        return cross(*self.vertices)

    def area(self) -> CycloNum:
        a2 = self.signed_area2()
        return a2 * (Fraction(1, 2) if sign(a2) >= 0 else Fraction(-1, 2))

    def side2(self, i: int) -> CycloNum:
        """Squared length of the side opposite vertex i."""
        v = self.vertices
        return dist2(v[(i + 1) % 3], v[(i + 2) % 3])

    def embed(self, m: int) -> "TriangleGeom":
        return TriangleGeom(tuple(v.embed(m) for v in self.vertices))

    def key(self):
        return tuple(sorted(v.key() for v in self.vertices))

    def to_text(self) -> str:
        return " ".join(v.to_text() for v in self.vertices)


# --------------------------------------------------------------------- shape

def _identify_angle(cos_value: CycloNum) -> Fraction | None:
    """theta/pi when cos(theta) = cos_value for a rational multiple theta of pi."""
    c = float(cos_value)
    c = max(-1.0, min(1.0, c))
    guess = Fraction(math.acos(c) / math.pi).limit_denominator(4 * cos_value.m + 8)
    if not 0 < guess < 1:
        return None
    if cos_pi(guess.numerator, guess.denominator) == cos_value:
        return guess
    return None


@dataclass(frozen=True)
class TileShape:
    """Sides a <= b <= c; angles[i] is the angle opposite side i as a multiple of pi, or None."""

    a: CycloNum
    b: CycloNum
    c: CycloNum
    angles: tuple = (None, None, None)

    @classmethod
    def from_sides(cls, a: CycloNum, b: CycloNum, c: CycloNum) -> "TileShape":
        sides = [a, b, c]
        for s in sides:
            if not s.is_real():
                raise TilingError("tile sides must be real")
            if sign(s) <= 0:
                raise TilingError("tile sides must be positive")
        sides = _sort_exact(sides)
        a, b, c = sides
        if sign(a + b - c) <= 0:
            raise TilingError("tile sides violate the triangle inequality")
        angles = []
        for opp, s1, s2 in ((a, b, c), (b, a, c), (c, a, b)):
            cosv = (s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2)
            angles.append(_identify_angle(cosv))
        return cls(a, b, c, tuple(angles))

    @property
    def m(self) -> int:
        return self.a.m

    @property
    def sides(self) -> tuple[CycloNum, CycloNum, CycloNum]:
        return (self.a, self.b, self.c)

    def squares(self) -> tuple[CycloNum, CycloNum, CycloNum]:
        return tuple(s * s for s in self.sides)

    def is_isosceles(self) -> bool:
        return self.a == self.b or self.b == self.c

    def place(self) -> TriangleGeom:
        """Vertices (alpha, beta, gamma) with alpha at 0 and beta on the x axis."""
        if self.angles[0] is None:
            raise TilingError("placing a tile needs a rational angle alpha")
        al = self.angles[0]
        cs, sn = cos_pi(al.numerator, al.denominator), sin_pi(al.numerator, al.denominator)
        big = math.lcm(self.m, cs.m)
        b = self.b.embed(big)
        c = self.c.embed(big)
        zero = field(big).zero()
        return TriangleGeom(
            (Point(zero, zero), Point(c, zero), Point(b * cs.embed(big), b * sn.embed(big)))
        )

    def scaled(self, k) -> "TileShape":
        return TileShape(self.a * k, self.b * k, self.c * k, self.angles)

    def to_text(self) -> str:
        return " ".join(s.to_text() for s in self.sides)


def _sort_exact(values: list[CycloNum]) -> list[CycloNum]:
    out = list(values)
    for i in range(1, len(out)):
        j = i
        while j > 0 and sign(out[j - 1] - out[j]) > 0:
            out[j - 1], out[j] = out[j], out[j - 1]
            j -= 1
    return out


@dataclass(frozen=True)
class Congruence:
    """labels[i] names the tile angle at vertex i; mirror when the map reverses orientation."""

    labels: tuple[str, str, str]
    mirror: bool

    def vertex_of(self, label: str) -> int:
        return self.labels.index(label)


def congruent_to(tri: TriangleGeom, tile: TileShape) -> Congruence | None:
    """Match squared side lengths exactly; None when the triangle is not a copy of the tile."""
    sq = [tri.side2(i) for i in range(3)]
    targets = list(tile.squares())
    labels: list[str | None] = [None] * 3
    used = [False] * 3
    for i in range(3):
        for j in range(3):
            if not used[j] and sq[i] == targets[j]:
                labels[i] = LABELS[j]
                used[j] = True
                break
        else:
            return None
    ia, ib, ig = (labels.index(lab) for lab in LABELS)
    v = tri.vertices
    o = orient(v[ia], v[ib], v[ig])
    if o == 0:
        return None
    return Congruence(tuple(labels), mirror=o < 0)


# ------------------------------------------------------------------- tiling

@dataclass(frozen=True)
class Tiling:
    boundary: TriangleGeom
    tile: TileShape
    tiles: tuple[TriangleGeom, ...]
    m: int

    @property
    def N(self) -> int:
        return len(self.tiles)

    def canonical(self):
        return (self.m, self.boundary.key(), tuple(s.coords for s in self.tile.sides),
                tuple(sorted(t.key() for t in self.tiles)))

    def embed(self, m: int) -> "Tiling":
        if m == self.m:
            return self
        tile = TileShape(*(s.embed(m) for s in self.tile.sides), self.tile.angles)
        return Tiling(self.boundary.embed(m), tile, tuple(t.embed(m) for t in self.tiles), m)


@dataclass(frozen=True)
class DMatrix:
    p: int = 0
    d: int = 0
    e: int = 0
    g: int = 0
    m: int = 0
    f: int = 0
    h: int = 0
    l: int = 0
    r: int = 0

    @classmethod
    def from_rows(cls, rows) -> "DMatrix":
        flat = [int(v) for row in rows for v in row]
        return cls(*flat)

    def rows(self) -> tuple[tuple[int, int, int], ...]:
        return ((self.p, self.d, self.e), (self.g, self.m, self.f), (self.h, self.l, self.r))

    def as_dict(self) -> dict[str, int]:
        return dict(zip("pdegmfhlr", (v for row in self.rows() for v in row)))

    def to_text(self) -> str:
        return " / ".join(" ".join(str(v) for v in row) for row in self.rows())


@dataclass(frozen=True)
class VertexRecord:
    point: Point
    n: int
    m: int
    l: int
    k: int


@dataclass(frozen=True)
class CornerRecord:
    point: Point
    n: int
    m: int
    l: int


@dataclass
class VertexCensus:
    vertices: list[VertexRecord] = dc_field(default_factory=list)
    corners: list[CornerRecord] = dc_field(default_factory=list)

    @property
    def P(self) -> int:
        return sum(c.n for c in self.corners)

    @property
    def Q(self) -> int:
        return sum(c.m for c in self.corners)

    @property
    def R(self) -> int:
        return sum(c.l for c in self.corners)

    def totals(self) -> tuple[int, int, int]:
        """(P + sum n_i, Q + sum m_i, R + sum l_i)."""
        return (
            self.P + sum(v.n for v in self.vertices),
            self.Q + sum(v.m for v in self.vertices),
            self.R + sum(v.l for v in self.vertices),
        )


@dataclass
class VerifyReport:
    N: int
    verdict: str
    dmatrix: DMatrix | None
    census: VertexCensus | None
    failures: list[str]

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_text(self) -> str:
        lines = [f"N={self.N}", f"verdict={self.verdict}"]
        if self.dmatrix is not None:
            for name, row in zip("XYZ", self.dmatrix.rows()):
                lines.append(f"d[{name}]=({row[0]},{row[1]},{row[2]})")
        if self.census is not None:
            c = self.census
            s1, s2, s3 = c.totals()
            lines.append(f"P={c.P} Q={c.Q} R={c.R}")
            lines.append(f"P+sum(n)={s1} Q+sum(m)={s2} R+sum(l)={s3}")
            strict = sum(1 for v in c.vertices if v.k == 2)
            lines.append(f"vertices={len(c.vertices)} strict={strict}")
        for f in self.failures:
            lines.append(f"failure: {f}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- verifying

def _interiors_disjoint(t1: TriangleGeom, t2: TriangleGeom, a1, a2) -> bool:
    """Separating-axis test with closed half-planes on the six edge lines."""
    for tri, other, at, ao in ((t1, t2, a1, a2), (t2, t1, a2, a1)):
        v = tri.vertices
        s = orient(*v, approx=at)
        for i in range(3):
            p, q = v[i], v[(i + 1) % 3]
            ap, aq = at[i], at[(i + 1) % 3]
            if all(orient(p, q, w, approx=(ap, aq, aw)) * s <= 0 for w, aw in zip(other.vertices, ao)):
                return True
    return False


def _bbox(approx):
    xs = [p[0] for p in approx]
    ys = [p[1] for p in approx]
    return min(xs), max(xs), min(ys), max(ys)


def _boxes_apart(b1, b2, tol) -> bool:
    return b1[1] < b2[0] - tol or b2[1] < b1[0] - tol or b1[3] < b2[2] - tol or b2[3] < b1[2] - tol


def _on_open_segment(p: Point, q: Point, w: Point, ap, aq, aw) -> bool:
    if orient(p, q, w, approx=(ap, aq, aw)) != 0:
        return False
    # strictly between p and q along the segment
    dot1 = (w.x - p.x) * (q.x - p.x) + (w.y - p.y) * (q.y - p.y)
    dot2 = (w.x - q.x) * (p.x - q.x) + (w.y - q.y) * (p.y - q.y)
    return sign(dot1) > 0 and sign(dot2) > 0


def verify_tiling(t: Tiling) -> VerifyReport:
    failures: list[str] = []
    N = t.N
    tile = t.tile
    bverts = t.boundary.vertices
    if t.boundary.is_degenerate():
        return VerifyReport(N, "fail", None, None, ["boundary triangle is degenerate"])
    if orient(*bverts) < 0:
        bverts = (bverts[0], bverts[2], bverts[1])
    b_approx = [p.approx() for p in bverts]

    # 1. congruence
    maps: list[Congruence | None] = []
    approx = []
    for idx, tri in enumerate(t.tiles):
        approx.append([p.approx() for p in tri.vertices])
        if tri.is_degenerate():
            failures.append(f"tile {idx}: degenerate")
            maps.append(None)
            continue
        cg = congruent_to(tri, tile)
        if cg is None:
            failures.append(f"tile {idx}: not congruent to the tile")
        maps.append(cg)

    # 2. containment
    for idx, tri in enumerate(t.tiles):
        for vi, v in enumerate(tri.vertices):
            for i in range(3):
                p, q = bverts[i], bverts[(i + 1) % 3]
                o = orient(p, q, v, approx=(b_approx[i], b_approx[(i + 1) % 3], approx[idx][vi]))
                if o < 0:
                    failures.append(f"tile {idx}: vertex {vi} outside the boundary")
                    break
            else:
                continue
            break

    # 3. pairwise interior disjointness
    boxes = [_bbox(a) for a in approx]
    scale = 1.0 + max((abs(c) for pt in b_approx for c in pt), default=0.0)
    tol = 1e-9 * scale
    for i, j in combinations(range(N), 2):
        if maps[i] is None and t.tiles[i].is_degenerate():
            continue
        if maps[j] is None and t.tiles[j].is_degenerate():
            continue
        if _boxes_apart(boxes[i], boxes[j], tol):
            continue
        if not _interiors_disjoint(t.tiles[i], t.tiles[j], approx[i], approx[j]):
            failures.append(f"tiles {i} and {j}: interiors overlap")

    # 4. exact area
    total = field(t.m).zero()
    for tri in t.tiles:
        total = total + tri.area()
    if total != t.boundary.area():
        failures.append("area mismatch: sum of tile areas differs from area(ABC)")

    if failures:
        return VerifyReport(N, "fail", None, None, failures)

    dm, dfail = _dmatrix(t, bverts, b_approx, maps, approx)
    failures.extend(dfail)
    census, cfail = _census(t, bverts, b_approx, maps, approx)
    failures.extend(cfail)
    return VerifyReport(N, "fail" if failures else "pass", dm, census, failures)


def _sides_by_length(bverts) -> list[tuple[int, int, CycloNum]]:
    """ABC sides as (i, j, squared length) sorted ascending: X, Y, Z."""
    sides = [(i, (i + 1) % 3, dist2(bverts[i], bverts[(i + 1) % 3])) for i in range(3)]
    out = []
    for s in sides:
        pos = len(out)
        while pos > 0 and sign(out[pos - 1][2] - s[2]) > 0:
            pos -= 1
        out.insert(pos, s)
    return out


def _dmatrix(t: Tiling, bverts, b_approx, maps, approx):
    failures = []
    iso_ab = t.tile.a == t.tile.b
    rows = []
    for i, j, len2 in _sides_by_length(bverts):
        p, q = bverts[i], bverts[j]
        row = [0, 0, 0]
        for idx, tri in enumerate(t.tiles):
            cg = maps[idx]
            v = tri.vertices
            for k in range(3):
                u, w = (k + 1) % 3, (k + 2) % 3
                au, aw = approx[idx][u], approx[idx][w]
                if orient(p, q, v[u], approx=(b_approx[i], b_approx[j], au)) == 0 and \
                        orient(p, q, v[w], approx=(b_approx[i], b_approx[j], aw)) == 0:
                    col = LABELS.index(cg.labels[k])
                    if iso_ab and col == 1:
                        col = 0
                    row[col] += 1
        length = sum((n * s for n, s in zip(row, t.tile.sides)), field(t.m).zero())
        if length * length != len2:
            failures.append(f"boundary edges {row} do not add up to their side of ABC")
        rows.append(row)
    return DMatrix.from_rows(rows), failures


def _census(t: Tiling, bverts, b_approx, maps, approx):
    failures = []
    corner_keys = {p.key() for p in bverts}
    groups: dict = {}
    order = []
    for idx, tri in enumerate(t.tiles):
        for vi, v in enumerate(tri.vertices):
            key = v.key()
            if key not in groups:
                groups[key] = (v, approx[idx][vi], [0, 0, 0], set())
                order.append(key)
            groups[key][2][LABELS.index(maps[idx].labels[vi])] += 1
            groups[key][3].add(idx)
    census = VertexCensus()
    angles = t.tile.angles
    rational = all(a is not None for a in angles)
    for key in order:
        pt, apt, cnt, owners = groups[key]
        if key in corner_keys:
            census.corners.append(CornerRecord(pt, *cnt))
            continue
        k = 2
        for i in range(3):
            if orient(bverts[i], bverts[(i + 1) % 3], pt, approx=(b_approx[i], b_approx[(i + 1) % 3], apt)) == 0:
                k = 1
                break
        if k == 2:
            for idx, tri in enumerate(t.tiles):
                if idx in owners or not _near_box(apt, approx[idx]):
                    continue
                v = tri.vertices
                if any(_on_open_segment(v[a], v[b], pt, approx[idx][a], approx[idx][b], apt)
                       for a, b in ((0, 1), (1, 2), (2, 0))):
                    k = 1
                    break
        census.vertices.append(VertexRecord(pt, cnt[0], cnt[1], cnt[2], k))
        if rational:
            total = cnt[0] * angles[0] + cnt[1] * angles[1] + cnt[2] * angles[2]
            if total != k:
                failures.append(f"vertex {pt.approx()}: angle sum {total}*pi, expected {k}*pi")
    if rational:
        corner_total = census.P * angles[0] + census.Q * angles[1] + census.R * angles[2]
        if corner_total != 1:
            failures.append(f"corner angles sum to {corner_total}*pi")
    if len(census.corners) != 3:
        failures.append(f"{len(census.corners)} of 3 boundary corners carry tile vertices")
    N = t.N
    if census.totals() != (N, N, N):
        failures.append(f"census totals {census.totals()} differ from N={N}")
    return census, failures


def _near_box(apt, tri_approx) -> bool:
    xs = [p[0] for p in tri_approx]
    ys = [p[1] for p in tri_approx]
    tol = 1e-9 * (1.0 + max(abs(v) for v in xs + ys))
    return min(xs) - tol <= apt[0] <= max(xs) + tol and min(ys) - tol <= apt[1] <= max(ys) + tol


# ---------------------------------------------------------------------- I/O

def save_tiling(t: Tiling) -> str:
    lines = [
        "tiling v1",
        f"field m={t.m}",
        f"tile {t.tile.to_text()}",
        f"boundary {t.boundary.to_text()}",
        f"tiles {t.N}",
    ]
    lines.extend(tri.to_text() for tri in t.tiles)
    return "\n".join(lines) + "\n"


def _parse_point(tok: str, m: int, lineno: int) -> Point:
    if not (tok.startswith("(") and tok.endswith(")") and "|" in tok):
        raise TilingError(f"bad point {tok!r}", lineno)
    xs, ys = tok[1:-1].split("|", 1)
    try:
        pt = Point(parse_cyclo(xs, m), parse_cyclo(ys, m))
    except ValueError as exc:
        raise TilingError(str(exc), lineno) from None
    if not pt.is_real():
        raise TilingError(f"point {tok} has a non-real coordinate", lineno)
    return pt


def _parse_points(rest: str, m: int, lineno: int, count: int = 3) -> list[Point]:
    toks = rest.split()
    if len(toks) != count:
        raise TilingError(f"expected {count} points, found {len(toks)}", lineno)
    return [_parse_point(tok, m, lineno) for tok in toks]


def load_tiling(text: str) -> Tiling:
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((no, body))
    if not lines:
        raise TilingError("empty tiling file")

    def expect(pos: int, word: str) -> tuple[int, str]:
        if pos >= len(lines):
            raise TilingError(f"missing '{word}' line", lines[-1][0])
        no, body = lines[pos]
        head, _, rest = body.partition(" ")
        if head != word:
            raise TilingError(f"expected '{word}', found {head!r}", no)
        return no, rest.strip()

    no, rest = expect(0, "tiling")
    if rest != "v1":
        raise TilingError(f"unsupported version {rest!r}", no)
    no, rest = expect(1, "field")
    if not rest.startswith("m="):
        raise TilingError("expected 'field m=<int>'", no)
    try:
        m = int(rest[2:])
    except ValueError:
        raise TilingError(f"bad field order {rest[2:]!r}", no) from None
    if m < 1:
        raise TilingError("field order must be positive", no)

    no, rest = expect(2, "tile")
    toks = rest.split()
    if len(toks) != 3:
        raise TilingError("expected three tile sides", no)
    try:
        sides = [parse_cyclo(tok, m) for tok in toks]
        tile = TileShape.from_sides(*sides)
    except TilingError as exc:
        raise TilingError(str(exc), no) from None
    except ValueError as exc:
        raise TilingError(str(exc), no) from None

    no, rest = expect(3, "boundary")
    boundary = TriangleGeom(tuple(_parse_points(rest, m, no)))

    no, rest = expect(4, "tiles")
    try:
        count = int(rest)
    except ValueError:
        raise TilingError(f"bad tile count {rest!r}", no) from None
    if count < 0:
        raise TilingError("negative tile count", no)
    body = lines[5:]
    if len(body) != count:
        where = body[count][0] if len(body) > count else no
        raise TilingError(f"declared {count} tiles, found {len(body)}", where)
    tiles = tuple(TriangleGeom(tuple(_parse_points(b, m, n))) for n, b in body)
    return Tiling(boundary, tile, tiles, m)


# --------------------------------------------------------------- generators

def _sqrt3() -> CycloNum:
    # zeta_12 + zeta_12^-1 = 2 cos(pi/6)
    return field(12).from_exponents([(1, 1), (-1, 1)])


def _pt(x, y, m: int = 12) -> Point:
    fld = field(m)
    cx = x if isinstance(x, CycloNum) else fld.const(x)
    cy = y if isinstance(y, CycloNum) else fld.const(y)
    return Point(cx, cy)


def pi6_tile() -> TileShape:
    """Isosceles tile with base angles pi/6: a = b = 1, c = sqrt 3."""
    one = field(12).one()
    return TileShape.from_sides(one, one, _sqrt3())


def equilateral_tile(side: CycloNum) -> TileShape:
    return TileShape.from_sides(side, side, side)


def gen_three() -> Tiling:
    """Equilateral ABC of side sqrt 3 cut into three tiles from its center."""
    r3 = _sqrt3()
    half = Fraction(1, 2)
    A = _pt(0, 0)
    B = _pt(r3, 0)
    C = _pt(r3 * half, Fraction(3, 2))
    O = _pt(r3 * half, half)
    tiles = (TriangleGeom((A, C, O)), TriangleGeom((C, O, B)), TriangleGeom((A, O, B)))
    return Tiling(TriangleGeom((A, B, C)), pi6_tile(), tiles, 12)


def _quadratic_of(tri: TriangleGeom, n: int) -> list[TriangleGeom]:
    A, B, C = tri.vertices

    def P(i, j):
        return A + (B - A).scale(Fraction(i, n)) + (C - A).scale(Fraction(j, n))

    out = []
    for j in range(n):
        for i in range(n - j):
            out.append(TriangleGeom((P(i, j), P(i + 1, j), P(i, j + 1))))
            if i + j <= n - 2:
                out.append(TriangleGeom((P(i + 1, j), P(i + 1, j + 1), P(i, j + 1))))
    return out


def gen_quadratic(tile: TileShape, n: int) -> Tiling:
    """n^2 copies of the tile filling the tile scaled by n."""
    if n < 1:
        raise ValueError("n must be positive")
    base = tile.place()
    m = base.m
    shape = TileShape(*(s.embed(m) for s in tile.sides), tile.angles)
    A = base.vertices[0]
    big = TriangleGeom(tuple(A + (v - A).scale(n) for v in base.vertices))
    return Tiling(big, shape, tuple(_quadratic_of(big, n)), m)


def _affine_to(src: tuple[Point, Point, Point], dst: tuple[Point, Point, Point]):
    """Affine map sending src[i] to dst[i]."""
    (a, b, c), (a2, b2, c2) = src, dst
    u1, u2 = b - a, c - a
    w1, w2 = b2 - a2, c2 - a2
    det = u1.x * u2.y - u1.y * u2.x
    inv = 1 / det
    # M = W * U^{-1}, U = [u1 u2] columns
    i11, i12 = u2.y * inv, -u2.x * inv
    i21, i22 = -u1.y * inv, u1.x * inv
    m11 = w1.x * i11 + w2.x * i21
    m12 = w1.x * i12 + w2.x * i22
    m21 = w1.y * i11 + w2.y * i21
    m22 = w1.y * i12 + w2.y * i22

    def apply(p: Point) -> Point:
        dx, dy = p.x - a.x, p.y - a.y
        return Point(a2.x + m11 * dx + m12 * dy, a2.y + m21 * dx + m22 * dy)

    return apply


def compose(outer: Tiling, inner: Tiling) -> Tiling:
    """Replace every tile of ``outer`` by a copy of ``inner``."""
    big = math.lcm(outer.m, inner.m)
    outer = outer.embed(big)
    inner = inner.embed(big)
    src_map = congruent_to(inner.boundary, outer.tile)
    if src_map is None:
        raise TilingError("compose: inner boundary is not congruent to the outer tile")
    src = tuple(inner.boundary.vertices[src_map.vertex_of(lab)] for lab in LABELS)
    tiles = []
    for tri in outer.tiles:
        cg = congruent_to(tri, outer.tile)
        if cg is None:
            raise TilingError("compose: outer tiling has a tile not congruent to its shape")
        dst = tuple(tri.vertices[cg.vertex_of(lab)] for lab in LABELS)
        f = _affine_to(src, dst)
        tiles.extend(TriangleGeom(tuple(f(v) for v in t.vertices)) for t in inner.tiles)
    return Tiling(outer.boundary, inner.tile, tuple(tiles), big)


def gen_3m2(m: int) -> Tiling:
    """Equilateral ABC of side m*sqrt 3, quadratically tiled, each piece cut in three."""
    if m < 1:
        raise ValueError("m must be positive")
    outer = gen_quadratic(equilateral_tile(_sqrt3()), m)
    return compose(outer, gen_three())


# Figure coordinates (i*sqrt3, j) at double scale; halved on construction.
_TWENTY_SEVEN = (
    ((0, 0), (1, 1), (2, 0)), ((2, 0), (3, 1), (4, 0)), ((4, 0), (5, 1), (6, 0)),
    ((1, 1), (2, 0), (3, 1)), ((3, 1), (4, 0), (5, 1)),
    ((0, 0), (1, 1), (1, 3)), ((1, 1), (1, 3), (2, 4)), ((1, 3), (2, 4), (2, 6)),
    ((2, 4), (2, 6), (3, 7)), ((2, 6), (3, 7), (3, 9)),
    ((6, 0), (5, 1), (5, 3)), ((5, 1), (5, 3), (4, 4)), ((5, 3), (4, 4), (4, 6)),
    ((4, 4), (4, 6), (3, 7)), ((4, 6), (3, 7), (3, 9)),
    ((1, 1), (3, 1), (2, 2)), ((3, 1), (2, 4), (2, 2)), ((2, 4), (1, 1), (2, 2)),
    ((3, 1), (5, 1), (4, 2)), ((5, 1), (4, 4), (4, 2)), ((4, 4), (3, 1), (4, 2)),
    ((2, 4), (3, 1), (3, 3)), ((3, 1), (4, 4), (3, 3)), ((4, 4), (2, 4), (3, 3)),
    ((2, 4), (4, 4), (3, 5)), ((4, 4), (3, 7), (3, 5)), ((3, 7), (2, 4), (3, 5)),
)


def gen_27() -> Tiling:
    """The prime 27-tiling of an equilateral triangle of side 3*sqrt 3."""
    r3 = _sqrt3()

    def lattice(i, j):
        return _pt(r3 * Fraction(i, 2), Fraction(j, 2))

    boundary = TriangleGeom((lattice(0, 0), lattice(6, 0), lattice(3, 9)))
    tiles = tuple(TriangleGeom(tuple(lattice(i, j) for i, j in tri)) for tri in _TWENTY_SEVEN)
    return Tiling(boundary, pi6_tile(), tiles, 12)


# ---------------------------------------------------------------------- SVG

_FILLS = ("#ccccff", "#ffcccc", "#ccffcc", "#ffffcc")


def svg_export(t: Tiling, path=None) -> str:
    """Plain SVG 1.1: one polygon per tile, boundary stroked on top."""
    pts = [p.approx() for p in t.boundary.vertices]
    for tri in t.tiles:
        pts.extend(p.approx() for p in tri.vertices)
    xmin = min(p[0] for p in pts)
    xmax = max(p[0] for p in pts)
    ymin = min(p[1] for p in pts)
    ymax = max(p[1] for p in pts)
    span = max(xmax - xmin, ymax - ymin) or 1.0
    size = 400.0
    pad = 10.0
    k = (size - 2 * pad) / span

    def fmt(p):
        x = pad + (p[0] - xmin) * k
        y = pad + (ymax - p[1]) * k
        return f"{x:.4f},{y:.4f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">',
    ]
    for idx, tri in enumerate(t.tiles):
        poly = " ".join(fmt(p.approx()) for p in tri.vertices)
        out.append(f'<polygon points="{poly}" fill="{_FILLS[idx % len(_FILLS)]}" stroke="#000000" stroke-width="0.5"/>')
    poly = " ".join(fmt(p.approx()) for p in t.boundary.vertices)
    out.append(f'<polygon points="{poly}" fill="none" stroke="#000000" stroke-width="2"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
