"""Path model: root operators on piecewise-linear paths, crystals, strings.

A path is a piecewise-linear map [0,1] -> h* starting at the origin with
rational breakpoints, stored as its breakpoint polyline in a canonical
form (no stationary or collinear-continuation breakpoints, equally spaced
parameter times).  Root operators read only the polyline, so canonical
representatives are stable under the whole calculus.

The raising and lowering operators act through the height function
h(t) = (x(t), alpha^vee): when the defining threshold is met, the piece
between two critical times is reflected and the tail is translated by
the root.  This form of the operators is valid on integral paths (all
local minima of every height function at integer levels); paths generated
from a straight dominant path stay integral, which is asserted during
crystal generation.

Strings are extracted greedily along a fixed reduced word for the longest
Weyl element: raise maximally letter by letter until the dominant path
returns.  The resulting exponent tuples index the crystal bijectively and
drive the basis-counting reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decomposition import schur_dimensions, weyl_dimension
from .rootdata import LieType, RootSystem, Weight, build_root_system
from .weightsets import tensor_dominant_pi

DEFAULT_CRYSTAL_CAP = 5000


class CrystalCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Path:
    """Canonical breakpoint polyline of a piecewise-linear path from 0."""

    points: tuple  # Weight per breakpoint; points[0] is the origin

    @classmethod
    def from_points(cls, points):
        pts = list(points)
        if not pts:
            raise ValueError("a path needs at least its starting point")
        if any(c != 0 for c in pts[0].coords):
            raise ValueError("paths start at the origin")
        cleaned = [pts[0]]
        for p in pts[1:]:
            if p == cleaned[-1]:
                continue  # stationary piece: same path up to reparametrization
            cleaned.append(p)
        # merge a breakpoint whose outgoing direction continues the incoming one
        merged = cleaned[:1]
        for p in cleaned[1:]:
            if len(merged) >= 2:
                u = merged[-1] - merged[-2]
                v = p - merged[-1]
                if _positively_parallel(u, v):
                    merged[-1] = p
                    continue
            merged.append(p)
        return cls(points=tuple(merged))

    @property
    def breakpoints(self):
        """(time, point) pairs with equally spaced rational times."""
        k = len(self.points) - 1
        if k == 0:
            return ((Fraction(0), self.points[0]),)
        return tuple((Fraction(t, k), p) for t, p in enumerate(self.points))

    @property
    def endpoint(self):
        return self.points[-1]

    def value(self, t):
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("parameter outside [0, 1]")
        k = len(self.points) - 1
        if k == 0:
            return self.points[0]
        scaled = t * k
        idx = min(int(scaled), k - 1)
        frac = scaled - idx
        return self.points[idx] + frac * (self.points[idx + 1] - self.points[idx])

    def heights(self, coroot: Weight):
        return [p.dot(coroot) for p in self.points]

    def to_json(self):
        return [{"t": f"{t.numerator}/{t.denominator}", "point": p.to_json()} for t, p in self.breakpoints]


def _positively_parallel(u: Weight, v: Weight):
    """True iff v is a positive scalar multiple of u (both nonzero)."""
    uz = [c == 0 for c in u.coords]
    if uz != [c == 0 for c in v.coords]:
        return False
    ratio = None
    for a, b in zip(u.coords, v.coords):
        if a == 0:
            continue
        q = Fraction(b) / Fraction(a)
        if q <= 0 or (ratio is not None and q != ratio):
            return False
        ratio = q
    return ratio is not None


def straight_path(rs: RootSystem, lam: Weight) -> Path:
    """The straight segment from the origin to a dominant weight."""
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam!r} is not dominant for {rs.lie_type}")
    origin = Weight.zero(len(lam))
    if lam == origin:
        return Path.from_points([origin])
    return Path.from_points([origin, lam])


def _reflect(v: Weight, alpha: Weight, coroot: Weight) -> Weight:
    return v - v.dot(coroot) * alpha


def _split_at_level(a: Weight, b: Weight, ha, hb, level):
    """Point on segment [a, b] where the height function crosses `level`."""
    frac = Fraction(level - ha) / Fraction(hb - ha)
    return a + frac * (b - a)


def f_op(rs: RootSystem, i: int, path: Path):
    """Lowering root operator; None when it annihilates the path.

    With q the minimum of the height function, the operator applies when
    the endpoint height exceeds q by at least 1: the piece between the
    last minimum and the next crossing of level q+1 is reflected, and the
    rest of the path is translated by -alpha.
    """
    alpha = rs.simple_root(i)
    coroot = rs.coroot(i)
    h = path.heights(coroot)
    q = min(h)
    if h[-1] - q < 1:
        return None
    pts = path.points
    j1 = max(j for j, v in enumerate(h) if v == q)
    start = pts[j1]
    new_pts = list(pts[: j1 + 1])
    j = j1
    while h[j + 1] < q + 1:  # strictly between q and q+1 after the last minimum
        new_pts.append(start + _reflect(pts[j + 1] - start, alpha, coroot))
        j += 1
    if h[j + 1] == q + 1:
        split = pts[j + 1]
        tail_from = j + 2
    else:
        split = _split_at_level(pts[j], pts[j + 1], h[j], h[j + 1], q + 1)
        tail_from = j + 1
    new_pts.append(split - alpha)
    for p in pts[tail_from:]:
        new_pts.append(p - alpha)
    return Path.from_points(new_pts)


def e_op(rs: RootSystem, i: int, path: Path):
    """Raising root operator; None when it annihilates the path.

    Mirror image of the lowering operator: the piece between the last
    crossing of level q+1 and the first minimum is reflected, and the rest
    of the path is translated by +alpha.  Applies when q <= -1.
    """
    alpha = rs.simple_root(i)
    coroot = rs.coroot(i)
    h = path.heights(coroot)
    q = min(h)
    if q > -1:
        return None
    pts = path.points
    j2 = min(j for j, v in enumerate(h) if v == q)
    j = j2
    while h[j - 1] < q + 1:  # strictly between q and q+1 before the first minimum
        j -= 1
    if h[j - 1] == q + 1:
        split = pts[j - 1]
        new_pts = list(pts[:j])
    else:
        split = _split_at_level(pts[j - 1], pts[j], h[j - 1], h[j], q + 1)
        new_pts = list(pts[:j]) + [split]
    for p in pts[j : j2 + 1]:
        new_pts.append(split + _reflect(p - split, alpha, coroot))
    for p in pts[j2 + 1 :]:
        new_pts.append(p + alpha)
    return Path.from_points(new_pts)


def is_integral(rs: RootSystem, path: Path) -> bool:
    """All local minima of every height function sit at integer levels.

    Plateau runs are treated as single critical points; boundary runs
    count as minima when their inner neighbor is higher.  The operator
    formulas above are exact precisely on such paths.
    """
    for i in range(1, rs.rank + 1):
        h = path.heights(rs.coroot(i))
        runs = []
        for v in h:
            if not runs or runs[-1] != v:
                runs.append(v)
        for k, v in enumerate(runs):
            left_up = k == 0 or runs[k - 1] > v
            right_up = k == len(runs) - 1 or runs[k + 1] > v
            if left_up and right_up and not isinstance(v, int):
                return False
    return True


@dataclass(frozen=True)
class Crystal:
    """Closure of a straight dominant path under the lowering operators."""

    rs: RootSystem
    highest: Weight
    elements: tuple  # Paths in discovery order; elements[0] is the straight path
    edges: tuple  # ((from_index, root_index, to_index), ...) for lowering steps

    def __len__(self):
        return len(self.elements)

    def endpoint_multiset(self):
        counts = {}
        for p in self.elements:
            counts[p.endpoint] = counts.get(p.endpoint, 0) + 1
        return counts

    def to_json(self):
        return {
            "highest": self.highest.to_json(),
            "size": len(self.elements),
            "elements": [p.to_json() for p in self.elements],
            "edges": [list(edge) for edge in self.edges],
        }


def generate_crystal(rs: RootSystem, lam: Weight, cap: int = DEFAULT_CRYSTAL_CAP) -> Crystal:
    """Breadth-first closure of the straight path under all lowering operators."""
    start = straight_path(rs, lam)
    elements = [start]
    index = {start: 0}
    edges = []
    qi = 0
    while qi < len(elements):
        current = elements[qi]
        for i in range(1, rs.rank + 1):
            image = f_op(rs, i, current)
            if image is None:
                continue
            at = index.get(image)
            if at is None:
                if len(elements) >= cap:
                    raise CrystalCapExceeded(f"crystal of {lam!r} exceeded {cap} elements")
                assert is_integral(rs, image), f"operator left the integral-path regime at {lam!r}"
                index[image] = at = len(elements)
                elements.append(image)
            edges.append((qi, i, at))
        qi += 1
    return Crystal(rs=rs, highest=lam, elements=tuple(elements), edges=tuple(edges))


def string_tuple(crystal: Crystal, word, path: Path):
    """Greedy raising exponents of one crystal element along a fixed word."""
    rs = crystal.rs
    exponents = []
    current = path
    for i in word:
        count = 0
        while True:
            raised = e_op(rs, i, current)
            if raised is None:
                break
            current = raised
            count += 1
        exponents.append(count)
    if current != crystal.elements[0]:
        raise AssertionError(
            f"greedy string extraction along {word} did not reach the dominant path of {crystal.highest!r}"
        )
    return tuple(exponents)


def string_tuples(crystal: Crystal, word):
    """All greedy strings of a crystal; in bijection with its elements."""
    tuples = [string_tuple(crystal, word, p) for p in crystal.elements]
    unique = sorted(set(tuples), reverse=True)
    if len(unique) != len(crystal.elements):
        raise AssertionError(f"string parametrization is not injective for {crystal.highest!r}")
    return tuple(unique)


def opposite_strings(tuples):
    """Reversed exponent tuples; same cardinality by construction."""
    return tuple(sorted((tuple(reversed(t)) for t in tuples), reverse=True))


@dataclass
class CensusReport:
    """Per-weight string counts against squared dimensions, with the total."""

    lie_type: LieType
    r: int
    reduced_word: tuple
    rows: list
    total: int
    expected_total: int
    w0_is_minus_identity: bool
    note: str

    @property
    def ok(self):
        return self.total == self.expected_total and all(row["ok"] for row in self.rows)

    def to_json(self):
        return {
            "family": self.lie_type.family,
            "rank": self.lie_type.rank,
            "r": self.r,
            "reduced_word": list(self.reduced_word),
            "rows": self.rows,
            "total": self.total,
            "expected_total": self.expected_total,
            "w0_is_minus_identity": self.w0_is_minus_identity,
            "note": self.note,
            "ok": self.ok,
        }


def basis_census(lt: LieType, r: int, cap: int = DEFAULT_CRYSTAL_CAP) -> CensusReport:
    """Count string pairs (n, t) per dominant tensor weight and sum them.

    For each weight lam the lowering strings of lam pair with the reversed
    raising strings of the dual's highest weight -w0(lam); the product
    must equal the squared simple dimension, and the grand total must
    equal the squared-dimension sum over all of pi.
    """
    rs = build_root_system(lt)
    word, w0 = rs.longest_element()
    minus_identity = all(w0(Weight.eps(lt.rank, i)) == -Weight.eps(lt.rank, i) for i in range(1, lt.rank + 1))
    rows = []
    total = 0
    for lam in tensor_dominant_pi(lt, r):
        dim = weyl_dimension(rs, lam)
        crystal = generate_crystal(rs, lam, cap)
        strings = string_tuples(crystal, word)
        dual_hw = -w0(lam)
        if dual_hw == lam:
            dual_strings = strings
        else:
            dual_strings = string_tuples(generate_crystal(rs, dual_hw, cap), word)
        opp = opposite_strings(dual_strings)
        product = len(strings) * len(opp)
        rows.append(
            {
                "weight": lam.to_json(),
                "dim": dim,
                "strings": len(strings),
                "dual_weight": dual_hw.to_json(),
                "opposite_strings": len(opp),
                "product": product,
                "expected": dim * dim,
                "ok": product == dim * dim,
            }
        )
        total += product
    expected_total = schur_dimensions(lt, r)[0]
    note = "" if minus_identity else (
        "longest element is not minus the identity here; dual highest weights "
        "use its true action"
    )
    return CensusReport(
        lie_type=lt,
        r=r,
        reduced_word=word,
        rows=rows,
        total=total,
        expected_total=expected_total,
        w0_is_minus_identity=minus_identity,
        note=note,
    )
