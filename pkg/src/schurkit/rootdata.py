"""Root systems, weight lattices, and Weyl group actions for types B, C, D.

Weights live in the dual of the diagonal Cartan subalgebra and are written
in the orthonormal epsilon-basis, so the invariant bilinear form is the
ordinary dot product.  All coordinates are exact (int or Fraction); floats
are rejected at construction time.

Conventions:
  * simple-root indices in the public API are 1-based (i = 1..n),
  * the natural module has dimension m = 2n+1 in type B and 2n in C, D,
  * a Weyl group word (i1, ..., ik) denotes s_{i1} s_{i2} ... s_{ik} as a
    product of simple reflections, the rightmost letter acting first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

FAMILIES = ("B", "C", "D")


def exact(x):
    """Coerce x to an int or a reduced Fraction; refuse inexact types."""
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Weight:
    """Immutable exact-rational vector in the epsilon-basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(exact(c) for c in coords)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def eps(cls, n, i):
        """The i-th standard basis vector (1-based i)."""
        if not 1 <= i <= n:
            raise IndexError(f"epsilon index {i} out of range 1..{n}")
        return cls(tuple(1 if j == i - 1 else 0 for j in range(n)))

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, j):
        return self.coords[j]

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self.coords, other.coords, strict=True))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self.coords, other.coords, strict=True))

    def __neg__(self):
        return Weight(-a for a in self.coords)

    def __mul__(self, scalar):
        scalar = exact(scalar)
        return Weight(scalar * a for a in self.coords)

    __rmul__ = __mul__

    def dot(self, other):
        """Bilinear form value; the epsilon-basis is orthonormal."""
        return exact(sum(a * b for a, b in zip(self.coords, other.coords, strict=True)))

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Weight(%s)" % ", ".join(str(c) for c in self.coords)

    def to_json(self):
        return [c if isinstance(c, int) else f"{c.numerator}/{c.denominator}" for c in self.coords]


@dataclass(frozen=True)
class LieType:
    """A classical family letter together with a rank."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        min_rank = 2 if self.family == "D" else 1
        if not isinstance(self.rank, int) or self.rank < min_rank:
            raise ValueError(f"rank {self.rank} out of range for family {self.family} (need >= {min_rank})")

    @property
    def natural_dim(self):
        """Dimension m of the natural module: 2n+1 for B, 2n for C and D."""
        n = self.rank
        return 2 * n + 1 if self.family == "B" else 2 * n

    def __str__(self):
        return f"{self.family}{self.rank}"


def lie_type(family, rank):
    return LieType(family, rank)


@dataclass(frozen=True)
class RootSystem:
    """Simple roots, Cartan matrix, positive roots, and rho for one type."""

    lie_type: LieType
    simple_roots: tuple
    cartan: tuple
    positive_roots: tuple
    rho: Weight

    @property
    def rank(self):
        return self.lie_type.rank

    @property
    def family(self):
        return self.lie_type.family

    def simple_root(self, i):
        """alpha_i, 1-based."""
        self._check_index(i)
        return self.simple_roots[i - 1]

    def coroot(self, i):
        """alpha_i^vee = 2 alpha_i / (alpha_i, alpha_i), 1-based."""
        self._check_index(i)
        alpha = self.simple_roots[i - 1]
        return Weight(Fraction(2 * c, alpha.dot(alpha)) for c in alpha)

    def fundamental_weights(self):
        """Weights dual to the coroots, in closed coordinate form."""
        n = self.rank
        half = Fraction(1, 2)
        out = []
        for j in range(1, n + 1):
            ones = (1,) * j + (0,) * (n - j)
            if self.family == "C":
                w = Weight(ones)
            elif self.family == "B":
                w = Weight(ones) if j < n else Weight((half,) * n)
            else:  # D
                if j <= n - 2:
                    w = Weight(ones)
                elif j == n - 1:
                    w = Weight((half,) * (n - 1) + (-half,))
                else:
                    w = Weight((half,) * n)
            out.append(w)
        return tuple(out)

    def is_dominant(self, w):
        """Chain inequalities on the coordinates; type D allows a signed tail."""
        c = w.coords
        n = self.rank
        for k in range(n - 2):
            if c[k] < c[k + 1]:
                return False
        if self.family == "D":
            if n >= 2 and c[n - 2] < abs(c[n - 1]):
                return False
            return True
        if n >= 2 and c[n - 2] < c[n - 1]:
            return False
        return c[n - 1] >= 0

    def simple_root_coefficients(self, v):
        """Coefficients c with v = sum c_i alpha_i, as exact rationals."""
        n = self.rank
        partial = list(itertools.accumulate(v.coords))
        half = Fraction(1, 2)
        if self.family == "B":
            coeffs = partial[: n - 1] + [partial[n - 1]]
        elif self.family == "C":
            coeffs = partial[: n - 1] + [half * partial[n - 1]]
        else:
            s = partial[n - 2] if n >= 2 else 0
            coeffs = partial[: n - 2] + [half * (s - v.coords[n - 1]), half * (s + v.coords[n - 1])]
        return tuple(exact(Fraction(c)) for c in coeffs)

    def dominance_leq(self, mu, lam):
        """True iff lam - mu is a nonnegative-integer combination of simple roots."""
        coeffs = self.simple_root_coefficients(lam - mu)
        return all(isinstance(c, int) and c >= 0 for c in coeffs)

    def simple_reflect(self, i, w):
        """s_i(w) = w - (w, alpha_i^vee) alpha_i."""
        alpha = self.simple_root(i)
        return w - w.dot(self.coroot(i)) * alpha

    def apply_word(self, word, w):
        """Apply a Weyl word to a weight; the rightmost letter acts first."""
        for i in reversed(word):
            w = self.simple_reflect(i, w)
        return w

    def weyl_orbit(self, w):
        """Full Weyl orbit of w, sorted descending for determinism."""
        seen = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for x in frontier:
                for i in range(1, self.rank + 1):
                    y = self.simple_reflect(i, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen, key=lambda x: x.coords, reverse=True))

    def longest_element(self):
        """A reduced word for the longest Weyl element and its action.

        The action is w -> -w except in type D with odd rank, where the last
        coordinate keeps its sign.  The word is computed by descent peeling
        from the antidominant chamber and is fixed (smallest index first), so
        downstream string parametrizations are reproducible.
        """
        n = self.rank
        d_odd = self.family == "D" and n % 2 == 1

        def action(w):
            if d_odd:
                return Weight(tuple(-c for c in w.coords[: n - 1]) + (w.coords[n - 1],))
            return -w

        word = []
        x = action(self.rho)
        while x != self.rho:
            for i in range(1, n + 1):
                if x.dot(self.coroot(i)) < 0:
                    x = self.simple_reflect(i, x)
                    word.append(i)
                    break
            else:
                raise AssertionError("descent peeling stalled on a non-dominant weight")
        assert len(word) == len(self.positive_roots)
        return tuple(word), action

    def _check_index(self, i):
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple-root index {i} out of range 1..{self.rank}")


def build_root_system(lt: LieType) -> RootSystem:
    """Realize the root system of lt in epsilon-coordinates.

    Simple roots are alpha_i = eps_i - eps_{i+1} for i < n in every family,
    and alpha_n = eps_n (B), 2 eps_n (C), eps_{n-1} + eps_n (D).
    """
    n = lt.rank
    e = lambda i: Weight.eps(n, i)
    simples = [e(i) - e(i + 1) for i in range(1, n)]
    if lt.family == "B":
        simples.append(e(n))
    elif lt.family == "C":
        simples.append(2 * e(n))
    else:
        simples.append(e(n - 1) + e(n))

    positives = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            positives.append(e(i) - e(j))
            positives.append(e(i) + e(j))
    if lt.family == "B":
        positives.extend(e(i) for i in range(1, n + 1))
    elif lt.family == "C":
        positives.extend(2 * e(i) for i in range(1, n + 1))

    cartan = tuple(
        tuple(exact(Fraction(2 * ai.dot(aj), ai.dot(ai))) for aj in simples) for ai in simples
    )
    for row in cartan:
        if any(not isinstance(a, int) for a in row):
            raise AssertionError("Cartan matrix is not integral")

    rho = Weight.zero(n)
    for beta in positives:
        rho = rho + beta
    rho = Fraction(1, 2) * rho

    return RootSystem(
        lie_type=lt,
        simple_roots=tuple(simples),
        cartan=cartan,
        positive_roots=tuple(positives),
        rho=rho,
    )
