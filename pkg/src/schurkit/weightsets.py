"""Signed-composition combinatorics and the weight sets of tensor powers.

The two central sets are Pi(type, r), all weights of the r-th tensor power
of the natural module, and pi(type, r), its dominant members.  Both are
finite sets of integer weights, stored in a canonical descending
lexicographic order so that dominance-maximal elements come first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootdata import LieType, RootSystem, Weight


def _canonical(elements):
    uniq = sorted(set(elements), key=lambda w: w.coords, reverse=True)
    return tuple(uniq)


@dataclass(frozen=True)
class WeightSet:
    """A finite, duplicate-free, canonically ordered set of weights."""

    elements: tuple
    label: str

    @classmethod
    def make(cls, elements, label):
        return cls(_canonical(elements), label)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w):
        return w in set(self.elements)

    def as_set(self):
        return frozenset(self.elements)

    def to_json(self):
        return {"label": self.label, "elements": [w.to_json() for w in self.elements]}


def compositions(n, r):
    """All n-part compositions of r (nonnegative entries, order matters)."""
    if n == 1:
        yield (r,)
        return
    for first in range(r + 1):
        for rest in compositions(n - 1, r - first):
            yield (first,) + rest


def signed_compositions(n, r) -> WeightSet:
    """Integer vectors whose absolute values sum to r."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    out = []
    for comp in compositions(n, r):
        signable = [k for k, c in enumerate(comp) if c > 0]
        for mask in range(1 << len(signable)):
            v = list(comp)
            for bit, k in enumerate(signable):
                if mask >> bit & 1:
                    v[k] = -v[k]
            out.append(Weight(v))
    return WeightSet.make(out, f"SignedComp({n},{r})")


def _partitions(n, r):
    """Weakly decreasing nonnegative n-tuples summing to r."""

    def rec(parts_left, total, bound):
        if parts_left == 0:
            if total == 0:
                yield ()
            return
        for first in range(min(total, bound), -1, -1):
            for rest in rec(parts_left - 1, total - first, first):
                yield (first,) + rest

    yield from rec(n, r, r)


def lambda_plus(n, r) -> WeightSet:
    """Partitions of r with at most n parts, padded with zeros."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    return WeightSet.make([Weight(p) for p in _partitions(n, r)], f"Lambda+({n},{r})")


def lambda_minus(n, r) -> WeightSet:
    """Image of lambda_plus under negation of the last coordinate."""
    flipped = [Weight(w.coords[:-1] + (-w.coords[-1],)) for w in lambda_plus(n, r)]
    return WeightSet.make(flipped, f"Lambda-({n},{r})")


def lambda_pm(n, r) -> WeightSet:
    both = list(lambda_plus(n, r)) + list(lambda_minus(n, r))
    return WeightSet.make(both, f"Lambda+-({n},{r})")


def _degree_range(lt: LieType, r):
    # Type B reaches every degree r-j because the natural module has a zero
    # weight; types C and D only the degrees of matching parity.
    if lt.family == "B":
        return range(r, -1, -1)
    return range(r, -1, -2)


def tensor_weights_Pi(lt: LieType, r) -> WeightSet:
    """All weights of the r-th tensor power of the natural module."""
    if r < 1:
        raise ValueError("need r >= 1")
    out = []
    for s in _degree_range(lt, r):
        out.extend(signed_compositions(lt.rank, s))
    return WeightSet.make(out, f"Pi({lt},{r})")


def tensor_dominant_pi(lt: LieType, r) -> WeightSet:
    """Dominant weights of the r-th tensor power."""
    if r < 1:
        raise ValueError("need r >= 1")
    out = []
    for s in _degree_range(lt, r):
        if lt.family == "D":
            out.extend(lambda_pm(lt.rank, s))
        else:
            out.extend(lambda_plus(lt.rank, s))
    return WeightSet.make(out, f"pi({lt},{r})")


def dominant_box(rs: RootSystem, top):
    """Dominant integer weights mu with first coordinate at most `top`.

    Any dominant mu below a dominant lam in dominance order satisfies
    mu_1 <= lam_1, so this box contains every candidate needed by the
    saturation test.
    """
    n = rs.rank
    out = []

    def go(prefix, bound):
        if len(prefix) == n:
            out.append(Weight(prefix))
            return
        is_last = len(prefix) == n - 1
        if is_last and rs.family == "D":
            for c in range(bound, -bound - 1, -1):
                go(prefix + (c,), bound)
        else:
            for c in range(bound, -1, -1):
                go(prefix + (c,), c)

    go((), top)
    return out


def is_saturated(rs: RootSystem, ws: WeightSet) -> bool:
    """True iff ws is closed downward under dominance among dominant weights."""
    members = ws.as_set()
    for lam in members:
        if not rs.is_dominant(lam):
            raise ValueError(f"non-dominant element {lam!r} in weight set {ws.label}")
    for lam in members:
        top = lam.coords[0]
        if not isinstance(top, int):
            raise ValueError("saturation test expects integer weights")
        for mu in dominant_box(rs, top):
            if mu not in members and rs.dominance_leq(mu, lam):
                return False
    return True


def weyl_closure(rs: RootSystem, ws: WeightSet, label=None) -> WeightSet:
    """Union of the Weyl orbits of all elements."""
    out = []
    for w in ws:
        out.extend(rs.weyl_orbit(w))
    return WeightSet.make(out, label or f"W.{ws.label}")
