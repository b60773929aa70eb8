"""Highest weights of tensor-power factors, with an independent character oracle.

Two routes to the same answer are kept deliberately separate:

  * closed-form factor rules per family (partition-exponent conditions,
    with the type-D sign splitting of the last exponent), and
  * an exact character decomposition: convolve the natural character r
    times, then repeatedly strip the dominance-maximal dominant weight
    using full Freudenthal weight multiplicities.

The factor rules state the exponent conditions against the tensor degree
r.  Weight multiplicities come only from the oracle; the rules decide
membership only.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import LieType, RootSystem, Weight, build_root_system
from .weightsets import WeightSet, _partitions, tensor_dominant_pi

_char_cache = {}
_char_lock = threading.Lock()


@dataclass(frozen=True)
class FormalCharacter:
    """Finite weight-multiplicity map, Weyl-group invariant for modules."""

    terms: tuple  # sorted ((coords, mult), ...) pairs

    @classmethod
    def from_dict(cls, d):
        items = tuple(sorted(((w, m) for w, m in d.items() if m != 0), key=lambda t: t[0].coords, reverse=True))
        return cls(terms=items)

    def as_dict(self):
        return dict(self.terms)

    def multiplicity(self, w):
        return self.as_dict().get(w, 0)

    def support(self):
        return tuple(w for w, _ in self.terms)

    def total(self):
        return sum(m for _, m in self.terms)

    def convolve(self, other):
        out = {}
        for w1, m1 in self.terms:
            for w2, m2 in other.terms:
                key = w1 + w2
                out[key] = out.get(key, 0) + m1 * m2
        return FormalCharacter.from_dict(out)

    def is_weyl_invariant(self, rs: RootSystem):
        d = self.as_dict()
        for w, m in self.terms:
            for i in range(1, rs.rank + 1):
                if d.get(rs.simple_reflect(i, w), 0) != m:
                    return False
        return True


def natural_character(lt: LieType) -> FormalCharacter:
    n = lt.rank
    d = {}
    for i in range(1, n + 1):
        d[Weight.eps(n, i)] = 1
        d[-Weight.eps(n, i)] = 1
    if lt.family == "B":
        d[Weight.zero(n)] = 1
    return FormalCharacter.from_dict(d)


def freudenthal_multiplicities(rs: RootSystem, lam: Weight) -> FormalCharacter:
    """Full weight character of the simple module with highest weight lam.

    Standard recursion: walk the weight system downward level by level
    (candidates are previous-level weights minus a simple root) and solve

      (|lam+rho|^2 - |mu+rho|^2) m_mu = 2 sum_{a>0} sum_{k>=1} m_{mu+ka} (mu+ka, a)

    exactly.  Results are memoized per (type, lam); the cache is guarded by
    a lock so concurrent readers see fully built characters only.
    """
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam!r} is not dominant for {rs.lie_type}")
    key = (rs.family, rs.rank, lam.coords)
    with _char_lock:
        cached = _char_cache.get(key)
    if cached is not None:
        return cached

    rho = rs.rho
    top = lam + rho
    top_norm = top.dot(top)
    mult = {lam: 1}
    frontier = [lam]
    while frontier:
        candidates = set()
        for mu in frontier:
            for alpha in rs.simple_roots:
                candidates.add(mu - alpha)
        frontier = []
        for mu in sorted(candidates, key=lambda w: w.coords, reverse=True):
            if mu in mult:
                continue
            num = 0
            for alpha in rs.positive_roots:
                k = 1
                while True:
                    nu = mu + k * alpha
                    m_nu = mult.get(nu)
                    if m_nu is None:
                        break
                    num += 2 * m_nu * nu.dot(alpha)
                    k += 1
            if num == 0:
                continue
            denom = top_norm - (mu + rho).dot(mu + rho)
            m_mu = Fraction(num, 1) / denom
            assert m_mu.denominator == 1 and m_mu > 0, (mu, num, denom)
            mult[mu] = int(m_mu)
            frontier.append(mu)

    char = FormalCharacter.from_dict(mult)
    with _char_lock:
        _char_cache.setdefault(key, char)
    return char


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Product formula over positive roots; exact integer."""
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam!r} is not dominant for {rs.lie_type}")
    rho = rs.rho
    total = Fraction(1)
    for alpha in rs.positive_roots:
        total *= Fraction((lam + rho).dot(alpha), rho.dot(alpha))
    assert total.denominator == 1
    return int(total)


def pi0_weyl_rules(lt: LieType, r: int) -> WeightSet:
    """Highest weights of the tensor-power factors, by the closed-form rules.

    Family B admits exponents f with sum r-2k, or with sum r-2k'-1 provided
    f_{n-k'} is nonzero (vacuous once n-k' <= 0).  Family C admits exactly
    the sums of parity r.  Family D admits the sums of parity r, each
    nonzero last exponent splitting into a signed pair.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    n = lt.rank
    out = []
    for total in range(r + 1):
        for f in _partitions(n, total):
            if lt.family == "C":
                if (r - total) % 2 == 0:
                    out.append(Weight(f))
            elif lt.family == "D":
                if (r - total) % 2 == 0:
                    out.append(Weight(f))
                    if f[n - 1] > 0:
                        out.append(Weight(f[:-1] + (-f[n - 1],)))
            else:  # B
                if (r - total) % 2 == 0:
                    out.append(Weight(f))
                elif r - 1 - total >= 0 and (r - 1 - total) % 2 == 0:
                    kp = (r - 1 - total) // 2
                    if n - kp <= 0 or f[n - kp - 1] != 0:
                        out.append(Weight(f))
    return WeightSet.make(out, f"pi0({lt},{r})")


@dataclass
class DecompositionResult:
    """Factor multiplicities of a tensor power next to its dominant weights."""

    lie_type: LieType
    r: int
    pi: WeightSet
    pi0: WeightSet
    multiplicities: dict
    equal: bool

    def __post_init__(self):
        assert self.pi0.as_set() <= self.pi.as_set(), "factor weights must be dominant tensor weights"
        assert set(self.multiplicities) == self.pi0.as_set()

    def pi_minus_pi0(self):
        return tuple(w for w in self.pi if w not in self.pi0.as_set())

    def to_json(self):
        return {
            "family": self.lie_type.family,
            "rank": self.lie_type.rank,
            "r": self.r,
            "equal": self.equal,
            "pi": self.pi.to_json()["elements"],
            "pi0": self.pi0.to_json()["elements"],
            "pi_minus_pi0": [w.to_json() for w in self.pi_minus_pi0()],
            "multiplicities": [
                {"weight": w.to_json(), "mult": self.multiplicities[w]} for w in self.pi0
            ],
        }


def decompose_tensor_character(lt: LieType, r: int) -> DecompositionResult:
    """Peel the r-th tensor character into simple characters, exactly.

    Repeatedly selects the lexicographically greatest dominant weight with
    positive multiplicity (which is dominance-maximal, since nonzero sums
    of simple roots have positive leading coordinate) and subtracts that
    many copies of its full simple character.  Any negative multiplicity
    on the way signals a broken oracle and raises.
    """
    rs = build_root_system(lt)
    nat = natural_character(lt)
    char = nat
    for _ in range(r - 1):
        char = char.convolve(nat)

    remaining = char.as_dict()
    mults = {}
    while True:
        best = None
        for w, m in remaining.items():
            if m == 0:
                continue
            if m < 0:
                raise ArithmeticError(f"negative multiplicity {m} at {w!r} while decomposing {lt} r={r}")
            if rs.is_dominant(w) and (best is None or w.coords > best.coords):
                best = w
        if best is None:
            if any(m != 0 for m in remaining.values()):
                raise ArithmeticError("nonzero character left with no dominant weight")
            break
        count = remaining[best]
        simple = freudenthal_multiplicities(rs, best)
        for w, m in simple.terms:
            remaining[w] = remaining.get(w, 0) - count * m
            if remaining[w] < 0:
                raise ArithmeticError(f"negative multiplicity at {w!r} after stripping {best!r}")
        mults[best] = count

    pi = tensor_dominant_pi(lt, r)
    pi0 = WeightSet.make(mults.keys(), f"pi0({lt},{r})")
    return DecompositionResult(
        lie_type=lt, r=r, pi=pi, pi0=pi0, multiplicities=mults, equal=pi0.as_set() == pi.as_set()
    )


def compare_pi0_pi(lt: LieType, r: int) -> DecompositionResult:
    """Cross-check the factor rules against the oracle and compare with pi."""
    oracle = decompose_tensor_character(lt, r)
    rules = pi0_weyl_rules(lt, r)
    if rules.as_set() != oracle.pi0.as_set():
        raise ArithmeticError(
            f"factor rules and character oracle disagree for {lt}, r={r}: "
            f"rules={sorted(w.coords for w in rules)}, oracle={sorted(w.coords for w in oracle.pi0)}"
        )
    return oracle


def classify_type_B(n_max: int, r_max: int):
    """Equality table for the family-B headline question, over a grid."""
    if n_max < 1 or r_max < 1:
        raise ValueError("bounds must be >= 1")
    rows = []
    for n in range(1, n_max + 1):
        for r in range(1, r_max + 1):
            res = compare_pi0_pi(LieType("B", n), r)
            rows.append(
                {
                    "family": "B",
                    "n": n,
                    "r": r,
                    "equal": res.equal,
                    "pi_size": len(res.pi),
                    "pi0_size": len(res.pi0),
                    "dim_S_pi": schur_dimensions(LieType("B", n), r)[0],
                    "dim_Schur": schur_dimensions(LieType("B", n), r)[1],
                }
            )
    return rows


def schur_dimensions(lt: LieType, r: int):
    """Wedderburn dimension sums over pi and over pi0: sums of squared dims."""
    rs = build_root_system(lt)
    dim_pi = sum(weyl_dimension(rs, lam) ** 2 for lam in tensor_dominant_pi(lt, r))
    dim_schur = sum(weyl_dimension(rs, lam) ** 2 for lam in pi0_weyl_rules(lt, r))
    return dim_pi, dim_schur
