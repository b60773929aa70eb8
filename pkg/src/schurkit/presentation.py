"""Machine verification of the two presentations on faithful carriers.

The Serre-compatible presentation has seven relation groups per family
(labels B1..B7, C1..C7, D1..D7): commuting Cartan operators, the
family-specific commutator targets, eigenvalue commutators, both Serre
relations, an annihilator polynomial for each H_i, and one for every
signed sum J of the H_i.  The projector presentation has eight groups
(R1..R8): orthogonal idempotents summing to one, the commutator-to-
projector identity, four ladder families, and both Serre relations.

Every relation group is checked as an exact operator identity on the
given carrier; a failing group records the sub-case and the location of
its largest residual entry.  The zero-locus scan and the quotient
comparison live here as well, since they decide which relation groups
are redundant and when the single-power image is a proper quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .decomposition import schur_dimensions
from .idempotents import IdempotentFamily, annihilator_for_signed_sums, p1
from .replinalg import ExactMatrix, Representation, algebra_closure
from .rootdata import LieType, Weight, build_root_system
from .weightsets import WeightSet, tensor_weights_Pi


@dataclass
class RelationCheck:
    label: str
    holds: bool
    witness: dict | None = None

    def to_json(self):
        doc = {"label": self.label, "status": "holds" if self.holds else "fails"}
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc


@dataclass
class RelationReport:
    presentation: str
    family: str
    rank: int
    r: int
    carrier: str
    reduced_word: tuple
    generator_convention: str
    relations: list = field(default_factory=list)

    @property
    def all_hold(self):
        return all(c.holds for c in self.relations)

    def failing_labels(self):
        return tuple(c.label for c in self.relations if not c.holds)

    def to_json(self):
        return {
            "presentation": self.presentation,
            "type": self.family,
            "rank": self.rank,
            "r": self.r,
            "carrier": self.carrier,
            "reduced_word": list(self.reduced_word),
            "generator_convention": self.generator_convention,
            "relations": [c.to_json() for c in self.relations],
        }


_GENERATOR_CONVENTION = (
    "e_i = E(i,i+1)-E(n+i+1,n+i) for i<n; last root vector per family with "
    "[e_n,f_n] = 2H_n (B), H_n (C), H_{n-1}+H_n (D); H_i = E(i,i)-E(n+i,n+i)"
)


def _residual_witness(case, residual: ExactMatrix):
    mag, i, j, v = residual.max_abs_with_location()
    val = Fraction(v)
    return {"case": case, "entry": [i, j], "value": f"{val.numerator}/{val.denominator}", "magnitude": str(mag)}


def _check_many(label, cases):
    """Aggregate (case, residual) pairs into one relation check.

    The recorded witness is the largest-magnitude residual entry across
    the failing sub-cases, found in a fixed iteration order.
    """
    worst = None
    for case, residual in cases:
        if residual.is_zero():
            continue
        wit = _residual_witness(case, residual)
        if worst is None or Fraction(wit["magnitude"]) > Fraction(worst["magnitude"]):
            worst = wit
    return RelationCheck(label=label, holds=worst is None, witness=worst)


def _serre_sum(x, y, a_xy):
    """sum_s (-1)^s C(1-a, s) x^{1-a-s} y x^s, exactly."""
    k = 1 - a_xy
    powers = [ExactMatrix.identity(x.rows)]
    for _ in range(k):
        powers.append(powers[-1] @ x)
    total = ExactMatrix.zeros(x.rows)
    for s in range(k + 1):
        term = powers[k - s] @ y @ powers[s]
        total = total + (-1) ** s * comb(k, s) * term
    return total


def verify_serre_presentation(lt: LieType, r: int, rep: Representation) -> RelationReport:
    """Check the seven Cartan-generator relation groups on a carrier."""
    if rep.lie_type != lt or rep.r != r:
        raise ValueError(f"carrier mismatch: rep is for {rep.lie_type}, r={rep.r}")
    rs = build_root_system(lt)
    n = lt.rank
    fam = lt.family
    word, _ = rs.longest_element()
    report = RelationReport(
        presentation="serre",
        family=fam,
        rank=n,
        r=r,
        carrier=rep.kind,
        reduced_word=word,
        generator_convention=_GENERATOR_CONVENTION,
    )
    e, f, h = rep.e, rep.f, rep.h

    report.relations.append(
        _check_many(
            f"{fam}1",
            (
                (f"H_{i+1}H_{j+1}", h[i] @ h[j] - h[j] @ h[i])
                for i in range(n)
                for j in range(i + 1, n)
            ),
        )
    )

    def commutator_target(i):
        if i < n - 1:
            return h[i] - h[i + 1]
        if fam == "B":
            return 2 * h[n - 1]
        if fam == "C":
            return h[n - 1]
        return h[n - 2] + h[n - 1]

    def x2_cases():
        for i in range(n):
            for j in range(n):
                res = e[i] @ f[j] - f[j] @ e[i]
                if i == j:
                    res = res - commutator_target(i)
                yield (f"i={i+1},j={j+1}", res)

    report.relations.append(_check_many(f"{fam}2", x2_cases()))

    def x3_cases():
        for i in range(n):
            eps_i = Weight.eps(n, i + 1)
            for j in range(n):
                c = eps_i.dot(rs.simple_root(j + 1))
                yield (f"[H_{i+1},e_{j+1}]", h[i] @ e[j] - e[j] @ h[i] - c * e[j])
                yield (f"[H_{i+1},f_{j+1}]", h[i] @ f[j] - f[j] @ h[i] + c * f[j])

    report.relations.append(_check_many(f"{fam}3", x3_cases()))

    report.relations.append(
        _check_many(
            f"{fam}4",
            (
                (f"i={i+1},j={j+1}", _serre_sum(e[i], e[j], rs.cartan[i][j]))
                for i in range(n)
                for j in range(n)
                if i != j
            ),
        )
    )
    report.relations.append(
        _check_many(
            f"{fam}5",
            (
                (f"i={i+1},j={j+1}", _serre_sum(f[i], f[j], rs.cartan[i][j]))
                for i in range(n)
                for j in range(n)
                if i != j
            ),
        )
    )

    window = p1(r)
    report.relations.append(
        _check_many(
            f"{fam}6", ((f"P1(H_{i+1})", window.at_matrix(h[i])) for i in range(n))
        )
    )

    signed = annihilator_for_signed_sums(fam, r)

    def x7_cases():
        for signs in itertools.product((1, -1), repeat=n):
            j_op = ExactMatrix.zeros(rep.dim)
            for s, hi in zip(signs, h):
                j_op = j_op + s * hi
            label = "J=" + "".join("+" if s == 1 else "-" for s in signs)
            yield (label, signed.at_matrix(j_op))

    report.relations.append(_check_many(f"{fam}7", x7_cases()))
    return report


def verify_idempotent_presentation(
    lt: LieType, r: int, rep: Representation, fam: IdempotentFamily
) -> RelationReport:
    """Check the eight projector-presentation relation groups on a carrier.

    Ladder cases whose target projector is absent from the family's table
    (while its weight does belong to the carrier weight set) are skipped:
    the missing projector is a completeness defect, which R1 reports.
    """
    if rep.lie_type != lt or rep.r != r:
        raise ValueError(f"carrier mismatch: rep is for {rep.lie_type}, r={rep.r}")
    rs = build_root_system(lt)
    n = lt.rank
    word, _ = rs.longest_element()
    report = RelationReport(
        presentation="idempotent",
        family=lt.family,
        rank=n,
        r=r,
        carrier=rep.kind,
        reduced_word=word,
        generator_convention=_GENERATOR_CONVENTION,
    )
    e, f = rep.e, rep.f
    ident = ExactMatrix.identity(rep.dim)
    members = fam.pi_all.as_set()
    table = fam.table

    def r1_cases():
        lams = list(table)
        for lam in lams:
            for mu in lams:
                prod = table[lam] @ table[mu]
                expected = table[lam] if lam == mu else ExactMatrix.zeros(rep.dim)
                yield (f"1_{lam.coords} 1_{mu.coords}", prod - expected)
        total = ExactMatrix.zeros(rep.dim)
        for lam in lams:
            total = total + table[lam]
        yield ("completeness", total - ident)

    report.relations.append(_check_many("R1", r1_cases()))

    def r2_cases():
        for i in range(n):
            cor = rs.coroot(i + 1)
            for j in range(n):
                res = e[i] @ f[j] - f[j] @ e[i]
                if i == j:
                    acc = ExactMatrix.zeros(rep.dim)
                    for lam, proj in table.items():
                        c = cor.dot(lam)
                        if c != 0:
                            acc = acc + c * proj
                    res = res - acc
                yield (f"i={i+1},j={j+1}", res)

    report.relations.append(_check_many("R2", r2_cases()))

    def ladder_cases(which):
        for i in range(n):
            alpha = rs.simple_root(i + 1)
            for lam, proj in table.items():
                if which == "R3":
                    lhs, target = e[i] @ proj, lam + alpha
                    rhs = lambda p: p @ e[i]
                elif which == "R4":
                    lhs, target = f[i] @ proj, lam - alpha
                    rhs = lambda p: p @ f[i]
                elif which == "R5":
                    lhs, target = proj @ e[i], lam - alpha
                    rhs = lambda p: e[i] @ p
                else:
                    lhs, target = proj @ f[i], lam + alpha
                    rhs = lambda p: f[i] @ p
                if target in members:
                    other = table.get(target)
                    if other is None:
                        continue  # completeness defect; reported by R1
                    expected = rhs(other)
                else:
                    expected = ExactMatrix.zeros(rep.dim)
                yield (f"i={i+1},lam={lam.coords}", lhs - expected)

    for label in ("R3", "R4", "R5", "R6"):
        report.relations.append(_check_many(label, ladder_cases(label)))

    report.relations.append(
        _check_many(
            "R7",
            (
                (f"i={i+1},j={j+1}", _serre_sum(e[i], e[j], rs.cartan[i][j]))
                for i in range(n)
                for j in range(n)
                if i != j
            ),
        )
    )
    report.relations.append(
        _check_many(
            "R8",
            (
                (f"i={i+1},j={j+1}", _serre_sum(f[i], f[j], rs.cartan[i][j]))
                for i in range(n)
                for j in range(n)
                if i != j
            ),
        )
    )
    return report


# ---------------------------------------------------------------------------
# Zero locus of the annihilator equations in the Cartan variables


def _half_integer_grid(n, r):
    """All points of (Z/2)^n with coordinates in [-r, r]."""
    half = Fraction(1, 2)
    values = [half * k for k in range(-2 * r, 2 * r + 1)]
    return itertools.product(values, repeat=n)


def zero_locus(lt: LieType, r: int, include_p1hi: bool = True) -> WeightSet:
    """Common zeros of the signed-sum annihilator equations, by direct scan.

    Scans the half-integer box [-r, r]^n.  A point vanishes under a
    factored annihilator polynomial exactly when the signed sum hits one
    of its roots, so membership is decided against the root sets.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    n = lt.rank
    signed_roots = set(annihilator_for_signed_sums(lt.family, r).roots)
    h_roots = set(p1(r).roots)
    sign_vectors = list(itertools.product((1, -1), repeat=n))
    out = []
    for point in _half_integer_grid(n, r):
        if include_p1hi and not all(v in h_roots for v in point):
            continue
        ok = True
        for signs in sign_vectors:
            total = sum(s * v for s, v in zip(signs, point))
            if total not in signed_roots:
                ok = False
                break
        if ok:
            out.append(Weight(point))
    flag = "all-equations" if include_p1hi else "signed-sums-only"
    return WeightSet.make(out, f"V({lt},{r},{flag})")


@dataclass
class ZeroLocusReport:
    lie_type: LieType
    r: int
    include_p1hi: bool
    locus: WeightSet
    pi_all: WeightSet
    equals_pi: bool
    extra_points: tuple

    def to_json(self):
        return {
            "family": self.lie_type.family,
            "rank": self.lie_type.rank,
            "r": self.r,
            "include_p1hi": self.include_p1hi,
            "locus_size": len(self.locus),
            "pi_size": len(self.pi_all),
            "equals_pi": self.equals_pi,
            "extra_points": [w.to_json() for w in self.extra_points],
        }


def zero_locus_report(lt: LieType, r: int, include_p1hi: bool = True) -> ZeroLocusReport:
    locus = zero_locus(lt, r, include_p1hi)
    pi_all = tensor_weights_Pi(lt, r)
    extra = tuple(w for w in locus if w not in pi_all.as_set())
    missing = tuple(w for w in pi_all if w not in locus.as_set())
    if missing:
        raise ArithmeticError(f"zero locus lost tensor weights {missing[:3]} for {lt}, r={r}")
    return ZeroLocusReport(
        lie_type=lt,
        r=r,
        include_p1hi=include_p1hi,
        locus=locus,
        pi_all=pi_all,
        equals_pi=not extra,
        extra_points=extra,
    )


# ---------------------------------------------------------------------------
# Quotient comparison and cross-presentation closure


@dataclass
class QuotientReport:
    lie_type: LieType
    r: int
    dim_single: int
    dim_tower: int
    expected_single: int
    expected_tower: int
    difference: int

    @property
    def equal(self):
        return self.dim_single == self.dim_tower

    @property
    def matches_expected(self):
        return self.dim_single == self.expected_single and self.dim_tower == self.expected_tower

    def to_json(self):
        return {
            "family": self.lie_type.family,
            "rank": self.lie_type.rank,
            "r": self.r,
            "dim_single_power": self.dim_single,
            "dim_tower": self.dim_tower,
            "difference": self.difference,
            "equal": self.equal,
            "expected_single_power": self.expected_single,
            "expected_tower": self.expected_tower,
            "matches_expected": self.matches_expected,
        }


def quotient_witness(lt: LieType, r: int, max_dim=None) -> QuotientReport:
    """Generated-algebra dimensions on the single power and on the tower.

    Equality means the single-power image already realizes the whole
    family of simple modules; a positive difference exhibits the single
    power as a proper quotient and equals the squared-dimension total of
    the missing factors.
    """
    from .replinalg import single_power_rep, tower_rep

    single = single_power_rep(lt, r, max_dim)
    tower = tower_rep(lt, r, max_dim)
    dim_single = algebra_closure(single.generator_lists()).dimension
    dim_tower = algebra_closure(tower.generator_lists()).dimension
    expected_tower, expected_single = schur_dimensions(lt, r)
    return QuotientReport(
        lie_type=lt,
        r=r,
        dim_single=dim_single,
        dim_tower=dim_tower,
        expected_single=expected_single,
        expected_tower=expected_tower,
        difference=dim_tower - dim_single,
    )


def presentations_generate_same_algebra(rep: Representation, fam: IdempotentFamily) -> bool:
    """Same span test: Cartan generators against projector generators."""
    with_h = algebra_closure(list(rep.e) + list(rep.f) + list(rep.h))
    with_proj = algebra_closure(list(rep.e) + list(rep.f) + list(fam.table.values()))
    return (
        with_h.dimension == with_proj.dimension
        and with_h.canonical_rows() == with_proj.canonical_rows()
    )
