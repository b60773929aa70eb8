"""Weight-space projectors built from integer-rooted annihilator polynomials.

For a carrier whose Cartan operators H_i have integer spectra in [-r, r],
the projector onto the simultaneous eigenspace of eigenvalue vector lam is

    1_lam = prod_i  P1^(lam_i)(H_i) / P1^(lam_i)(lam_i),

where P1 has the roots -r, ..., r and P1^(k) is P1 with the factor
(T - k) removed.  The polynomial product is the normative construction;
because the H_i are diagonal on the standard tensor basis the projectors
are plain indicator diagonals, so the family is materialized that way
after the polynomial formula has been re-verified on a sample of weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .replinalg import ExactMatrix, Representation, product_of_shifts
from .rootdata import Weight, build_root_system
from .weightsets import WeightSet, tensor_weights_Pi


@dataclass(frozen=True)
class AnnihilatorPolynomial:
    """Monic polynomial with the integer roots -r..r, stepping by 1 or 2."""

    kind: str  # "P1" or "P2"
    r: int

    def __post_init__(self):
        if self.kind not in ("P1", "P2"):
            raise ValueError(f"kind must be P1 or P2, got {self.kind!r}")
        if self.r < 1:
            raise ValueError("need r >= 1")

    @property
    def roots(self):
        step = 1 if self.kind == "P1" else 2
        return tuple(range(-self.r, self.r + 1, step))

    @property
    def degree(self):
        return 2 * self.r + 1 if self.kind == "P1" else self.r + 1

    def coefficients(self):
        return polys.from_roots(self.roots)

    def evaluate(self, x):
        return polys.evaluate(self.coefficients(), x)

    def at_matrix(self, M: ExactMatrix) -> ExactMatrix:
        return product_of_shifts(M, self.roots)


def p1(r):
    return AnnihilatorPolynomial("P1", r)


def p2(r):
    return AnnihilatorPolynomial("P2", r)


def annihilator_for_signed_sums(family, r) -> AnnihilatorPolynomial:
    """The polynomial every signed sum of Cartan operators satisfies."""
    return p1(r) if family == "B" else p2(r)


def deleted_factor_poly(r, k):
    """P1 with the factor (T - k) removed; degree 2r, ascending coefficients."""
    if not -r <= k <= r:
        raise ValueError(f"k={k} outside [-{r}, {r}]")
    return polys.from_roots([j for j in range(-r, r + 1) if j != k])


def polynomial_idempotent(rep: Representation, lam: Weight) -> ExactMatrix:
    """1_lam by the deleted-factor product, one linear factor at a time.

    Never expands the degree-2rn product symbolically: each factor
    (H_i - j) is applied as a matrix product, which keeps rationals small.
    """
    r = rep.r
    acc = ExactMatrix.identity(rep.dim)
    ident = ExactMatrix.identity(rep.dim)
    denom = Fraction(1)
    for i, hi in enumerate(rep.h):
        k = lam.coords[i]
        if not isinstance(k, int) or not -r <= k <= r:
            raise ValueError(f"eigenvalue {k} for H_{i+1} escapes the integer window [-{r}, {r}]")
        for j in range(-r, r + 1):
            if j == k:
                continue
            acc = acc @ (hi - j * ident)
            denom *= k - j
    return (1 / denom) * acc


@dataclass(frozen=True)
class IdempotentFamily:
    """The complete system of weight projectors on one carrier."""

    rep: Representation
    pi_all: WeightSet
    table: dict

    def idempotent(self, lam: Weight) -> ExactMatrix:
        found = self.table.get(lam)
        return found if found is not None else ExactMatrix.zeros(self.rep.dim)

    def weights(self):
        return tuple(self.table.keys())

    def rank_table(self):
        """Projector ranks per weight; for indicator diagonals this is the trace."""
        return {lam: mat.trace() for lam, mat in self.table.items()}

    def without(self, lam: Weight) -> "IdempotentFamily":
        """Copy of the family with one projector dropped (for fault probes)."""
        table = {mu: mat for mu, mat in self.table.items() if mu != lam}
        return IdempotentFamily(rep=self.rep, pi_all=self.pi_all, table=table)

    def summary_json(self):
        return {
            "carrier": self.rep.kind,
            "dim": self.rep.dim,
            "ranks": [{"weight": lam.to_json(), "rank": int(rank)} for lam, rank in self.rank_table().items()],
        }


def build_idempotents(rep: Representation, verify_sample=4) -> IdempotentFamily:
    """Construct all 1_lam on a carrier, verifying the polynomial formula.

    The indicator-diagonal shortcut and the polynomial product must agree
    exactly; they are compared on a deterministic sample of weights
    (spread through the canonical order, plus the extremes).
    """
    r = rep.r
    pi_all = tensor_weights_Pi(rep.lie_type, r)
    for b, w in enumerate(rep.weights):
        for c in w.coords:
            if not isinstance(c, int) or not -r <= c <= r:
                raise ValueError(f"carrier weight {w!r} at basis vector {b} escapes [-{r}, {r}]")

    support = set(rep.weights)
    if not support <= pi_all.as_set():
        raise ValueError("carrier weights are not contained in the expected weight set")

    table = {}
    for lam in pi_all:
        diag = [1 if w == lam else 0 for w in rep.weights]
        table[lam] = ExactMatrix.diag(diag)

    elements = list(pi_all)
    if verify_sample and elements:
        stride = max(1, len(elements) // min(verify_sample, len(elements)))
        picks = sorted(set(range(0, len(elements), stride)) | {len(elements) - 1})
        for idx in picks:
            lam = elements[idx]
            assert polynomial_idempotent(rep, lam) == table[lam], (
                f"polynomial and indicator projectors disagree at {lam!r}"
            )
    return IdempotentFamily(rep=rep, pi_all=pi_all, table=table)


def reconstruct_H(fam: IdempotentFamily, i) -> ExactMatrix:
    """Sum of lam_i * 1_lam over the family; equals the carrier's H_i."""
    if not 1 <= i <= fam.rep.rank:
        raise IndexError(f"index {i} out of range 1..{fam.rep.rank}")
    acc = ExactMatrix.zeros(fam.rep.dim)
    for lam, proj in fam.table.items():
        c = lam.coords[i - 1]
        if c != 0:
            acc = acc + c * proj
    return acc


@dataclass
class LadderReport:
    """Outcome of the one-sided intertwining checks e_i 1_lam = 1_{lam+a_i} e_i."""

    violations: list  # (side, i, lam) triples
    checked: int
    skipped: int

    @property
    def ok(self):
        return not self.violations


def ladder_check(fam: IdempotentFamily, rep: Representation = None) -> LadderReport:
    """Verify both ladder families on every projector of the family.

    Weights mu outside the carrier weight set contribute 1_mu = 0.  If a
    weight inside the set is missing from the family's table the case is
    skipped rather than failed: completeness of the family is a separate
    check and the intertwining identity cannot be evaluated without the
    missing projector.
    """
    rep = rep if rep is not None else fam.rep
    rs = build_root_system(rep.lie_type)
    members = fam.pi_all.as_set()
    zero = ExactMatrix.zeros(rep.dim)
    violations = []
    checked = skipped = 0
    for idx in range(1, rep.rank + 1):
        alpha = rs.simple_root(idx)
        e_i, f_i = rep.e[idx - 1], rep.f[idx - 1]
        for lam in fam.table:
            for side, op, target in (
                ("e", e_i, lam + alpha),
                ("f", f_i, lam - alpha),
            ):
                if target in members:
                    proj = fam.table.get(target)
                    if proj is None:
                        skipped += 1
                        continue
                    expected = proj @ op
                else:
                    expected = zero
                checked += 1
                if op @ fam.table[lam] != expected:
                    violations.append((side, idx, lam))
    return LadderReport(violations=violations, checked=checked, skipped=skipped)
