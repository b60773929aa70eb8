"""Exact rational matrices and concrete realizations on tensor powers.

Matrices keep dense semantics (fixed shape, entrywise exact equality) over
a sparse dict-of-rows store, since the operators handled here - Chevalley
generators lifted to tensor powers, weight projectors, their products -
are overwhelmingly sparse.  All arithmetic is exact: entries are ints or
Fractions, never floats.

The module also provides the tower carrier (a direct sum of tensor powers
of the natural module on which the whole family of simple modules with
dominant weights in pi is realized), exact minimal polynomials, and the
span-closure computation that measures the dimension of a generated
operator algebra.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polys
from .rootdata import LieType, Weight, exact

DEFAULT_MAX_DIM = 3000
_INT64_GUARD = 2**62


class CapExceeded(RuntimeError):
    """A requested carrier is larger than the configured dimension cap."""


def resolve_max_dim(explicit=None):
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("SCHURKIT_MAX_DIM")
    return int(env) if env else DEFAULT_MAX_DIM


class ExactMatrix:
    """Immutable exact-rational matrix; equality is entrywise and exact."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        self._data = data if data is not None else {}

    @classmethod
    def from_entries(cls, rows, cols, items):
        data = {}
        for i, j, v in items:
            v = exact(Fraction(v)) if not isinstance(v, int) else v
            if v == 0:
                continue
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
            row = data.setdefault(i, {})
            row[j] = row.get(j, 0) + v
            if row[j] == 0:
                del row[j]
                if not row:
                    del data[i]
        return cls(rows, cols, data)

    @classmethod
    def from_dense(cls, dense):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(rows, cols, ((i, j, v) for i, r in enumerate(dense) for j, v in enumerate(r)))

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(rows, cols if cols is not None else rows, {})

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        return cls(n, n, {i: {i: v} for i, v in enumerate(values) if v != 0})

    @classmethod
    def unit(cls, m, i, j, value=1):
        """The elementary matrix with a single entry at (i, j), 0-based."""
        return cls.from_entries(m, m, [(i, j, value)])

    def entry(self, i, j):
        return self._data.get(i, {}).get(j, 0)

    @property
    def nnz(self):
        return sum(len(r) for r in self._data.values())

    def iter_entries(self):
        for i in sorted(self._data):
            row = self._data[i]
            for j in sorted(row):
                yield i, j, row[j]

    def is_zero(self):
        return not self._data

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._data == other._data

    __hash__ = None

    def __add__(self, other):
        self._check_shape(other)
        data = {i: dict(r) for i, r in self._data.items()}
        for i, row in other._data.items():
            dest = data.setdefault(i, {})
            for j, v in row.items():
                s = dest.get(j, 0) + v
                if s == 0:
                    dest.pop(j, None)
                else:
                    dest[j] = s
            if not dest:
                del data[i]
        return ExactMatrix(self.rows, self.cols, data)

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, {i: {j: -v for j, v in r.items()} for i, r in self._data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if scalar == 0:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix(
            self.rows, self.cols, {i: {j: v * scalar for j, v in r.items()} for i, r in self._data.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = {}
        odata = other._data
        for i, row in self._data.items():
            acc = {}
            for k, a in row.items():
                brow = odata.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v != 0}
            if acc:
                out[i] = acc
        return ExactMatrix(self.rows, other.cols, out)

    def transpose(self):
        out = {}
        for i, row in self._data.items():
            for j, v in row.items():
                out.setdefault(j, {})[i] = v
        return ExactMatrix(self.cols, self.rows, out)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum(r.get(i, 0) for i, r in self._data.items())

    def diagonal(self):
        return [self.entry(i, i) for i in range(min(self.rows, self.cols))]

    def is_diagonal(self):
        return all(i == j for i, row in self._data.items() for j in row)

    def kron(self, other):
        data = {}
        for i, row in self._data.items():
            for k, orow in other._data.items():
                dest = data.setdefault(i * other.rows + k, {})
                for j, a in row.items():
                    for l, b in orow.items():
                        dest[j * other.cols + l] = a * b
        return ExactMatrix(self.rows * other.rows, self.cols * other.cols, data)

    def max_abs_with_location(self):
        """(abs value, row, col, value) of the largest-magnitude entry."""
        best = None
        for i, j, v in self.iter_entries():
            mag = abs(Fraction(v))
            if best is None or mag > best[0]:
                best = (mag, i, j, v)
        return best

    def dense(self):
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def flat_int_entries(self):
        """Row-major dense entries scaled to integers (common denominator)."""
        denom = 1
        for _, _, v in self.iter_entries():
            if not isinstance(v, int):
                denom = denom * v.denominator // math.gcd(denom, v.denominator)
        flat = [0] * (self.rows * self.cols)
        for i, row in self._data.items():
            base = i * self.cols
            for j, v in row.items():
                scaled = v * denom
                if isinstance(scaled, Fraction):
                    assert scaled.denominator == 1
                    scaled = scaled.numerator
                flat[base + j] = scaled
        return flat

    def to_json(self):
        entries = []
        for i in range(self.rows):
            row = self._data.get(i, {})
            for j in range(self.cols):
                v = Fraction(row.get(j, 0))
                entries.append(f"{v.numerator}/{v.denominator}")
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    def _check_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def block_diag(mats):
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = {}
    roff = coff = 0
    for m in mats:
        for i, row in m._data.items():
            data[roff + i] = {coff + j: v for j, v in row.items()}
        roff += m.rows
        coff += m.cols
    return ExactMatrix(rows, cols, data)


def matrix_poly(coeffs, M):
    """Evaluate a polynomial (ascending coefficients) at a square matrix."""
    if not M.is_square():
        raise ValueError("polynomial of a non-square matrix")
    acc = ExactMatrix.zeros(M.rows)
    for c in reversed(coeffs):
        acc = acc @ M
        if c != 0:
            acc = acc + c * ExactMatrix.identity(M.rows)
    return acc


def product_of_shifts(M, shifts):
    """Product over s in shifts of (M - s*I), cut short once exactly zero."""
    acc = ExactMatrix.identity(M.rows)
    ident = ExactMatrix.identity(M.rows)
    for s in shifts:
        acc = acc @ (M - s * ident)
        if acc.is_zero():
            break
    return acc


# ---------------------------------------------------------------------------
# Chevalley generators on the natural module


@dataclass(frozen=True)
class GeneratorSet:
    """Raising, lowering, and Cartan generators acting on the natural module."""

    lie_type: LieType
    e: tuple
    f: tuple
    h: tuple
    form: ExactMatrix

    @property
    def space_dim(self):
        return self.lie_type.natural_dim


def form_matrix(lt: LieType) -> ExactMatrix:
    """Gram matrix of the defining bilinear or symplectic form."""
    n = lt.rank
    items = [(i, n + i, 1) for i in range(n)]
    if lt.family == "C":
        items += [(n + i, i, -1) for i in range(n)]
    else:
        items += [(n + i, i, 1) for i in range(n)]
    if lt.family == "B":
        items.append((2 * n, 2 * n, 1))
    return ExactMatrix.from_entries(lt.natural_dim, lt.natural_dim, items)


def natural_weights(lt: LieType):
    """Weight of each standard basis vector of the natural module."""
    n = lt.rank
    out = [Weight.eps(n, i + 1) for i in range(n)]
    out += [-Weight.eps(n, i + 1) for i in range(n)]
    if lt.family == "B":
        out.append(Weight.zero(n))
    return out


def natural_rep(lt: LieType) -> GeneratorSet:
    """Simple root vectors e_i, f_i and Cartan elements H_i on the natural module.

    H_i has +1 at position i and -1 at position n+i.  For i < n the root
    vectors are shared by all three families; the last one depends on the
    family and is normalized so that [e_n, f_n] equals 2H_n in type B,
    H_n in type C, and H_{n-1} + H_n in type D.
    """
    n, m = lt.rank, lt.natural_dim
    E = lambda i, j, v=1: ExactMatrix.unit(m, i, j, v)
    es, fs, hs = [], [], []
    for i in range(1, n):
        es.append(E(i - 1, i) - E(n + i, n + i - 1))
        fs.append(E(i, i - 1) - E(n + i - 1, n + i))
    if lt.family == "B":
        es.append(E(n - 1, 2 * n) - E(2 * n, 2 * n - 1))
        fs.append(E(2 * n, n - 1, 2) - E(2 * n - 1, 2 * n, 2))
    elif lt.family == "C":
        es.append(E(n - 1, 2 * n - 1))
        fs.append(E(2 * n - 1, n - 1))
    else:
        es.append(E(n - 2, 2 * n - 1) - E(n - 1, 2 * n - 2))
        fs.append(E(2 * n - 1, n - 2) - E(2 * n - 2, n - 1))
    hs = [E(i, i) - E(n + i, n + i) for i in range(n)]
    return GeneratorSet(lie_type=lt, e=tuple(es), f=tuple(fs), h=tuple(hs), form=form_matrix(lt))


def preserves_form(X: ExactMatrix, form: ExactMatrix) -> bool:
    """Check the infinitesimal invariance condition X^T M + M X = 0."""
    return (X.transpose() @ form + form @ X).is_zero()


# ---------------------------------------------------------------------------
# Tensor lifts and tower carriers


def _lift_to_power(X: ExactMatrix, r: int) -> ExactMatrix:
    m = X.rows
    if r == 0:
        return ExactMatrix.zeros(1)
    total = ExactMatrix.zeros(m**r)
    for k in range(r):
        term = ExactMatrix.identity(m**k).kron(X).kron(ExactMatrix.identity(m ** (r - 1 - k)))
        total = total + term
    return total


def tensor_lift(X: ExactMatrix, r: int) -> ExactMatrix:
    """Derivation action of X on the r-th tensor power of its column space."""
    if r < 1:
        raise ValueError("tensor_lift needs r >= 1")
    if not X.is_square():
        raise ValueError("tensor_lift needs a square matrix")
    return _lift_to_power(X, r)


@dataclass(frozen=True)
class Representation:
    """Generators realized on a direct sum of tensor powers, with weights.

    `blocks` lists (power s, offset, size) for each summand; `weights[b]`
    is the simultaneous H-eigenvalue vector of basis vector b.
    """

    lie_type: LieType
    r: int
    e: tuple
    f: tuple
    h: tuple
    dim: int
    weights: tuple
    blocks: tuple
    kind: str

    @property
    def rank(self):
        return self.lie_type.rank

    def generator_lists(self):
        return list(self.e) + list(self.f) + list(self.h)


def _tower_degrees(lt: LieType, r: int):
    if lt.family == "B":
        return list(range(0, r + 1))
    return list(range(r % 2, r + 1, 2))


def _build_rep(lt: LieType, r: int, degrees, kind, max_dim=None):
    m = lt.natural_dim
    cap = resolve_max_dim(max_dim)
    dim = sum(m**s for s in degrees)
    if dim > cap:
        raise CapExceeded(f"carrier dimension {dim} exceeds cap {cap} for {lt}, r={r}")
    gens = natural_rep(lt)
    lift_all = lambda mats: tuple(block_diag([_lift_to_power(g, s) for s in degrees]) for g in mats)
    evs, fvs, hvs = lift_all(gens.e), lift_all(gens.f), lift_all(gens.h)

    base = natural_weights(lt)
    weights = []
    blocks = []
    offset = 0
    for s in degrees:
        blocks.append((s, offset, m**s))
        for combo in itertools.product(range(m), repeat=s):
            w = Weight.zero(lt.rank)
            for idx in combo:
                w = w + base[idx]
            weights.append(w)
        offset += m**s
    return Representation(
        lie_type=lt,
        r=r,
        e=evs,
        f=fvs,
        h=hvs,
        dim=dim,
        weights=tuple(weights),
        blocks=tuple(blocks),
        kind=kind,
    )


def tower_rep(lt: LieType, r: int, max_dim=None) -> Representation:
    """Block-diagonal action on the tower of tensor powers.

    Type B uses every power 0..r (the natural module has a zero weight, so
    lower degrees of both parities occur as weights); types C and D use the
    powers of matching parity.  The tower contains every simple module with
    highest weight in pi as a composition factor, which a single power does
    not guarantee in type B.
    """
    if r < 1:
        raise ValueError("tower_rep needs r >= 1")
    return _build_rep(lt, r, _tower_degrees(lt, r), "tower", max_dim)


def single_power_rep(lt: LieType, r: int, max_dim=None) -> Representation:
    """Action on the single tensor power of degree r."""
    if r < 1:
        raise ValueError("single_power_rep needs r >= 1")
    return _build_rep(lt, r, [r], "power", max_dim)


# ---------------------------------------------------------------------------
# Minimal polynomials


def minimal_polynomial(X: ExactMatrix):
    """Least-degree monic annihilator of X, ascending coefficients, exact.

    Krylov iteration on the flattened powers of X with full coefficient
    tracking; the first linear dependence among I, X, X^2, ... yields the
    minimal polynomial.
    """
    if not X.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = X.rows
    basis = []  # (vector list, coeff list, pivot index)
    power = ExactMatrix.identity(n)
    k = 0
    while True:
        vec = [Fraction(0)] * (n * n)
        for i, j, v in power.iter_entries():
            vec[i * n + j] = Fraction(v)
        coeffs = [Fraction(0)] * k + [Fraction(1)]
        for bvec, bcoeffs, bpiv in basis:
            if vec[bpiv] != 0:
                factor = vec[bpiv] / bvec[bpiv]
                vec = [a - factor * b for a, b in zip(vec, bvec)]
                for idx, c in enumerate(bcoeffs):
                    coeffs[idx] -= factor * c
        pivot = next((idx for idx, a in enumerate(vec) if a != 0), None)
        if pivot is None:
            return polys.normalize(coeffs)
        basis.append((vec, coeffs, pivot))
        power = power @ X
        k += 1
        if k > n:
            raise AssertionError("minimal polynomial search exceeded the dimension bound")


# ---------------------------------------------------------------------------
# Span closure of a generated operator algebra


class ExactRowSpan:
    """Incremental reduced row echelon over Q with integer-normalized rows.

    Rows are primitive integer vectors (gcd 1, positive pivot) with every
    pivot column cleared from the other rows, so the stored basis is the
    canonical reduced echelon form of the row space: independent of
    insertion order.  Arithmetic runs on int64 vectors while a safe bound
    holds and falls back to exact object (big-int) vectors otherwise.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []  # list of np arrays, kept sorted by pivot column
        self.pivots = []  # pivot column per row

    @property
    def dimension(self):
        return len(self.rows)

    @staticmethod
    def _to_vector(flat):
        try:
            return np.array(flat, dtype=np.int64)
        except OverflowError:
            return np.array(flat, dtype=object)

    @staticmethod
    def _maxabs(vec):
        if vec.size == 0:
            return 0
        if vec.dtype == np.int64:
            return int(np.abs(vec).max())
        return max((abs(int(x)) for x in vec.tolist()), default=0)

    @staticmethod
    def _gcd_normalize(vec):
        if vec.dtype == np.int64:
            g = int(np.gcd.reduce(np.abs(vec)))
        else:
            g = 0
            for x in vec.tolist():
                g = math.gcd(g, abs(int(x)))
                if g == 1:
                    break
        if g > 1:
            vec = vec // g
        return vec

    @classmethod
    def _combine(cls, a, vec, b, row):
        """a*vec - b*row, exactly, promoting to object dtype when unsafe."""
        if vec.dtype == np.int64 and row.dtype == np.int64:
            bound = abs(a) * cls._maxabs(vec) + abs(b) * cls._maxabs(row)
            if bound < _INT64_GUARD:
                return a * vec - b * row
        if vec.dtype == np.int64:
            vec = vec.astype(object)
        if row.dtype == np.int64:
            row = row.astype(object)
        return a * vec - b * row

    def reduce(self, flat):
        """Fully reduce a vector against the span; returns a normalized array."""
        vec = self._to_vector(flat)
        vec = self._gcd_normalize(vec)
        for row, piv in zip(self.rows, self.pivots):
            coeff = int(vec[piv])
            if coeff == 0:
                continue
            lead = int(row[piv])
            vec = self._combine(lead, vec, coeff, row)
            vec = self._gcd_normalize(vec)
        return vec

    def contains(self, flat):
        return not np.any(self.reduce(flat))

    def insert(self, flat):
        """Reduce and, if independent, add to the basis. True iff added."""
        vec = self.reduce(flat)
        nz = np.nonzero(vec)[0]
        if nz.size == 0:
            return False
        pivot = int(nz[0])
        if int(vec[pivot]) < 0:
            vec = -vec
        # clear the new pivot column from existing rows
        for idx, row in enumerate(self.rows):
            coeff = int(row[pivot])
            if coeff == 0:
                continue
            lead = int(vec[pivot])
            newrow = self._combine(lead, row, coeff, vec)
            newrow = self._gcd_normalize(newrow)
            if int(newrow[self.pivots[idx]]) < 0:
                newrow = -newrow
            self.rows[idx] = newrow
        pos = int(np.searchsorted(np.array(self.pivots, dtype=np.int64), pivot)) if self.pivots else 0
        self.rows.insert(pos, vec)
        self.pivots.insert(pos, pivot)
        return True

    def canonical_rows(self):
        """Basis rows as integer tuples in pivot order (a canonical form)."""
        return tuple(tuple(int(x) for x in row.tolist()) for row in self.rows)


def _np_square(mat: ExactMatrix):
    arr = ExactRowSpan._to_vector(mat.flat_int_entries()).reshape(mat.rows, mat.cols)
    return arr


def _np_matmul(a, b):
    if a.dtype == np.int64 and b.dtype == np.int64:
        bound = ExactRowSpan._maxabs(a.ravel()) * ExactRowSpan._maxabs(b.ravel()) * a.shape[1]
        if bound < _INT64_GUARD:
            return a @ b
    if a.dtype == np.int64:
        a = a.astype(object)
    if b.dtype == np.int64:
        b = b.astype(object)
    return a @ b


@dataclass
class ClosureResult:
    """Dimension and canonical echelon basis of a generated matrix algebra."""

    dimension: int
    size: int
    span: ExactRowSpan

    def canonical_rows(self):
        return self.span.canonical_rows()

    def basis_matrices(self):
        """Basis as exact matrices, each row of the echelon form rescaled monic."""
        out = []
        for row, piv in zip(self.span.rows, self.span.pivots):
            lead = int(row[piv])
            items = []
            for idx in np.nonzero(row)[0]:
                q = Fraction(int(row[int(idx)]), lead)
                items.append((int(idx) // self.size, int(idx) % self.size, q))
            out.append(ExactMatrix.from_entries(self.size, self.size, items))
        return out


def algebra_closure(mats, include_identity=True) -> ClosureResult:
    """Basis of the unital associative algebra generated by square matrices.

    Seeds the span with the identity and the generators, then repeatedly
    multiplies newly accepted elements by every generator on both sides,
    reducing each product into the echelon span until it stabilizes.
    Candidates are processed in a fixed order, and the reduced echelon
    basis is canonical, so the result does not depend on generator order.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one generator")
    size = mats[0].rows
    for m in mats:
        if not m.is_square() or m.rows != size:
            raise ValueError("generators must be square matrices of equal size")

    span = ExactRowSpan(size * size)
    gens = [_np_square(m) for m in mats]
    queue = []
    seeds = ([np.eye(size, dtype=np.int64)] if include_identity else []) + gens
    for arr in seeds:
        if span.insert(arr.ravel()):
            queue.append(arr)
    qi = 0
    while qi < len(queue):
        a = queue[qi]
        qi += 1
        for g in gens:
            for prod in (_np_matmul(a, g), _np_matmul(g, a)):
                if span.insert(prod.ravel()):
                    queue.append(prod)
    return ClosureResult(dimension=span.dimension, size=size, span=span)
