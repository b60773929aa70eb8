import itertools
import random
from collections import Counter
from fractions import Fraction

import pytest

from schurkit import polys
from schurkit.decomposition import weyl_dimension
from schurkit.replinalg import (
    CapExceeded,
    ExactMatrix,
    ExactRowSpan,
    algebra_closure,
    minimal_polynomial,
    natural_rep,
    natural_weights,
    preserves_form,
    single_power_rep,
    tensor_lift,
    tower_rep,
)
from schurkit.rootdata import LieType, Weight, build_root_system
from schurkit.weightsets import tensor_dominant_pi, tensor_weights_Pi
from conftest import all_lie_types


def random_matrix(rng, rows, cols, rational=False):
    def entry():
        if rng.random() < 0.4:
            return 0
        if rational:
            return Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return rng.randint(-4, 4)

    return [[entry() for _ in range(cols)] for _ in range(rows)]


def naive_matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(rows)]


def test_matmul_against_dense_oracle():
    rng = random.Random(3)
    for _ in range(10):
        a = random_matrix(rng, 4, 5, rational=True)
        b = random_matrix(rng, 5, 3, rational=True)
        prod = ExactMatrix.from_dense(a) @ ExactMatrix.from_dense(b)
        assert prod.dense() == naive_matmul(a, b)


def test_basic_arithmetic_and_normalization():
    a = ExactMatrix.from_dense([[Fraction(2, 2), 0], [0, -1]])
    assert a == ExactMatrix.diag([1, -1])
    assert (a - a).is_zero()
    assert (2 * a).entry(0, 0) == 2
    assert a.transpose() == a
    assert a.trace() == 0
    b = ExactMatrix.from_dense([[0, 1], [0, 0]])
    assert (a @ b).entry(0, 1) == 1
    with pytest.raises(ValueError):
        a @ ExactMatrix.zeros(3, 3)
    assert a.max_abs_with_location() == (1, 0, 0, 1)


def test_kron_matches_blockwise_definition():
    rng = random.Random(5)
    a = ExactMatrix.from_dense(random_matrix(rng, 2, 2))
    b = ExactMatrix.from_dense(random_matrix(rng, 3, 3))
    k = a.kron(b)
    for i, j in itertools.product(range(2), repeat=2):
        for p, q in itertools.product(range(3), repeat=2):
            assert k.entry(i * 3 + p, j * 3 + q) == a.entry(i, j) * b.entry(p, q)


def test_to_json_dense_row_major():
    a = ExactMatrix.from_dense([[Fraction(1, 2), 0], [0, 2]])
    doc = a.to_json()
    assert doc == {"rows": 2, "cols": 2, "entries": ["1/2", "0/1", "0/1", "2/1"]}


def test_natural_rep_c2_cartan_diagonal():
    gens = natural_rep(LieType("C", 2))
    assert gens.h[0] == ExactMatrix.diag([1, 0, -1, 0])
    assert gens.h[1] == ExactMatrix.diag([0, 1, 0, -1])


def test_natural_rep_b2_last_commutator():
    gens = natural_rep(LieType("B", 2))
    comm = gens.e[1] @ gens.f[1] - gens.f[1] @ gens.e[1]
    assert comm == 2 * gens.h[1]


@pytest.mark.parametrize("lt", all_lie_types(3), ids=str)
def test_natural_rep_commutator_targets(lt):
    gens = natural_rep(lt)
    n = lt.rank
    for i in range(n):
        comm = gens.e[i] @ gens.f[i] - gens.f[i] @ gens.e[i]
        if i < n - 1:
            assert comm == gens.h[i] - gens.h[i + 1]
        elif lt.family == "B":
            assert comm == 2 * gens.h[n - 1]
        elif lt.family == "C":
            assert comm == gens.h[n - 1]
        else:
            assert comm == gens.h[n - 2] + gens.h[n - 1]


@pytest.mark.parametrize("lt", all_lie_types(3), ids=str)
def test_natural_rep_preserves_form(lt):
    gens = natural_rep(lt)
    for X in gens.e + gens.f + gens.h:
        assert preserves_form(X, gens.form)


@pytest.mark.parametrize("lt", all_lie_types(3), ids=str)
def test_natural_weights_match_cartan_action(lt):
    gens = natural_rep(lt)
    base = natural_weights(lt)
    expected = {Weight.eps(lt.rank, i) for i in range(1, lt.rank + 1)}
    expected |= {-w for w in expected}
    if lt.family == "B":
        expected.add(Weight.zero(lt.rank))
    assert set(base) == expected
    for i, h in enumerate(gens.h):
        assert h == ExactMatrix.diag([w.coords[i] for w in base])


def test_tensor_lift_degree_one_is_identity_map():
    gens = natural_rep(LieType("C", 2))
    assert tensor_lift(gens.h[0], 1) == gens.h[0]
    with pytest.raises(ValueError):
        tensor_lift(gens.h[0], 0)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_tensor_lift_trace_scaling(r):
    m = 4
    h1 = natural_rep(LieType("C", 2)).h[0]
    e00 = ExactMatrix.unit(m, 0, 0)
    for X in (h1, e00):
        assert tensor_lift(X, r).trace() == r * m ** (r - 1) * X.trace()


def test_tensor_lift_eigenvalues_are_pairwise_sums():
    h1 = natural_rep(LieType("C", 2)).h[0]
    lifted = tensor_lift(h1, 2)
    assert lifted.is_diagonal()
    eig = sorted(lifted.diagonal())
    base = [1, 0, -1, 0]
    assert eig == sorted(a + b for a in base for b in base)


@pytest.mark.parametrize("lt", all_lie_types(2), ids=str)
def test_tensor_lift_commutes_with_bracket(lt):
    gens = natural_rep(lt)
    pairs = [(gens.e[0], gens.f[0]), (gens.e[-1], gens.f[-1]), (gens.e[0], gens.h[-1])]
    for X, Y in pairs:
        bracket = X @ Y - Y @ X
        lx, ly = tensor_lift(X, 2), tensor_lift(Y, 2)
        assert tensor_lift(bracket, 2) == lx @ ly - ly @ lx


def test_tower_dimensions():
    assert tower_rep(LieType("B", 2), 2).dim == 31
    assert tower_rep(LieType("C", 1), 2).dim == 5
    assert tower_rep(LieType("C", 2), 3).dim == 68


@pytest.mark.parametrize("lt", all_lie_types(2), ids=str)
@pytest.mark.parametrize("r", [1, 2, 3])
def test_tower_weights_are_sums_with_multiplicity(lt, r):
    rep = tower_rep(lt, r)
    base = natural_weights(lt)
    expected = Counter()
    for s, _, _ in rep.blocks:
        for combo in itertools.product(base, repeat=s):
            total = Weight.zero(lt.rank)
            for w in combo:
                total = total + w
            expected[total] += 1
    assert Counter(rep.weights) == expected
    assert set(rep.weights) == tensor_weights_Pi(lt, r).as_set()


@pytest.mark.parametrize("lt", all_lie_types(2), ids=str)
def test_tower_cartan_operators_are_weight_diagonals(lt):
    rep = tower_rep(lt, 2)
    for i, h in enumerate(rep.h):
        assert h == ExactMatrix.diag([w.coords[i] for w in rep.weights])


def test_single_power_rep_shape():
    rep = single_power_rep(LieType("B", 2), 2)
    assert rep.dim == 25
    assert rep.blocks == ((2, 0, 25),)


def test_minimal_polynomial_examples():
    assert minimal_polynomial(ExactMatrix.identity(3)) == (-1, 1)
    h1 = tensor_lift(natural_rep(LieType("C", 2)).h[0], 2)
    assert minimal_polynomial(h1) == polys.from_roots([-2, -1, 0, 1, 2])
    assert minimal_polynomial(ExactMatrix.zeros(2)) == (0, 1)


def test_minimal_polynomial_of_signed_sum_divides_even_window():
    gens = natural_rep(LieType("C", 2))
    j = tensor_lift(gens.h[0] + gens.h[1], 2)
    mp = minimal_polynomial(j)
    assert polys.divides(mp, polys.from_roots([-2, 0, 2]))
    assert mp == polys.from_roots([-2, 0, 2])


def test_minimal_polynomial_degree_for_diagonal():
    d = ExactMatrix.diag([3, 3, 1, Fraction(1, 2)])
    mp = minimal_polynomial(d)
    assert polys.degree(mp) == 3
    assert polys.evaluate(mp, 3) == 0 and polys.evaluate(mp, Fraction(1, 2)) == 0


def test_row_span_exactness_with_huge_entries():
    span = ExactRowSpan(3)
    assert span.insert([2**70, 0, 1])
    assert span.insert([0, 1, 0])
    assert not span.insert([2**71, 1, 2])  # 2*first + second: dependent
    assert span.dimension == 2


def test_row_span_canonical_form():
    a = ExactRowSpan(3)
    for v in ([1, 2, 3], [0, 0, 2]):
        a.insert(v)
    b = ExactRowSpan(3)
    for v in ([1, 2, 5], [2, 4, -2]):
        b.insert(v)
    assert a.canonical_rows() == b.canonical_rows() == ((1, 2, 0), (0, 0, 1))


def test_algebra_closure_identity_only():
    res = algebra_closure([ExactMatrix.identity(4)])
    assert res.dimension == 1


@pytest.mark.parametrize(
    "family,rank,r",
    [("C", 1, 2), ("C", 2, 2), ("D", 2, 2), ("B", 1, 2)],
)
def test_algebra_closure_tower_dimension_matches_dimension_sums(family, rank, r):
    lt = LieType(family, rank)
    rs = build_root_system(lt)
    rep = tower_rep(lt, r)
    expected = sum(weyl_dimension(rs, lam) ** 2 for lam in tensor_dominant_pi(lt, r))
    res = algebra_closure(rep.generator_lists())
    assert res.dimension == expected


def test_algebra_closure_generator_order_invariance():
    rep = tower_rep(LieType("C", 1), 2)
    gens = rep.generator_lists()
    forward = algebra_closure(gens)
    backward = algebra_closure(list(reversed(gens)))
    assert forward.dimension == backward.dimension
    assert forward.canonical_rows() == backward.canonical_rows()


def test_algebra_closure_contains_products():
    rep = tower_rep(LieType("C", 1), 2)
    res = algebra_closure(rep.generator_lists())
    word = rep.e[0] @ rep.f[0] @ rep.e[0]
    assert res.span.contains(word.flat_int_entries())
    probe = ExactMatrix.unit(rep.dim, 0, rep.dim - 1)
    assert not res.span.contains(probe.flat_int_entries())


def test_algebra_closure_basis_matrices_reconstruct_span():
    rep = tower_rep(LieType("C", 1), 2)
    res = algebra_closure(rep.generator_lists())
    mats = res.basis_matrices()
    assert len(mats) == res.dimension
    for m in mats:
        assert res.span.contains(m.flat_int_entries())


def test_carrier_cap():
    with pytest.raises(CapExceeded):
        tower_rep(LieType("B", 2), 5)
    rep = tower_rep(LieType("B", 2), 5, max_dim=4000)
    assert rep.dim == 3906


def test_carrier_cap_env(monkeypatch):
    monkeypatch.setenv("SCHURKIT_MAX_DIM", "10")
    with pytest.raises(CapExceeded):
        tower_rep(LieType("C", 2), 2)


def test_minimal_polynomial_non_diagonal():
    gens = natural_rep(LieType("C", 2))
    s = gens.e[0] + gens.f[0]
    assert minimal_polynomial(s) == (-1, 0, 1)
    lifted = tensor_lift(s, 2)
    assert minimal_polynomial(lifted) == (0, -4, 0, 1)


@pytest.mark.parametrize("power", [1, 2])
def test_minimal_polynomial_annihilates_via_horner(power):
    from schurkit.replinalg import matrix_poly

    gens = natural_rep(LieType("B", 2))
    for X in (gens.h[0], gens.e[0] + gens.f[0], gens.e[1] + gens.f[1] + gens.h[1]):
        lifted = tensor_lift(X, power)
        mp = minimal_polynomial(lifted)
        assert matrix_poly(mp, lifted).is_zero()
        # least degree: removing the last root-free scaling is not enough to
        # annihilate, so check no proper monic divisor of lower degree does
        quotient, rem = polys.divmod_poly(mp, (0, 1))
        if rem == ():
            assert not matrix_poly(quotient, lifted).is_zero()
