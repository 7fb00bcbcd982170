"""Partition counts, multiplicities, tensor combinatorics.

The Kostant alternating sum and the Freudenthal recursion are
implemented independently and cross-checked here; the partition counts
are checked against bounded brute-force enumeration.
"""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmfactor import rootsystem as rsys
from gkmfactor.weights import (
    QPolynomial,
    freudenthal_weight_table,
    kostant_partition,
    kostant_weight_table,
    tensor_decompose,
    tensor_weight_dim,
    weight_multiplicity,
)


def brute_partition(nu, rs):
    """Enumerate all expressions of nu over the positive roots directly."""
    coeffs = rsys.simple_coefficients(rs, nu)
    if coeffs is None or any(c.denominator != 1 or c < 0 for c in coeffs):
        return []
    target = tuple(int(c) for c in coeffs)
    roots = [rs.root_simple_coeffs[r] for r in rs.positive_roots]
    bound = sum(target)
    hits = []
    for combo in itertools.product(range(bound + 1), repeat=len(roots)):
        total = [0] * rs.rank
        for k, r in zip(combo, roots):
            if k:
                for i, c in enumerate(r):
                    total[i] += k * c
        if tuple(total) == target:
            hits.append(sum(combo))
    return hits


@pytest.mark.parametrize("t,l", [("A", 1), ("A", 2)])
def test_partition_matches_enumeration(t, l):
    rs = rsys.build(t, l)
    for nu in list(rs.positive_roots) + [rs.highest_root, rsys.zero_vec(rs)]:
        hits = brute_partition(nu, rs)
        assert kostant_partition(nu, rs) == len(hits)
        poly = kostant_partition(nu, rs, q_graded=True)
        expected = [0] * (max(hits) + 1 if hits else 0)
        for h in hits:
            expected[h] += 1
        assert list(poly.coeffs) == expected


def test_partition_zero_vector():
    rs = rsys.build("A", 2)
    zero = rsys.zero_vec(rs)
    assert kostant_partition(zero, rs) == 1
    assert kostant_partition(zero, rs, q_graded=True).coeffs == (1,)


def test_partition_theta_a2():
    rs = rsys.build("A", 2)
    assert kostant_partition(rs.highest_root, rs) == 2
    assert str(kostant_partition(rs.highest_root, rs, q_graded=True)) == "q + q^2"


def test_partition_simple_root_a1():
    rs = rsys.build("A", 1)
    assert kostant_partition(rs.highest_root, rs) == 1
    assert kostant_partition(rs.highest_root, rs, q_graded=True).coeffs == (0, 1)


def test_partition_unreachable_is_zero():
    rs = rsys.build("A", 2)
    assert kostant_partition(tuple(-x for x in rs.highest_root), rs) == 0
    assert kostant_partition((1, 1, 1), rs) == 0  # outside the root span


def test_multiplicity_examples():
    a2 = rsys.build("A", 2)
    theta = a2.highest_root
    zero = rsys.zero_vec(a2)
    assert weight_multiplicity(theta, theta, a2) == 1
    assert weight_multiplicity(theta, zero, a2) == 2
    assert str(weight_multiplicity(theta, zero, a2, q_graded=True)) == "q + q^2"
    a1 = rsys.build("A", 1)
    assert weight_multiplicity(a1.highest_root, (0, 0), a1) == 1


def test_multiplicity_rejects_non_dominant():
    a2 = rsys.build("A", 2)
    with pytest.raises(ValueError):
        weight_multiplicity(tuple(-x for x in a2.highest_root), rsys.zero_vec(a2), a2)


@pytest.mark.parametrize(
    "t,l", [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 3), ("D", 4)]
)
def test_freudenthal_vs_kostant_adjoint(t, l):
    rs = rsys.build(t, l)
    assert freudenthal_weight_table(rs.highest_root, rs) == kostant_weight_table(
        rs.highest_root, rs
    )


def test_freudenthal_vs_kostant_deeper():
    rs = rsys.build("A", 2)
    lam = tuple(2 * x for x in rs.highest_root)
    assert freudenthal_weight_table(lam, rs) == kostant_weight_table(lam, rs)


@pytest.mark.parametrize("t,l", [("A", 2), ("A", 3), ("D", 4)])
def test_graded_value_at_one_matches_plain(t, l):
    rs = rsys.build(t, l)
    theta = rs.highest_root
    for nu in rsys.weights_of(rs, theta):
        poly = weight_multiplicity(theta, nu, rs, q_graded=True)
        assert poly.at_one() == weight_multiplicity(theta, nu, rs)


def test_weyl_symmetry_of_multiplicities():
    rs = rsys.build("A", 2)
    theta = rs.highest_root
    for nu in rsys.weights_of(rs, theta):
        for a in rs.simple_roots:
            assert weight_multiplicity(theta, nu, rs) == weight_multiplicity(
                theta, rsys.reflect(rs, nu, a), rs
            )


CONSTRUCTIBLE = (
    [("A", l) for l in range(1, 9)]
    + [("D", l) for l in range(3, 9)]
    + [("E", 6), ("E", 7), ("E", 8)]
)


@pytest.mark.parametrize("t,l", CONSTRUCTIBLE)
def test_adjoint_zero_tensor_dimension(t, l):
    rs = rsys.build(t, l)
    theta = rs.highest_root
    zero = rsys.zero_vec(rs)
    assert tensor_weight_dim(theta, theta, zero, rs) == l * l + rs.num_roots


def test_tensor_dim_e6_value():
    rs = rsys.build("E", 6)
    assert tensor_weight_dim(rs.highest_root, rs.highest_root, rsys.zero_vec(rs), rs) == 108


def test_tensor_dim_top_weight():
    rs = rsys.build("A", 3)
    theta = rs.highest_root
    top = tuple(2 * x for x in theta)
    assert tensor_weight_dim(theta, theta, top, rs) == 1


def test_tensor_dim_direct_convolution_crosscheck():
    # Same sum evaluated over the Kostant-route tables.
    for t, l in [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4)]:
        rs = rsys.build(t, l)
        theta = rs.highest_root
        zero = rsys.zero_vec(rs)
        ta = kostant_weight_table(theta, rs)
        total = sum(
            m * ta.get(tuple(-x for x in sigma), 0) for sigma, m in ta.items()
        )
        assert total == tensor_weight_dim(theta, theta, zero, rs)


def test_tensor_decompose_a1():
    rs = rsys.build("A", 1)
    w = rsys.fundamental_coweight(rs, 1)
    out = tensor_decompose(w, w, rs)
    assert out == {(2, 0): 1, (1, 1): 1}


def test_tensor_decompose_adjoint_square_a2():
    rs = rsys.build("A", 2)
    theta = rs.highest_root
    out = tensor_decompose(theta, theta, rs)
    assert out[theta] == 2


def test_tensor_decompose_with_trivial():
    rs = rsys.build("D", 4)
    theta = rs.highest_root
    zero = rsys.zero_vec(rs)
    assert tensor_decompose(theta, zero, rs) == {theta: 1}


def test_tensor_decompose_mixed_factors():
    # adjoint (x) fundamental in rank-2 type A: three constituents whose
    # dimensions sum to 8 * 3.
    rs = rsys.build("A", 2)
    theta = rs.highest_root
    w1 = rsys.fundamental_coweight(rs, 1)
    dec = tensor_decompose(theta, w1, rs)
    assert sum(dec.values()) == 3
    def dim(lam):
        return sum(freudenthal_weight_table(lam, rs).values())
    assert sum(n * dim(lam) for lam, n in dec.items()) == dim(theta) * dim(w1)


@pytest.mark.parametrize("t,l", [("A", 1), ("A", 2)])
def test_tensor_decompose_reconstructs(t, l):
    rs = rsys.build(t, l)
    theta = rs.highest_root
    out = tensor_decompose(theta, theta, rs)
    table = {}
    for tau, n in out.items():
        for v, m in freudenthal_weight_table(tau, rs).items():
            table[v] = table.get(v, 0) + n * m
    ta = freudenthal_weight_table(theta, rs)
    prod = {}
    for s, m in ta.items():
        for u, k in ta.items():
            v = tuple(a + b for a, b in zip(s, u))
            prod[v] = prod.get(v, 0) + m * k
    assert table == prod
    assert all(n > 0 for n in out.values())


def test_qpolynomial_str():
    assert str(QPolynomial(())) == "0"
    assert str(QPolynomial((1,))) == "1"
    assert str(QPolynomial((0, 1, 2))) == "q + 2q^2"


@pytest.mark.parametrize("t,l", [("A", 1), ("A", 2), ("D", 4), ("E", 6)])
def test_adjoint_table_total_dimension(t, l):
    rs = rsys.build(t, l)
    table = freudenthal_weight_table(rs.highest_root, rs)
    assert sum(table.values()) == rs.num_roots + rs.rank
