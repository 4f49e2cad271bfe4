import random
from fractions import Fraction
from math import comb, gcd

import pytest

from nilhom.linalg import (BasisIndex, IntMatrix, RatMatrix, det,
                           exterior_power_map, kron, rank_kernel_image,
                           smith_normal_form, solve, tensor_power_map)


def rand_rat_matrix(rng, rows, cols, span=4):
    return RatMatrix([[Fraction(rng.randint(-span, span)) for _ in range(cols)]
                      for _ in range(rows)])


def test_rank_kernel_identity():
    rank, kernel, image = rank_kernel_image(RatMatrix.identity(3))
    assert rank == 3 and kernel == [] and len(image) == 3


def test_rank_kernel_zero():
    rank, kernel, _ = rank_kernel_image(RatMatrix.zero(2, 2))
    assert rank == 0
    assert len(kernel) == 2


def test_rank_kernel_proportional_rows():
    rank, kernel, _ = rank_kernel_image(RatMatrix([[1, 2], [2, 4]]))
    assert rank == 1
    assert kernel == [(Fraction(-2), Fraction(1))]


def test_rank_nullity_random():
    rng = random.Random(0)
    for _ in range(40):
        m = rand_rat_matrix(rng, rng.randint(0, 5), rng.randint(0, 5))
        rank, kernel, image = rank_kernel_image(m)
        assert rank + len(kernel) == m.cols
        assert len(image) == rank
        for v in kernel:
            prod = m * RatMatrix.from_cols([v], m.cols)
            assert prod.is_zero()


def test_solve_roundtrip():
    rng = random.Random(1)
    for _ in range(20):
        a = rand_rat_matrix(rng, 4, 3)
        x = rand_rat_matrix(rng, 3, 2)
        b = a * x
        x2 = solve(a, b)
        assert a * x2 == b
    with pytest.raises(ValueError):
        solve(RatMatrix.zero(2, 2), RatMatrix([[1], [0]]))


def test_snf_reorders_divisors():
    _, d, _ = smith_normal_form(IntMatrix([[3, 0], [0, 1]]))
    assert d.entries == ((1, 0), (0, 3))


def test_snf_minor_gcd_oracle():
    m = IntMatrix([[2, 4], [6, 8]])
    u, d, v = smith_normal_form(m)
    # independent oracle: d1 is the gcd of the entries, d1*d2 = |det|
    g = 0
    for row in m.entries:
        for x in row:
            g = gcd(g, abs(x))
    assert d.entries[0][0] == g == 2
    assert d.entries[0][0] * d.entries[1][1] == abs(m.det()) == 8


def test_snf_zero_matrix():
    u, d, v = smith_normal_form(IntMatrix.zero(2, 3))
    assert d.is_zero()
    assert u == IntMatrix.identity(2)
    assert v == IntMatrix.identity(3)


def test_snf_random_properties():
    rng = random.Random(2)
    for _ in range(30):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        m = IntMatrix([[rng.randint(-6, 6) for _ in range(nc)]
                       for _ in range(nr)])
        u, d, v = smith_normal_form(m)
        assert u * m * v == d
        assert abs(u.det()) == 1 and abs(v.det()) == 1
        diag = [d.entries[i][i] for i in range(min(d.rows, d.cols))]
        assert all(x >= 0 for x in diag)
        for i in range(len(diag) - 1):
            if diag[i + 1] != 0:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    assert d.entries[i][j] == 0


def test_exterior_top_is_determinant():
    m = RatMatrix([[1, 2], [3, 4]])
    top = exterior_power_map(m, 2)
    assert top.shape == (1, 1)
    assert top.entries[0][0] == det(m)


def test_exterior_identity_and_diag():
    for k in range(4):
        e = exterior_power_map(RatMatrix.identity(3), k)
        assert e == RatMatrix.identity(comb(3, k))
    d = exterior_power_map(RatMatrix([[2, 0], [0, 3]]), 1)
    assert d == RatMatrix([[2, 0], [0, 3]])


def test_exterior_beyond_dimension_is_empty():
    e = exterior_power_map(RatMatrix.identity(2), 3)
    assert e.shape == (0, 0)


def test_exterior_functorial():
    rng = random.Random(3)
    for _ in range(15):
        m = rand_rat_matrix(rng, 3, 3, 2)
        n = rand_rat_matrix(rng, 3, 3, 2)
        assert exterior_power_map(m * n, 2) == \
            exterior_power_map(m, 2) * exterior_power_map(n, 2)


def test_tensor_power_basics():
    assert tensor_power_map(RatMatrix([[5]]), 0) == RatMatrix([[1]])
    d = tensor_power_map(RatMatrix([[2, 0], [0, 3]]), 2)
    assert [d.entries[i][i] for i in range(4)] == [4, 6, 6, 9]
    m = RatMatrix([[1, 2], [3, 4]])
    assert tensor_power_map(m, 1) == m


def test_tensor_functorial_oracle():
    # direct multiplication oracle: (MN) tensor (MN) == (M tensor M)(N tensor N)
    rng = random.Random(4)
    for _ in range(15):
        m = rand_rat_matrix(rng, 2, 2, 3)
        n = rand_rat_matrix(rng, 2, 2, 3)
        assert tensor_power_map(m * n, 2) == \
            tensor_power_map(m, 2) * tensor_power_map(n, 2)


def test_kron_block_structure():
    a = RatMatrix([[1, 2], [3, 4]])
    b = RatMatrix([[0, 5], [6, 7]])
    k = kron(a, b)
    assert k.shape == (4, 4)
    assert k.entries[0][1] == 5          # a[0][0] * b[0][1]
    assert k.entries[2][0] == 0          # a[1][0] * b[0][0]
    assert k.entries[3][3] == 28         # a[1][1] * b[1][1]


def test_basis_index_validation():
    b = BasisIndex.exterior(4, 2)
    assert len(b) == 6
    assert b.labels[0] == (0, 1)
    t = BasisIndex.tensor(2, 2)
    assert t.labels == ((0, 0), (0, 1), (1, 0), (1, 1))
    with pytest.raises(ValueError):
        BasisIndex("exterior", [(0, 0)])
    with pytest.raises(ValueError):
        BasisIndex("tensor", [(1,), (0,)])
    with pytest.raises(ValueError):
        BasisIndex("tensor", [(0,), (0,)])


def test_int_matrix_rank_and_det():
    m = IntMatrix([[2, 4], [6, 8]])
    assert m.det() == -8
    assert m.rank() == 2
    assert IntMatrix([[1, 2], [2, 4]]).rank() == 1
    assert IntMatrix.zero(3, 2).rank() == 0


def test_matrix_power():
    g = RatMatrix([[2, 1], [1, 1]])
    assert g ** 0 == RatMatrix.identity(2)
    assert g ** 3 == g * g * g
