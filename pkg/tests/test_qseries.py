import json

import pytest
from sympy.functions.combinatorial.numbers import partition as npartitions

from fockbasis import basis
from fockbasis.qseries import (
    INF, BivariateSeries, QPolynomial, ch_F, ch_L01, ch_L11, ch_W, fibonacci_polynomial_character,
    gaussian_binomial, gaussian_stabilization_check, limit_stabilization_check, pochhammer_inv,
    qbinomial_identity_check, restricted_partition_count,
)

from oracles import gap_two_sets, partitions_bounded_parts, partitions_in_box


def poly(*c):
    return QPolynomial(tuple(c))


def test_polynomial_basics():
    assert poly(1, 2, 0, 0) == poly(1, 2)
    assert poly(1, 1) * poly(1, -1) == poly(1, 0, -1)
    assert poly().degree == -1
    assert str(poly(1, 0, 3)) == "1 + 3*q^2"


def test_pochhammer_examples():
    assert pochhammer_inv(0, 4) == poly(1)
    assert pochhammer_inv(1, 4) == poly(1, 1, 1, 1, 1)
    assert pochhammer_inv(2, 4) == poly(1, 1, 2, 2, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_pochhammer_counts_bounded_partitions(n):
    assert list(pochhammer_inv(n, 12).coeffs) == [partitions_bounded_parts(k, n) for k in range(13)]


def test_pochhammer_infinite():
    assert list(pochhammer_inv(INF, 20).coeffs) == [npartitions(k) for k in range(21)]


def test_gaussian_examples():
    assert gaussian_binomial(5, 0) == poly(1)
    assert gaussian_binomial(2, 1) == poly(1, 1)
    assert gaussian_binomial(4, 2) == poly(1, 1, 2, 1, 1)
    assert gaussian_binomial(2, 3) == QPolynomial()


@pytest.mark.parametrize("a", range(11))
def test_gaussian_counts_box_partitions(a):
    for b in range(a + 1):
        g = gaussian_binomial(a, b)
        box = partitions_in_box(b, a - b)
        assert g.degree == b * (a - b)
        assert {k: c for k, c in enumerate(g.coeffs) if c} == box


def test_series_window_and_errors():
    s = ch_L01(4, -2, 2)
    with pytest.raises(KeyError):
        s.coefficient(3, 0)
    with pytest.raises(KeyError):
        s.coefficient(0, 5)
    with pytest.raises(ValueError):
        BivariateSeries(1, 0, 3)
    t = ch_L01(6, -1, 3)
    mixed = s + t
    assert mixed.window == (-1, 2, 4)
    assert mixed.coefficient(0, 2) == 4
    assert (s - s).coeffs == {}


def test_series_serialization():
    s = ch_W(0, 6, 0, 3)
    assert BivariateSeries.from_json(json.loads(json.dumps(s.to_json()))) == s
    lines = s.to_csv().splitlines()
    assert lines[0] == "z_power,q_power,coeff"
    assert "2,5,1" in lines and "2,6,2" in lines


def test_l01_examples():
    s = ch_L01(4, -2, 2)
    assert s.coefficient(0, 0) == 1
    assert s.coefficient(1, 1) == 1
    assert s.coefficient(0, 2) == 2
    assert s.coefficient(0, 1) == 1


def test_l01_rows_are_shifted_partition_counts():
    s = ch_L01(12, -3, 3)
    for n in range(-3, 4):
        for d in range(13):
            assert s.coefficient(n, d) == (npartitions(d - n * n) if d >= n * n else 0)


def test_l11_rows():
    s = ch_L11(10, -3, 3)
    for n in range(-3, 4):
        for d in range(11):
            k = d - n * n - n
            assert s.coefficient(n, d) == (npartitions(k) if k >= 0 else 0)


def test_w0_examples():
    s = ch_W(0, 8, 0, 3)
    assert s.coefficient(2, 5) == 1
    assert s.coefficient(2, 6) == 2
    assert s.z_row(0) == poly(1)


def test_w0_counts_gap_two_sets():
    s = ch_W(0, 14, 0, 4)
    for n in range(5):
        for m in range(15):
            assert s.coefficient(n, m) == len(gap_two_sets(m, n, m))


def test_w_embeddings_and_limit():
    for j in range(-3, 3):
        assert ch_W(j, 8, -3, 3) <= ch_W(j - 1, 8, -3, 3)
    ok, m_star = limit_stabilization_check(6, -2, 2)
    assert ok
    for m in range(m_star - 3, m_star + 1):
        assert ch_W(m, 6, -2, 2).agrees_with(ch_L01(6, -2, 2))
    assert limit_stabilization_check(0, -2, 2)[0]
    assert limit_stabilization_check(3, 0, 0)[0]


def test_fock_character_rows():
    s = ch_F(10, -3, 3)
    for m in range(-3, 4):
        base = m * (m + 1) // 2
        for d in range(11):
            assert s.coefficient(m, d) == (npartitions(d - base) if d >= base else 0)
    assert s.z_row(1)[0] == 0 and s.z_row(1)[1] == 1
    assert s.z_row(-1)[0] == 1


@pytest.mark.parametrize("args,expected", [((4, 2, 5), 1), ((0, 0, 7), 1), ((6, 2, 6), 2), ((6, 2, 5), 1)])
def test_restricted_partition_count(args, expected):
    assert restricted_partition_count(*args) == expected


def test_qbinomial_small_cases():
    assert fibonacci_polynomial_character(1).coeffs == {(0, 0): 1}
    three = fibonacci_polynomial_character(3)
    assert three.coeffs == {(0, 0): 1, (1, 1): 1, (1, 2): 1}
    for N in range(1, 13):
        assert qbinomial_identity_check(N)


def test_gaussian_stabilization():
    assert gaussian_stabilization_check(5, 10)
    # below the threshold the truncation is visibly different
    assert gaussian_binomial(5, 2).truncate(10) != pochhammer_inv(2, 10)


def test_w0_matches_fibonacci_enumeration():
    s = ch_W(0, 14, 0, 5)
    for cell in basis.fibonacci_cells(14):
        assert len(basis.enumerate_fibonacci(cell)) == s.coefficient(cell.n, cell.m)
