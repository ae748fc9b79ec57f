import itertools

import pytest
import sympy

from fockbasis import basis
from fockbasis.affine import apply_e, apply_lambda, vacuum_vector
from fockbasis.basis import (
    BidegreeCell, FibonacciMonomial, IndexClash, SemiInfiniteMonomial, apply_monomial,
    enumerate_fibonacci, enumerate_semi_infinite, enumerate_unrestricted, global_basis_check,
    global_cell, independence_check, leading_vector, reflected_lex_compare, spanning_check,
)
from fockbasis.fock import ElementaryVector, FockVector
from fockbasis.qseries import ch_W

from oracles import gap_two_sets

VAC = FockVector.vacuum()


def test_monomial_validation():
    assert FibonacciMonomial((-5, -3, -1)).deg_q == 9
    with pytest.raises(ValueError):
        FibonacciMonomial((-3, -2))


def test_apply_monomial_examples():
    assert apply_monomial((), 0) == VAC
    assert apply_monomial([-1]) == apply_e(-1, VAC)
    assert apply_monomial(FibonacciMonomial((-3, -1))) == apply_e(-3, apply_e(-1, VAC))
    with pytest.raises(ValueError):
        apply_monomial([0])


def test_e_modes_commute_on_vacuum():
    for a, b in itertools.combinations(range(-6, 0), 2):
        assert apply_e(a, apply_e(b, VAC)) == apply_e(b, apply_e(a, VAC))


def test_leading_vector_examples():
    assert leading_vector(FibonacciMonomial(())) == ElementaryVector(0, ())
    assert leading_vector(FibonacciMonomial((-1,))) == ElementaryVector(0, (1,))
    assert leading_vector(FibonacciMonomial((-3,))) == ElementaryVector(0, (5,))
    for mon in [FibonacciMonomial((-3, -1)), FibonacciMonomial((-5, -3, -1)), FibonacciMonomial((-6, -2))]:
        q = leading_vector(mon)
        assert apply_monomial(mon).coefficient_of(q) != 0


def test_gap_one_clashes():
    with pytest.raises(IndexClash):
        leading_vector((-2, -1))
    with pytest.raises(IndexClash):
        leading_vector((-4, -3, -1))
    assert apply_monomial((-1, -1)) == 0


def test_leading_vectors_valid_on_all_cells():
    for j in (-1, 0, 1):
        for sector in (0, 1):
            for cell in basis.fibonacci_cells(10, j, sector):
                leads = [leading_vector(m, j, sector) for m in enumerate_fibonacci(cell)]
                assert len(set(leads)) == len(leads)


def test_reflected_lex():
    a, b = FibonacciMonomial((-5, -1)), FibonacciMonomial((-4, -2))
    assert reflected_lex_compare(a, b) == -reflected_lex_compare(b, a) != 0
    assert reflected_lex_compare(a, a) == 0
    with pytest.raises(ValueError):
        reflected_lex_compare(a, FibonacciMonomial((-3,)))
    mons = enumerate_fibonacci(BidegreeCell(2, 10))
    assert all(reflected_lex_compare(x, y) == 1 for x, y in zip(mons, mons[1:]))


@pytest.mark.parametrize("n,m,count", [(1, 3, 1), (2, 6, 2), (0, 0, 1), (2, 4, 1), (2, 3, 0)])
def test_independence_examples(n, m, count):
    r = independence_check(BidegreeCell(n, m))
    assert (r.count, r.rank) == (count, count)
    assert r.ok


def test_enumeration_matches_brute_force():
    for n in range(5):
        for m in range(15):
            got = enumerate_fibonacci(BidegreeCell(n, m))
            assert sorted(tuple(-i for i in mon.indices) for mon in got) == sorted(
                tuple(reversed(t)) for t in gap_two_sets(m, n, m)
            )


@pytest.mark.parametrize("j", [-2, -1, 1, 2])
def test_sector_shift(j):
    s = ch_W(j, 14 + j * j, j, j + 5)
    for cell in basis.fibonacci_cells(10, j):
        assert len(enumerate_fibonacci(cell)) == s.coefficient(j + cell.n, j * j + cell.m)
        assert len(enumerate_fibonacci(cell)) == len(enumerate_fibonacci(BidegreeCell(cell.n, cell.m - cell.n * 2 * j)))


@pytest.mark.parametrize("n,m,ranks", [(2, 2, (0, 0)), (2, 4, (1, 1)), (1, 5, (1, 1)), (1, 1, (1, 1))])
def test_spanning_examples(n, m, ranks):
    r = spanning_check(n, m)
    assert (r.all_rank, r.fibonacci_rank) == ranks


def test_spanning_rank_against_sympy():
    cell = BidegreeCell(3, 12)
    every = enumerate_unrestricted(cell)
    vecs = [apply_monomial(i) for i in every]
    cols = sorted({w for v in vecs for w, _ in v})
    mat = sympy.Matrix([[v.coefficient_of(w) for w in cols] for v in vecs])
    assert spanning_check(3, 12).all_rank == mat.rank()


def test_semi_infinite_examples():
    assert enumerate_semi_infinite(0, 0) == [SemiInfiniteMonomial(0)]
    one = enumerate_semi_infinite(1, 1)
    assert one == [SemiInfiniteMonomial(1)]
    assert SemiInfiniteMonomial.canonical([-1], 0) == SemiInfiniteMonomial(1)
    assert one[0].vector() == apply_e(-1, VAC)
    with pytest.raises(ValueError):
        SemiInfiniteMonomial(0, FibonacciMonomial((-1,)))


def test_semi_infinite_vectors_in_even_kernel():
    for d in range(7):
        for w in range(-3, 4):
            for mon in enumerate_semi_infinite(w, d):
                v = mon.vector()
                assert all(apply_lambda(2 * k, v) == 0 for k in range(1, 5))
                assert all(u.energy() == d for u, _ in v)


def test_global_cells_small():
    c = global_cell(0, 0)
    assert (c.count, c.rank, c.kernel_dim, c.character_coeff) == (1, 1, 1, 1)
    assert global_basis_check(6, 0).ok
    assert global_basis_check(6, 1).ok


def test_vacuum_vectors_are_tails():
    for j in range(-2, 3):
        for sector in (0, 1):
            assert SemiInfiniteMonomial(j, sector=sector).vector() == FockVector.basis(vacuum_vector(j, sector))
