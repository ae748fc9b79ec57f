from fractions import Fraction

import pytest
from sympy.combinatorics import Permutation
from sympy.functions.combinatorial.numbers import partition as npartitions
from hypothesis import given, settings
from hypothesis import strategies as st

from fockbasis import fock
from fockbasis.fock import ElementaryVector, FockVector, enumerate_elementary, normalize, psi, psi_star

from oracles import to_list, wedge_psi, wedge_psi_star

VAC = ElementaryVector.vacuum()


def small_partitions():
    return st.integers(0, 8).flatmap(lambda n: st.sampled_from(list(fock.partitions(n))))


vectors = st.builds(ElementaryVector, st.integers(-3, 3), small_partitions())


def test_vacuum_layout():
    assert VAC.head() == []
    assert VAC.sea_start == 0
    assert VAC.energy() == 0
    assert str(VAC) == "|0; <=0>"


def test_head_and_sea():
    w = ElementaryVector(0, (2, 1))
    assert w.head() == [2, 0]
    assert w.sea_start == -2
    assert w.indices(5) == [2, 0, -2, -3, -4]
    assert w.occupied(-2) and not w.occupied(-1) and not w.occupied(1)
    assert -1 not in w.occupancy() and 0 in w.occupancy()


@pytest.mark.parametrize("m,parts,d", [(0, (), 0), (1, (), 1), (-1, (), 0), (2, (1,), 4), (-3, (2, 2), 7)])
def test_energy(m, parts, d):
    assert ElementaryVector(m, parts).energy() == d


def test_invalid_partitions():
    with pytest.raises(ValueError):
        ElementaryVector(0, (1, 2))
    with pytest.raises(ValueError):
        ElementaryVector(0, (1, 0))


def test_psi_on_vacuum():
    # psi_1 fills the first hole above the sea: charge 1, empty partition
    assert psi(1, FockVector.vacuum()) == FockVector.vacuum(1)
    assert psi(0, FockVector.vacuum()) == 0
    assert psi(3, FockVector.vacuum()) == FockVector.basis(ElementaryVector(1, (2,)))


def test_psi_star_on_vacuum():
    assert psi_star(0, FockVector.vacuum()) == FockVector.vacuum(-1)
    # removing psi_{-1} passes psi_0: one transposition
    assert psi_star(1, FockVector.vacuum()) == FockVector.basis(ElementaryVector(-1, (1,)), -1)
    assert psi_star(-1, FockVector.vacuum()) == 0


def test_psi_then_psi_star_moves_sea():
    # psi*_1 removes psi_{-1} from psi_1 ^ psi_0 ^ psi_{-1} ^ ... after passing two factors
    v = psi_star(1, psi(1, FockVector.vacuum()))
    assert v == FockVector.basis(ElementaryVector(0, (1, 1)))


def test_normalize():
    w, s = normalize([-1, 0], -2)
    assert (w, s) == (VAC, -1)
    assert normalize([0, -1], -2) == (VAC, 1)
    assert normalize([3, 3], -2) == (None, 0)
    assert normalize([], 0) == (VAC, 1)
    with pytest.raises(ValueError):
        normalize([-2], -2)


@given(st.lists(st.integers(-6, 8), unique=True, max_size=6), st.integers(-12, -7))
def test_normalize_sign_is_permutation_parity(idx, sea):
    w, s = normalize(idx, sea)
    assert to_list(w, sea) == sorted(idx, reverse=True)
    expected = Permutation(
        [sorted(idx, reverse=True).index(i) for i in idx]
    ).signature() if idx else 1
    assert s == expected


@given(vectors)
def test_json_round_trip(w):
    assert ElementaryVector.from_json(w.to_json()) == w
    v = FockVector({w: Fraction(3, 7), VAC: -2})
    assert FockVector.from_json(v.to_json()) == v


@settings(max_examples=300)
@given(vectors, st.integers(-8, 8))
def test_psi_matches_list_oracle(w, i):
    assert dict(psi(i, FockVector.basis(w)).items()) == wedge_psi(i, {w: 1})
    assert dict(psi_star(i, FockVector.basis(w)).items()) == wedge_psi_star(i, {w: 1})


@settings(max_examples=200)
@given(vectors, st.integers(-6, 6), st.integers(-6, 6))
def test_canonical_anticommutators(w, i, j):
    v = FockVector.basis(w)
    assert psi(i, psi(j, v)) + psi(j, psi(i, v)) == 0
    assert psi_star(i, psi_star(j, v)) + psi_star(j, psi_star(i, v)) == 0
    anti = psi(i, psi_star(j, v)) + psi_star(j, psi(i, v))
    assert anti == (v if i + j == 0 else FockVector())


@given(vectors, st.integers(-6, 6))
def test_charge_and_energy_shifts(w, i):
    for u, _ in psi(i, FockVector.basis(w)):
        assert u.charge == w.charge + 1 and u.energy() == w.energy() + i
    for u, _ in psi_star(i, FockVector.basis(w)):
        assert u.charge == w.charge - 1 and u.energy() == w.energy() + i


def test_vector_arithmetic():
    a = ElementaryVector(0, (1,))
    v = FockVector({a: 2, VAC: Fraction(1, 2)})
    assert v - v == 0
    assert (v * 0) == 0
    assert (3 * v).coefficient_of(a) == 6
    assert fock.scale(Fraction(1, 2), v).coefficient_of(VAC) == Fraction(1, 4)
    assert fock.add(v, -v) == FockVector()
    assert v.support() == sorted([a, VAC])
    with pytest.raises(TypeError):
        FockVector({a: 0.5})


@pytest.mark.parametrize("m", range(-3, 4))
def test_enumeration_counts_partition_oracle(m):
    base = m * (m + 1) // 2
    for d in range(16):
        expected = npartitions(d - base) if d >= base else 0
        found = enumerate_elementary(m, d)
        assert len(found) == expected
        assert len(set(found)) == len(found)
        assert all(w.charge == m and w.energy() == d for w in found)


def test_normalize_reorders_with_plus_sign():
    # psi_0 ^ psi_{-1} ^ psi_3 ^ psi_{-3} ^ (sea <= -4): psi_3 passes two factors
    w, s = normalize([0, -1, 3, -3], -4)
    assert s == 1
    assert w.indices(5) == [3, 0, -1, -3, -4] and w.charge == 0


def test_charge_of_extremal_wedge():
    # psi_3 ^ psi_1 ^ psi_{-1} ^ psi_{-3} ^ psi_{-4} ^ ...
    w, s = normalize([3, 1, -1], -3)
    assert fock.charge(w) == 0 and s == 1
    assert fock.energy(ElementaryVector(0, (1,))) == 1
    assert fock.coefficient_of(FockVector.vacuum(), ElementaryVector(1, ())) == 0
