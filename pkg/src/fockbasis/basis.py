"""
Fibonacci-1 monomials in the e-modes, semi-infinite monomials, and exact
verification of the monomial bases of the level-one modules.

A sector is the charge of the wedge subspace carrying the module: sector 0
holds L(0,1), sector 1 holds L(1,1).  In sector s the extremal vector of tail
j is ``vacuum_vector(j, s)``, identified with the semi-infinite product
e_{t} e_{t+2} e_{t+4} ... where t = 1 - s - 2j.  Monomials applied to it use
indices <= t - 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache
from typing import Iterator, Sequence

from .affine import apply_e, apply_lambda, h0_weight, lambda_even_kernel_check, vacuum_vector
from .fock import ElementaryVector, FockVector, enumerate_elementary, from_indices
from .linalg import rank
from .qseries import ch_L01, ch_L11, ch_W


def tail_start(j: int, sector: int = 0) -> int:
    """First index of the semi-infinite tail identified with vacuum_vector(j, sector)."""
    return 1 - sector - 2 * j


def index_bound(j: int, sector: int = 0) -> int:
    """Largest e-mode index allowed in a monomial acting on vacuum_vector(j, sector)."""
    return tail_start(j, sector) - 2


class IndexClash(ValueError):
    """Two e-modes of a monomial were assigned the same target index."""


@dataclass(frozen=True, order=True)
class FibonacciMonomial:
    """e_{i1} e_{i2} ... e_{ik} with i1 < i2 < ... and consecutive gaps >= 2."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if any(b - a < 2 for a, b in zip(idx, idx[1:])):
            raise ValueError(f"not a Fibonacci-1 monomial: {idx}")

    @property
    def deg_z(self) -> int:
        return len(self.indices)

    @property
    def deg_q(self) -> int:
        return -sum(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return "".join(f"e({i})" for i in self.indices) or "1"


@dataclass(frozen=True)
class BidegreeCell:
    """Monomials of length n with index sum -m acting on tail j of a sector."""

    n: int
    m: int
    j: int = 0
    sector: int = 0

    @property
    def bound(self) -> int:
        return index_bound(self.j, self.sector)

    @property
    def min_deg_q(self) -> int:
        # indices bound, bound - 2, ..., bound - 2(n - 1)
        n = self.n
        return -(n * self.bound - n * (n - 1))


def _decreasing_sequences(n: int, total: int, upper: int, gap: int) -> Iterator[tuple[int, ...]]:
    """Sequences x1 > x2 > ... > xn (x_r - x_{r+1} >= gap) with x1 <= upper summing to total."""
    if n == 0:
        if total == 0:
            yield ()
        return
    # the remaining n - 1 entries sit at most at x - gap, x - 2gap, ...
    tri = gap * n * (n - 1) // 2
    if total > n * upper - tri:
        return
    lo = -((-(total + tri)) // n)
    for x in range(upper, lo - 1, -1):
        for rest in _decreasing_sequences(n - 1, total - x, x - gap, gap):
            yield (x,) + rest


def reflected_lex_key(mon: FibonacciMonomial) -> tuple[int, ...]:
    """Sort key realizing the reflected lexicographic order.

    The monomial e_{-i_n} ... e_{-i_1} (i_1 < ... < i_n) corresponds to the
    partition (i_n, ..., i_1); partitions are compared starting from the
    smallest part, and the larger smallest part wins.  In this orientation the
    leading vector of a monomial never occurs in the expansion of a smaller
    monomial of the same cell.
    """
    return tuple(-i for i in sorted(mon.indices, reverse=True))


def reflected_lex_compare(a: FibonacciMonomial, b: FibonacciMonomial) -> int:
    """-1, 0, 1 as a <, ==, > b."""
    if len(a) != len(b) or a.deg_q != b.deg_q:
        raise ValueError("reflected lexicographic order compares monomials of one bidegree")
    ka, kb = reflected_lex_key(a), reflected_lex_key(b)
    return (ka > kb) - (ka < kb)


def enumerate_fibonacci(cell: BidegreeCell) -> list[FibonacciMonomial]:
    """All monomials of the cell, largest first in reflected-lex order."""
    mons = [
        FibonacciMonomial(tuple(reversed(seq)))
        for seq in _decreasing_sequences(cell.n, -cell.m, cell.bound, 2)
    ]
    return sorted(mons, key=cmp_to_key(reflected_lex_compare), reverse=True)


def enumerate_unrestricted(cell: BidegreeCell) -> list[tuple[int, ...]]:
    """All multisets of n indices <= bound with sum -m (e-modes commute)."""
    return [tuple(reversed(seq)) for seq in _decreasing_sequences(cell.n, -cell.m, cell.bound, 0)]


def _check_bound(indices: Sequence[int], j: int, sector: int) -> None:
    b = index_bound(j, sector)
    if any(i > b for i in indices):
        raise ValueError(f"indices {tuple(indices)} exceed the bound {b} for tail {j}, sector {sector}")


@lru_cache(maxsize=None)
def _apply_indices(indices: tuple[int, ...], j: int, sector: int) -> FockVector:
    if not indices:
        return FockVector.basis(vacuum_vector(j, sector))
    # rightmost factor acts first; the e-modes commute
    return apply_e(indices[0], _apply_indices(indices[1:], j, sector))


def apply_monomial(mon: FibonacciMonomial | Sequence[int], j: int = 0, sector: int = 0) -> FockVector:
    indices = tuple(mon.indices if isinstance(mon, FibonacciMonomial) else sorted(mon))
    _check_bound(indices, j, sector)
    return _apply_indices(indices, j, sector)


def leading_vector(mon: FibonacciMonomial | Sequence[int], j: int = 0, sector: int = 0) -> ElementaryVector:
    """Elementary vector reached by letting the r-th largest index act on psi_{-2j-2r}.

    e_i moves psi_y to psi_{y - 2i - 1}.  Raises IndexClash when a target is
    already occupied, which is what a gap of 1 between indices produces.
    """
    indices = sorted(mon.indices if isinstance(mon, FibonacciMonomial) else mon, reverse=True)
    _check_bound(indices, j, sector)
    vac = vacuum_vector(j, sector)
    floor = min(vac.sea_start + 1, -2 * j - 2 * len(indices))
    occ = set(vac.window(floor))
    for r, i in enumerate(indices):
        src = -2 * j - 2 * r
        tgt = src - 2 * i - 1
        if src not in occ:
            raise IndexClash(f"source index {src} is empty")
        if tgt in occ:
            raise IndexClash(f"e({i}) sends psi({src}) onto occupied psi({tgt})")
        occ.remove(src)
        occ.add(tgt)
    return from_indices(sector, sorted(occ, reverse=True))


@dataclass
class CellReport:
    cell: BidegreeCell
    count: int
    rank: int
    triangular: bool
    character_coeff: int

    @property
    def ok(self) -> bool:
        return self.count == self.rank == self.character_coeff and self.triangular

    def to_json(self) -> dict:
        return {
            "sector": self.cell.sector,
            "tail": self.cell.j,
            "deg_z": self.cell.n,
            "deg_q": self.cell.m,
            "count": self.count,
            "rank": self.rank,
            "triangular": self.triangular,
            "character_coeff": self.character_coeff,
        }


def triangularity(mons: Sequence[FibonacciMonomial], vectors: Sequence[FockVector], j: int, sector: int) -> bool:
    """Leading vectors distinct, present, and absent from every smaller monomial's expansion.

    `mons` must be sorted largest first.
    """
    leads = [leading_vector(m, j, sector) for m in mons]
    if len(set(leads)) != len(leads):
        return False
    for c, q in enumerate(leads):
        if vectors[c].coefficient_of(q) == 0:
            return False
        if any(vectors[r].coefficient_of(q) != 0 for r in range(c + 1, len(mons))):
            return False
    return True


def w_character_coeff(cell: BidegreeCell) -> int:
    """Multiplicity predicted for the cell by the basic-subspace characters.

    Sector 0 reads sum_{n >= j} z^n q^{n^2}/(q)_{n-j} at z^{j+n} q^{j^2+m}.
    In sector 1 the index bound is one lower, so shifting every index by
    2j + 1 lands in the sector-0, tail-0 cell of degree m - n(2j + 1).
    """
    j, n = cell.j, cell.n
    if cell.sector == 0:
        zp, qp, tail = j + n, j * j + cell.m, j
    else:
        zp, qp, tail = n, cell.m - n * (2 * j + 1), 0
    if qp < 0:
        return 0
    return ch_W(tail, qp, zp, zp).coefficient(zp, qp)


def independence_check(cell: BidegreeCell) -> CellReport:
    mons = enumerate_fibonacci(cell)
    vectors = [apply_monomial(m, cell.j, cell.sector) for m in mons]
    r = rank(dict(v.items()) for v in vectors)
    tri = triangularity(mons, vectors, cell.j, cell.sector)
    coeff = w_character_coeff(cell)
    return CellReport(cell, len(mons), r, tri, coeff)


@dataclass
class SpanReport:
    cell: BidegreeCell
    all_count: int
    all_rank: int
    fibonacci_rank: int

    @property
    def ok(self) -> bool:
        return self.all_rank == self.fibonacci_rank

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "sector": self.cell.sector,
            "tail": self.cell.j,
            "deg_z": self.cell.n,
            "deg_q": self.cell.m,
            "monomials": self.all_count,
            "rank_all": self.all_rank,
            "rank_fibonacci": self.fibonacci_rank,
        }


def spanning_check(n: int, m: int, j: int = 0, sector: int = 0) -> SpanReport:
    """Rank of all length-n e-monomials vs. rank of the Fibonacci-1 ones at one bidegree."""
    cell = BidegreeCell(n, m, j, sector)
    every = enumerate_unrestricted(cell)
    all_rank = rank(dict(apply_monomial(idx, j, sector).items()) for idx in every)
    fib_rank = rank(dict(apply_monomial(mon, j, sector).items()) for mon in enumerate_fibonacci(cell))
    return SpanReport(cell, len(every), all_rank, fib_rank)


@dataclass(frozen=True)
class SemiInfiniteMonomial:
    """head * e_t e_{t+2} e_{t+4} ... with t = tail_start(tail, sector).

    Canonical: the head's largest index is at most t - 3, so it cannot be
    absorbed into the tail.
    """

    tail: int
    head: FibonacciMonomial = field(default_factory=FibonacciMonomial)
    sector: int = 0

    def __post_init__(self):
        if self.head.indices and self.head.indices[-1] > tail_start(self.tail, self.sector) - 3:
            raise ValueError("head index absorbable into the tail; use SemiInfiniteMonomial.canonical")

    @classmethod
    def canonical(cls, indices: Sequence[int], tail: int, sector: int = 0) -> SemiInfiniteMonomial:
        """Absorb head indices into the tail from the right while they continue it."""
        idx = list(sorted(indices))
        while idx and idx[-1] == tail_start(tail, sector) - 2:
            idx.pop()
            tail += 1
        return cls(tail, FibonacciMonomial(tuple(idx)), sector)

    @property
    def weight(self) -> int:
        """z-exponent: h_0 = 2 * weight + sector."""
        return self.tail + len(self.head)

    def indices(self, count: int) -> list[int]:
        out = list(self.head.indices)
        t = tail_start(self.tail, self.sector)
        while len(out) < count:
            out.append(t)
            t += 2
        return out[:count]

    def vector(self) -> FockVector:
        return apply_monomial(self.head, self.tail, self.sector)

    def energy(self) -> int:
        return vacuum_vector(self.tail, self.sector).energy() + sum(-2 * i - 1 for i in self.head.indices)

    def __str__(self) -> str:
        shown = " ".join(f"e({i})" for i in self.indices(len(self.head) + 3))
        return f"{shown} ..."


def _min_energy(weight: int, tail: int, sector: int) -> int:
    n = weight - tail
    b = tail_start(tail, sector) - 3
    return vacuum_vector(tail, sector).energy() + sum(-2 * (b - 2 * r) - 1 for r in range(n))


def enumerate_semi_infinite(weight: int, energy: int, sector: int = 0) -> list[SemiInfiniteMonomial]:
    """Canonical semi-infinite monomials of h_0-weight 2*weight + sector and wedge energy `energy`."""
    out = []
    tail = weight
    # below the top tail, the least energy reachable grows by 2 per step down
    while tail == weight or _min_energy(weight, tail, sector) <= energy:
        n = weight - tail
        rest = energy - vacuum_vector(tail, sector).energy()
        # each head index i contributes -2i - 1
        if (rest + n) % 2 == 0:
            total = -(rest + n) // 2
            for seq in _decreasing_sequences(n, total, tail_start(tail, sector) - 3, 2):
                out.append(SemiInfiniteMonomial(tail, FibonacciMonomial(tuple(reversed(seq))), sector))
        tail -= 1
    return out


def weight_space(weight: int, energy: int, sector: int = 0) -> list[ElementaryVector]:
    """Elementary vectors of charge `sector`, given energy and h_0 = 2*weight + sector."""
    return [w for w in enumerate_elementary(sector, energy) if h0_weight(w) == 2 * weight + sector]


def even_lambda_kernel_dim(weight: int, energy: int, sector: int = 0) -> int:
    """dim of the joint kernel of Lambda_2, Lambda_4, ... on one weight space.

    Lambda_{2k} lowers the energy by 2k, so k <= energy/2 suffices.
    """
    domain = weight_space(weight, energy, sector)
    ks = range(1, energy // 2 + 1)
    rows = []
    for w in domain:
        v = FockVector.basis(w)
        row = {}
        for k in ks:
            for u, c in apply_lambda(2 * k, v).items():
                row[(k, u)] = c
        rows.append(row)
    return len(domain) - rank(rows)


def module_character_coeff(weight: int, energy: int, sector: int = 0) -> int:
    """Multiplicity predicted by the module character at h_0-weight and wedge energy.

    On the module the wedge energy is 2 L_0 - h_0/2 (sector 0), so the
    q-exponent of sum z^n q^{n^2}/(q)_inf is (energy + weight)/2; in sector 1
    it is (energy + weight - 1)/2 for sum z^n q^{n^2+n}/(q)_inf.
    """
    num = energy + weight - sector
    if num % 2 or num < 0:
        return 0
    qp = num // 2
    ch = ch_L01 if sector == 0 else ch_L11
    return ch(qp, weight, weight).coefficient(weight, qp)


@dataclass
class GlobalCell:
    sector: int
    weight: int
    energy: int
    count: int
    rank: int
    in_kernel: bool
    kernel_dim: int
    character_coeff: int

    @property
    def ok(self) -> bool:
        return self.in_kernel and self.count == self.rank == self.kernel_dim == self.character_coeff

    def to_json(self) -> dict:
        return {
            "sector": self.sector,
            "weight": self.weight,
            "energy": self.energy,
            "count": self.count,
            "rank": self.rank,
            "in_kernel": self.in_kernel,
            "kernel_dim": self.kernel_dim,
            "triangular": None,
            "character_coeff": self.character_coeff,
            "ok": self.ok,
        }


def global_cell(weight: int, energy: int, sector: int = 0) -> GlobalCell:
    mons = enumerate_semi_infinite(weight, energy, sector)
    vectors = [m.vector() for m in mons]
    r = rank(dict(v.items()) for v in vectors)
    k_max = max(energy // 2, 1)
    in_kernel = all(lambda_even_kernel_check(v, k_max) for v in vectors)
    return GlobalCell(
        sector,
        weight,
        energy,
        len(mons),
        r,
        in_kernel,
        even_lambda_kernel_dim(weight, energy, sector),
        module_character_coeff(weight, energy, sector),
    )


def occupied_weights(energy: int, sector: int = 0) -> list[int]:
    weights = {(h0_weight(w) - sector) // 2 for w in enumerate_elementary(sector, energy)}
    return sorted(weights)


@dataclass
class GlobalReport:
    sector: int
    max_energy: int
    cells: list[GlobalCell]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    def to_json(self) -> dict:
        return {
            "sector": self.sector,
            "max_energy": self.max_energy,
            "cells": [c.to_json() for c in self.cells],
            "ok": self.ok,
        }


def global_basis_check(max_energy: int, sector: int = 0) -> GlobalReport:
    """Every weight space of energy <= max_energy in the charge-`sector` wedge space."""
    cells = [
        global_cell(weight, d, sector)
        for d in range(max_energy + 1)
        for weight in occupied_weights(d, sector)
    ]
    return GlobalReport(sector, max_energy, cells)


def fibonacci_cells(max_deg_q: int, j: int = 0, sector: int = 0) -> list[BidegreeCell]:
    """Nonempty-range cells (n, m) with deg_q m <= max_deg_q; empty ones where n is too long are skipped."""
    cells = []
    for m in range(max_deg_q + 1):
        n = 0
        while BidegreeCell(n, m, j, sector).min_deg_q <= m:
            cells.append(BidegreeCell(n, m, j, sector))
            n += 1
    return cells


