"""
Semi-infinite wedge space.

An elementary wedge psi_{k0} ^ psi_{k1} ^ ... with k0 > k1 > ... and
k_i = m - i for i large is stored as its charge m together with the
partition lambda_{i+1} = k_i - m + i.  Occupied indices above the Dirac
sea form the "head"; every index <= charge - len(partition) is occupied.

Signs: inserting or removing an index at 0-based position p (counted from
the largest occupied index) contributes (-1)**p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence


def parity_sign(n: int) -> int:
    return -1 if n & 1 else 1


@dataclass(frozen=True, order=True)
class ElementaryVector:
    charge: int
    partition: tuple[int, ...] = ()
    # derived, cached: these vectors are hashed and probed in every operator action
    _head: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _head_set: frozenset = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parts = self.partition
        if not isinstance(parts, tuple):
            object.__setattr__(self, "partition", parts := tuple(parts))
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        m = self.charge
        head = tuple(m - i + p for i, p in enumerate(parts))
        object.__setattr__(self, "_head", head)
        object.__setattr__(self, "_head_set", frozenset(head))
        object.__setattr__(self, "_hash", hash((m, parts)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def vacuum(cls, charge: int = 0) -> ElementaryVector:
        return cls(charge, ())

    @property
    def sea_start(self) -> int:
        """Every index <= sea_start is occupied."""
        return self.charge - len(self.partition)

    def head(self) -> list[int]:
        """Occupied indices above the sea, in decreasing order."""
        return list(self._head)

    @property
    def top(self) -> int:
        """Largest occupied index."""
        return self.charge + self.partition[0] if self.partition else self.charge

    def occupied(self, i: int) -> bool:
        if i <= self.sea_start:
            return True
        return i in self._head_set

    def occupancy(self) -> IndexOccupancy:
        return IndexOccupancy(tuple(self.head()), self.sea_start)

    def indices(self, count: int) -> list[int]:
        """The first `count` indices k0 > k1 > ... of the wedge."""
        m, parts = self.charge, self.partition
        return [m - i + (parts[i] if i < len(parts) else 0) for i in range(count)]

    def window(self, floor: int) -> list[int]:
        """All occupied indices >= floor, decreasing.  Requires floor <= sea_start + 1."""
        return self.head() + list(range(self.sea_start, floor - 1, -1))

    def energy(self) -> int:
        m = self.charge
        return m * (m + 1) // 2 + sum(self.partition)

    def to_json(self) -> dict:
        return {"charge": self.charge, "partition": list(self.partition)}

    @classmethod
    def from_json(cls, data: Mapping) -> ElementaryVector:
        return cls(int(data["charge"]), tuple(int(p) for p in data["partition"]))

    def __str__(self) -> str:
        shown = ", ".join(str(k) for k in self.head())
        sea = self.sea_start
        return f"|{self.charge}; {shown + ', ' if shown else ''}<={sea}>"


@dataclass(frozen=True)
class IndexOccupancy:
    """Finite exceptional head plus sea boundary; all indices <= sea_start are occupied."""

    head: tuple[int, ...]
    sea_start: int

    def __contains__(self, i: int) -> bool:
        return i <= self.sea_start or i in self.head


def charge(v: ElementaryVector) -> int:
    return v.charge


def energy(v: ElementaryVector) -> int:
    return v.energy()


def from_indices(charge: int, desc: Sequence[int]) -> ElementaryVector:
    """Canonical vector from a decreasing list of occupied indices.

    The indices below desc[-1] must all be occupied, with the sea starting
    at charge - len(desc).
    """
    parts = [k - charge + i for i, k in enumerate(desc)]
    while parts and parts[-1] == 0:
        parts.pop()
    return ElementaryVector(charge, tuple(parts))


def normalize(indices: Sequence[int], sea_start: int) -> tuple[ElementaryVector | None, int]:
    """Canonicalize the wedge  psi_{indices[0]} ^ psi_{indices[1]} ^ ... ^ (sea <= sea_start).

    Returns the elementary vector and the sign of the permutation sorting the
    presented order into decreasing order.  A repeated head index gives
    ``(None, 0)``: the wedge vanishes.
    """
    head = list(indices)
    for i in head:
        if i <= sea_start:
            raise ValueError(f"head index {i} collides with the sea at or below {sea_start}")
    if len(set(head)) != len(head):
        return None, 0
    inversions = sum(1 for a in range(len(head)) for b in range(a + 1, len(head)) if head[a] < head[b])
    desc = sorted(head, reverse=True)
    return from_indices(sea_start + len(desc), desc), parity_sign(inversions)


# elementary actions: each returns (vector, sign) or None


def _psi(i: int, w: ElementaryVector):
    if w.occupied(i):
        return None
    desc = w.head()
    p = sum(1 for k in desc if k > i)
    desc.insert(p, i)
    return from_indices(w.charge + 1, desc), parity_sign(p)


def _psi_star(i: int, w: ElementaryVector):
    a = -i
    if not w.occupied(a):
        return None
    desc = w.window(min(a, w.sea_start + 1))
    p = desc.index(a)
    del desc[p]
    return from_indices(w.charge - 1, desc), parity_sign(p)


def hop(target: int, source: int, w: ElementaryVector):
    """psi_target psi*_{-source} on w for target != source: move an occupied index."""
    if not w.occupied(source) or w.occupied(target):
        return None
    desc = w.window(min(source, w.sea_start + 1))
    lo, hi = sorted((source, target))
    between = sum(1 for k in desc if lo < k < hi)
    desc.remove(source)
    desc.append(target)
    desc.sort(reverse=True)
    return from_indices(w.charge, desc), parity_sign(between)


Coefficient = Rational


class FockVector:
    """Finite exact linear combination of elementary vectors.

    Treated as immutable.  Coefficients are any exact rationals (int or
    Fraction); zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ElementaryVector, Coefficient] | Iterable | None = None):
        acc: dict[ElementaryVector, Coefficient] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                if not isinstance(c, Rational):
                    raise TypeError(f"coefficient {c!r} is not an exact rational")
                acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c != 0}

    @classmethod
    def basis(cls, w: ElementaryVector, coeff: Coefficient = 1) -> FockVector:
        return cls({w: coeff})

    @classmethod
    def vacuum(cls, charge: int = 0) -> FockVector:
        return cls.basis(ElementaryVector.vacuum(charge))

    @classmethod
    def _raw(cls, terms: dict) -> FockVector:
        v = cls.__new__(cls)
        v._terms = terms
        return v

    def __iter__(self) -> Iterator[tuple[ElementaryVector, Coefficient]]:
        return iter(sorted(self._terms.items()))

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FockVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def coefficient_of(self, w: ElementaryVector) -> Coefficient:
        return self._terms.get(w, 0)

    def support(self) -> list[ElementaryVector]:
        return sorted(self._terms)

    def __add__(self, other: FockVector) -> FockVector:
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FockVector._raw(out)

    def __neg__(self) -> FockVector:
        return FockVector._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: FockVector) -> FockVector:
        return self + (-other)

    def __mul__(self, scalar: Coefficient) -> FockVector:
        if not isinstance(scalar, Rational):
            return NotImplemented
        if scalar == 0:
            return FockVector()
        return FockVector._raw({w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    def map_linear(self, act: Callable[[ElementaryVector], Iterable[tuple[ElementaryVector, Coefficient]]]) -> FockVector:
        """Extend an action on elementary vectors linearly."""
        out: dict[ElementaryVector, Coefficient] = {}
        for w, c in self._terms.items():
            for u, d in act(w):
                s = out.get(u, 0) + c * d
                if s:
                    out[u] = s
                else:
                    out.pop(u, None)
        return FockVector._raw(out)

    def to_json(self) -> list[dict]:
        return [{"term": w.to_json(), "coeff": str(Fraction(c))} for w, c in self]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> FockVector:
        return cls((ElementaryVector.from_json(d["term"]), Fraction(d["coeff"])) for d in data)

    def __repr__(self) -> str:
        if not self._terms:
            return "FockVector(0)"
        return "FockVector(" + " + ".join(f"{c}*{w}" for w, c in self) + ")"


def add(v: FockVector, w: FockVector) -> FockVector:
    return v + w


def scale(c: Coefficient, v: FockVector) -> FockVector:
    return v * c


def coefficient_of(v: FockVector, w: ElementaryVector) -> Coefficient:
    return v.coefficient_of(w)


def _single(result):
    return () if result is None else (result,)


def psi(i: int, v: FockVector) -> FockVector:
    """Wedge with psi_i on the left."""
    return v.map_linear(lambda w: _single(_psi(i, w)))


def psi_star(i: int, v: FockVector) -> FockVector:
    """Superderivation d/d psi_{-i}."""
    return v.map_linear(lambda w: _single(_psi_star(i, w)))


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in reverse lexicographic order."""
    if n == 0:
        yield ()
        return
    if largest is None or largest > n:
        largest = n
    for first in range(largest, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def enumerate_elementary(m: int, d: int) -> list[ElementaryVector]:
    """All elementary vectors of charge m and energy d."""
    base = m * (m + 1) // 2
    if d < base:
        return []
    return [ElementaryVector(m, lam) for lam in partitions(d - base)]
