"""
Level-one action of a_infinity and of affine sl2 on the wedge space.

E_{ij} acts as :psi_i psi*_{-j}:, i.e. it moves the occupied index j to i.
The sl2 modes come from folding Z into two residues:

    e_k = sum_s E_{2s+1, 2s+2k+2}
    f_k = sum_s E_{2s+2, 2s+2k+1}
    h_k = sum_s E_{2s+1, 2s+2k+1} - E_{2s+2, 2s+2k+2}
    Lambda_j = sum_s E_{s, s+j}

Every such sum is evaluated exactly against one elementary vector at a time:
a summand E_{a,b} with a != b survives only if a lies above the sea and b
is at or below the largest occupied index, which leaves a finite range of s.
The central element (c, K) acts as the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from . import fock
from .fock import ElementaryVector, FockVector, from_indices

MODE_KINDS = ("E", "Lambda", "e", "f", "h", "K")


class Mode(NamedTuple):
    """A represented Lie algebra element: E(i,j), Lambda(j), e(k), f(k), h(k) or K."""

    kind: str
    i: int = 0
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "E":
            return f"E({self.i},{self.j})"
        if self.kind == "K":
            return "K"
        return f"{self.kind}({self.i})"


def E(i: int, j: int) -> Mode:
    return Mode("E", i, j)


def Lam(j: int) -> Mode:
    return Mode("Lambda", j)


def e(k: int) -> Mode:
    return Mode("e", k)


def f(k: int) -> Mode:
    return Mode("f", k)


def h(k: int) -> Mode:
    return Mode("h", k)


K = Mode("K")


def parse_mode(text: str) -> Mode:
    """Inverse of str(Mode)."""
    text = text.strip().replace("−", "-")
    if text in ("K", "c"):
        return K
    kind, _, rest = text.partition("(")
    args = [int(a) for a in rest.rstrip(")").split(",")]
    if kind not in MODE_KINDS:
        raise ValueError(f"unknown mode {text!r}")
    return Mode(kind, *args)


# (coefficient, stride, target offset, source offset): sum_s E_{stride*s + x, stride*s + y}
def _families(mode: Mode) -> tuple[tuple[int, int, int, int], ...]:
    kind, k = mode.kind, mode.i
    if kind == "e":
        return ((1, 2, 1, 2 * k + 2),)
    if kind == "f":
        return ((1, 2, 2, 2 * k + 1),)
    if kind == "h":
        return ((1, 2, 1, 2 * k + 1), (-1, 2, 2, 2 * k + 2))
    if kind == "Lambda":
        return ((1, 1, 0, k),)
    raise ValueError(f"{mode} is not a strided sum")


def _diagonal_value(i: int, w: ElementaryVector) -> int:
    # normal ordering subtracts the vacuum occupation of indices <= 0
    return int(w.occupied(i)) - int(i <= 0)


def _family_terms(stride: int, x: int, y: int, w: ElementaryVector):
    if x == y:
        lo, hi = min(w.sea_start, 0), max(w.top, 0)
        total = 0
        for s in range(-((x - lo - 1) // stride), (hi - x) // stride + 1):
            total += _diagonal_value(stride * s + x, w)
        return [(w, total)] if total else []
    out = []
    # target stride*s + x must exceed sea_start, source stride*s + y must not exceed top
    s_lo = -((x - w.sea_start - 1) // stride)
    s_hi = (w.top - y) // stride
    for s in range(s_lo, s_hi + 1):
        r = fock.hop(stride * s + x, stride * s + y, w)
        if r is not None:
            out.append(r)
    return out


@lru_cache(maxsize=None)
def _act(mode: Mode, w: ElementaryVector) -> tuple[tuple[ElementaryVector, int], ...]:
    if mode.kind == "K":
        return ((w, 1),)
    if mode.kind == "E":
        if mode.i == mode.j:
            d = _diagonal_value(mode.i, w)
            return ((w, d),) if d else ()
        r = fock.hop(mode.i, mode.j, w)
        return () if r is None else (r,)
    acc: dict[ElementaryVector, int] = {}
    for coeff, stride, x, y in _families(mode):
        for u, c in _family_terms(stride, x, y, w):
            acc[u] = acc.get(u, 0) + coeff * c
    return tuple((u, c) for u, c in sorted(acc.items()) if c)


def clear_caches() -> None:
    """Drop memoized elementary actions (needed after patching sign conventions)."""
    _act.cache_clear()


def apply_mode(sym: Mode, v: FockVector) -> FockVector:
    if sym.kind == "K":
        return v
    return v.map_linear(lambda w: _act(sym, w))


def apply_E(i: int, j: int, v: FockVector) -> FockVector:
    return apply_mode(E(i, j), v)


def apply_lambda(j: int, v: FockVector) -> FockVector:
    return apply_mode(Lam(j), v)


def apply_e(k: int, v: FockVector) -> FockVector:
    return apply_mode(e(k), v)


def apply_f(k: int, v: FockVector) -> FockVector:
    return apply_mode(f(k), v)


def apply_h(k: int, v: FockVector) -> FockVector:
    return apply_mode(h(k), v)


def h0_weight(w: ElementaryVector) -> int:
    """Eigenvalue of h_0: odd minus even occupation numbers, relative to the charge-0 sea."""
    total = 0
    for i in range(min(w.sea_start, 0) + 1, max(w.top, 0) + 1):
        d = _diagonal_value(i, w)
        total += d if i & 1 else -d
    return total


def cocycle(a: Mode, b: Mode) -> int:
    if a.kind != "E" or b.kind != "E":
        raise ValueError("cocycle is defined on E symbols only")
    i, j = a.i, a.j
    if b.i != j or b.j != i:
        return 0
    if i <= 0 and j >= 1:
        return 1
    if j <= 0 and i >= 1:
        return -1
    return 0


@dataclass(frozen=True)
class BracketResult:
    """A finite combination of modes plus a multiple of the central element."""

    terms: tuple[tuple[Mode, int], ...] = ()
    central: int = 0

    @classmethod
    def build(cls, terms: dict | None = None, central: int = 0) -> BracketResult:
        items = tuple(sorted((m, c) for m, c in (terms or {}).items() if c))
        return cls(items, central)

    def __add__(self, other: BracketResult) -> BracketResult:
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return BracketResult.build(acc, self.central + other.central)

    def __neg__(self) -> BracketResult:
        return BracketResult(tuple((m, -c) for m, c in self.terms), -self.central)

    def is_zero(self) -> bool:
        return not self.terms and not self.central

    def apply(self, v: FockVector) -> FockVector:
        out = v * self.central
        for m, c in self.terms:
            out = out + apply_mode(m, v) * c
        return out

    def __str__(self) -> str:
        parts = [f"{c}*{m}" for m, c in self.terms]
        if self.central:
            parts.append(f"{self.central}*K")
        return " + ".join(parts) or "0"


ZERO = BracketResult()


def _delta(a: int, b: int) -> int:
    return int(a == b)


def _sl2_bracket(a: Mode, b: Mode) -> BracketResult:
    n, m = a.i, b.i
    pair = a.kind + b.kind
    if pair in ("ee", "ff"):
        return ZERO
    if pair == "ef":
        return BracketResult.build({h(n + m): 1}, n * _delta(n, -m))
    if pair == "he":
        return BracketResult.build({e(n + m): 2})
    if pair == "hf":
        return BracketResult.build({f(n + m): -2})
    if pair == "hh":
        return BracketResult.build(central=2 * n * _delta(n, -m))
    return -_sl2_bracket(b, a)


def bracket(a: Mode, b: Mode) -> BracketResult:
    """Symbolic bracket [a, b]; K and c are identified."""
    if a.kind == "K" or b.kind == "K":
        return ZERO
    if a.kind == "E" and b.kind == "E":
        i, j = a.i, a.j
        m, n = b.i, b.j
        terms: dict[Mode, int] = {}
        if j == m:
            terms[E(i, n)] = terms.get(E(i, n), 0) + 1
        if n == i:
            terms[E(m, j)] = terms.get(E(m, j), 0) - 1
        return BracketResult.build(terms, cocycle(a, b))
    if a.kind == "E" or b.kind == "E":
        raise NotImplementedError(f"bracket of {a} with {b}")
    if a.kind == "Lambda" and b.kind == "Lambda":
        return BracketResult.build(central=a.i * _delta(a.i + b.i, 0))
    if a.kind == "Lambda":
        if a.i % 2 == 0:
            return ZERO
        k = (a.i - 1) // 2
        return _sl2_bracket(e(k), b) + _sl2_bracket(f(k + 1), b)
    if b.kind == "Lambda":
        return -bracket(b, a)
    return _sl2_bracket(a, b)


@dataclass
class RelationCheck:
    a: Mode
    b: Mode
    vector: FockVector
    difference: FockVector = field(default_factory=FockVector)

    @property
    def ok(self) -> bool:
        return not self.difference

    def __bool__(self) -> bool:
        return self.ok

    def diagnostic(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "vector": self.vector.to_json(),
            "lhs_minus_rhs": self.difference.to_json(),
        }


def commutator(a: Mode, b: Mode, v: FockVector) -> FockVector:
    return apply_mode(a, apply_mode(b, v)) - apply_mode(b, apply_mode(a, v))


def verify_relation(a: Mode, b: Mode, v: FockVector) -> RelationCheck:
    """Check r(a) r(b) - r(b) r(a) = r([a, b]) on v exactly."""
    diff = commutator(a, b, v) - bracket(a, b).apply(v)
    return RelationCheck(a, b, v, diff)


def e_mode_ceiling(w: ElementaryVector) -> int:
    """No e_k with k above this value acts nontrivially on w, nor on any e_b w."""
    top_even = w.top if w.top % 2 == 0 else w.top - 1
    return (top_even - w.sea_start - 2) // 2


def esq_mode_sum(N: int, v: FockVector) -> FockVector:
    """The z^{-N-2} mode of e(z)^2 applied to v: sum over a + b = N of e_a e_b v."""
    out = FockVector()
    for w, c in v:
        kmax = e_mode_ceiling(w)
        one = FockVector.basis(w, c)
        for b in range(N - kmax, kmax + 1):
            out = out + apply_e(N - b, apply_e(b, one))
    return out


def vacuum_vector(j: int, sector: int = 0) -> ElementaryVector:
    """Extremal vector of h_0-weight 2j + sector in the charge-`sector` subspace.

    Odd indices <= 2(j + sector) - 1 and even indices <= -2j are occupied; the
    head is a staircase.  Sector 0, j = 1 is e_{-1}|0>; sector 1, j = 0 is
    psi_1 ^ psi_0 ^ psi_{-1} ^ ...
    """
    if sector not in (0, 1):
        raise ValueError("sector must be 0 or 1")
    odd_top, even_top = 2 * (j + sector) - 1, -2 * j
    top, lo = max(odd_top, even_top), min(odd_top, even_top)
    desc = [i for i in range(top, lo - 1, -1) if i <= (odd_top if i & 1 else even_top)]
    return from_indices(sector, desc)


def lambda_even_kernel_check(v: FockVector, K_max: int) -> bool:
    return all(not apply_lambda(2 * k, v) for k in range(1, K_max + 1))


def diagnostics_json(checks) -> str:
    return json.dumps([c.diagnostic() for c in checks if not c.ok], indent=2, sort_keys=True)
