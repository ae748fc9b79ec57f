"""
Exact rank of sparse rational matrices.

Rows are mappings column-key -> rational.  Each row is scaled to a primitive
integer vector and reduced against the pivot rows by integer cross
multiplication (r <- p[c] * r - r[c] * p) followed by removal of the row
content, so no fractions are ever formed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    return {c: x // g for c, x in row.items()}


def _integer_row(row: Mapping, columns: dict[Hashable, int]) -> dict[int, int]:
    den = 1
    for x in row.values():
        if not isinstance(x, int):
            den = lcm(den, Fraction(x).denominator)
    out = {}
    for key, x in row.items():
        if x == 0:
            continue
        col = columns.setdefault(key, len(columns))
        out[col] = int(x * den) if den != 1 else int(x)
    return _primitive(out)


class EchelonBasis:
    """Incrementally maintained row echelon form over the integers."""

    def __init__(self):
        self.columns: dict[Hashable, int] = {}
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, row: Mapping) -> dict[int, int]:
        r = _integer_row(row, self.columns)
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                return r
            a, b = p[c], r[c]
            out = {k: a * x for k, x in r.items()}
            for k, y in p.items():
                s = out.get(k, 0) - b * y
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
            r = _primitive(out) if out else out
        return r

    def add(self, row: Mapping) -> bool:
        """Insert a row; True iff it was independent of the rows so far."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[Mapping]) -> int:
    basis = EchelonBasis()
    for row in rows:
        basis.add(row)
    return basis.rank
