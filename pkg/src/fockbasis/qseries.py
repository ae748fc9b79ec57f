"""
Truncated q-polynomials and bivariate (z, q) series with integer coefficients.

Truncation windows are part of every series value.  Arithmetic between two
series is valid only on the intersection of their windows, and the result
carries that intersection.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import combinations

INF = math.inf


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial in q, coefficients listed by ascending power, trailing zeros trimmed."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def one(cls) -> QPolynomial:
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> QPolynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: QPolynomial) -> QPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(tuple(self[k] - other[k] for k in range(n)))

    def __mul__(self, other: QPolynomial) -> QPolynomial:
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(tuple(out))

    def shift(self, k: int) -> QPolynomial:
        """Multiply by q**k."""
        return QPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def truncate(self, q_max: int) -> QPolynomial:
        return QPolynomial(self.coeffs[: q_max + 1])

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def pochhammer_inv(n, q_max: int) -> QPolynomial:
    """1/(q)_n = prod_{i=1..n} 1/(1 - q^i), truncated at q^q_max; n may be INF."""
    top = q_max if n == INF or n is None else min(int(n), q_max)
    # partitions into parts <= top, by the standard coin-change recurrence
    c = [1] + [0] * q_max
    for part in range(1, top + 1):
        for k in range(part, q_max + 1):
            c[k] += c[k - part]
    return QPolynomial(tuple(c))


def gaussian_binomial(a: int, b: int) -> QPolynomial:
    """[a choose b]_q via [a,b] = [a-1,b-1] + q^b [a-1,b]."""
    if b < 0 or a < 0 or b > a:
        return QPolynomial()
    row = [QPolynomial.one()]  # row[b] = [n choose b] for the current n
    for n in range(1, a + 1):
        new = [QPolynomial.one()]
        for k in range(1, n):
            new.append(row[k - 1] + row[k].shift(k))
        new.append(QPolynomial.one())
        row = new
    return row[b]


@dataclass(frozen=True)
class BivariateSeries:
    """sum c[z^a q^b], valid for z_min <= a <= z_max and 0 <= b <= q_max."""

    z_min: int
    z_max: int
    q_max: int
    coeffs: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.z_min > self.z_max or self.q_max < 0:
            raise ValueError("empty truncation window")
        clean = {
            (a, b): c
            for (a, b), c in self.coeffs.items()
            if c and self.z_min <= a <= self.z_max and 0 <= b <= self.q_max
        }
        object.__setattr__(self, "coeffs", clean)

    @property
    def window(self) -> tuple[int, int, int]:
        return self.z_min, self.z_max, self.q_max

    def coefficient(self, z_power: int, q_power: int) -> int:
        if not (self.z_min <= z_power <= self.z_max and 0 <= q_power <= self.q_max):
            raise KeyError(f"z^{z_power} q^{q_power} lies outside the truncation window {self.window}")
        return self.coeffs.get((z_power, q_power), 0)

    def restrict(self, z_min: int, z_max: int, q_max: int) -> BivariateSeries:
        return BivariateSeries(max(z_min, self.z_min), min(z_max, self.z_max), min(q_max, self.q_max), self.coeffs)

    def _common(self, other: BivariateSeries) -> tuple[int, int, int]:
        return max(self.z_min, other.z_min), min(self.z_max, other.z_max), min(self.q_max, other.q_max)

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        zlo, zhi, qm = self._common(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return BivariateSeries(zlo, zhi, qm, out)

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries(self.z_min, self.z_max, self.q_max, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        return self + (-other)

    def agrees_with(self, other: BivariateSeries) -> bool:
        """Coefficientwise equality on the common window."""
        zlo, zhi, qm = self._common(other)
        if zlo > zhi:
            return True
        return self.restrict(zlo, zhi, qm).coeffs == other.restrict(zlo, zhi, qm).coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.window == other.window and self.coeffs == other.coeffs

    def __le__(self, other: BivariateSeries) -> bool:
        """Coefficientwise <= on the common window."""
        zlo, zhi, qm = self._common(other)
        a, b = self.restrict(zlo, zhi, qm), other.restrict(zlo, zhi, qm)
        keys = set(a.coeffs) | set(b.coeffs)
        return all(a.coeffs.get(k, 0) <= b.coeffs.get(k, 0) for k in keys)

    def z_row(self, z_power: int) -> QPolynomial:
        return QPolynomial(tuple(self.coeffs.get((z_power, b), 0) for b in range(self.q_max + 1)))

    def at_z_one(self) -> QPolynomial:
        """Sum of all z-rows in the window."""
        out = QPolynomial()
        for a in range(self.z_min, self.z_max + 1):
            out = out + self.z_row(a)
        return out

    def items(self):
        return sorted(self.coeffs.items())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["z_power", "q_power", "coeff"])
        for (a, b), c in self.items():
            writer.writerow([a, b, c])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "z_min": self.z_min,
            "z_max": self.z_max,
            "q_max": self.q_max,
            "coeffs": [[a, b, c] for (a, b), c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> BivariateSeries:
        return cls(data["z_min"], data["z_max"], data["q_max"], {(a, b): c for a, b, c in data["coeffs"]})

    def table(self) -> str:
        """Multiplicity table: one row per q-power, one column per z-power."""
        zs = range(self.z_min, self.z_max + 1)
        cells = [["q\\z"] + [str(a) for a in zs]]
        for b in range(self.q_max + 1):
            cells.append([str(b)] + [str(self.coeffs.get((a, b), 0) or ".") for a in zs])
        width = max(len(x) for row in cells for x in row)
        return "\n".join(" ".join(x.rjust(width) for x in row) for row in cells)


def _series(terms, z_min: int, z_max: int, q_max: int) -> BivariateSeries:
    """Collect (z_power, q_shift, QPolynomial) contributions."""
    out: dict[tuple[int, int], int] = {}
    for a, shift, poly in terms:
        if not z_min <= a <= z_max:
            continue
        for k, c in enumerate(poly.coeffs):
            b = shift + k
            if b > q_max:
                break
            if c:
                out[(a, b)] = out.get((a, b), 0) + c
    return BivariateSeries(z_min, z_max, q_max, out)


def _relevant(z_min: int, z_max: int, q_max: int, exponent) -> list[int]:
    return [n for n in range(z_min, z_max + 1) if 0 <= exponent(n) <= q_max]


def ch_L01(q_max: int, z_min: int, z_max: int) -> BivariateSeries:
    """sum_n z^n q^{n^2} / (q)_inf."""
    inv = pochhammer_inv(INF, q_max)
    ns = _relevant(z_min, z_max, q_max, lambda n: n * n)
    return _series(((n, n * n, inv) for n in ns), z_min, z_max, q_max)


def ch_L11(q_max: int, z_min: int, z_max: int) -> BivariateSeries:
    """sum_n z^n q^{n^2 + n} / (q)_inf.

    Standard character of the level-one module with highest weight (1, 1),
    with z counting (h_0 - 1)/2 and q counting L_0 - 1/4.
    """
    inv = pochhammer_inv(INF, q_max)
    ns = _relevant(z_min, z_max, q_max, lambda n: n * n + n)
    return _series(((n, n * n + n, inv) for n in ns), z_min, z_max, q_max)


def ch_W(j: int, q_max: int, z_min: int, z_max: int) -> BivariateSeries:
    """sum_{n >= j} z^n q^{n^2} / (q)_{n-j}."""
    ns = [n for n in _relevant(z_min, z_max, q_max, lambda n: n * n) if n >= j]
    return _series(((n, n * n, pochhammer_inv(n - j, q_max)) for n in ns), z_min, z_max, q_max)


def ch_F(q_max: int, z_min: int, z_max: int) -> BivariateSeries:
    """sum_m z^m q^{m(m+1)/2} / (q)_inf: the wedge space graded by charge and energy."""
    inv = pochhammer_inv(INF, q_max)
    ms = _relevant(z_min, z_max, q_max, lambda m: m * (m + 1) // 2)
    return _series(((m, m * (m + 1) // 2, inv) for m in ms), z_min, z_max, q_max)


def limit_stabilization_check(q_max: int, z_min: int, z_max: int) -> tuple[bool, int]:
    """Find m* with ch_W(m) == ch_L01 on the window for every m <= m*.

    1/(q)_k agrees with 1/(q)_inf through q^k, so the z^n q^{n^2}/(q)_{n-m}
    term is exact in the window once n - m >= q_max - n^2; every m at or below
    that bound is covered by this argument.  Above it the agreement is checked
    term by term, and m* is the largest m up to which it holds.
    """
    target = ch_L01(q_max, z_min, z_max)
    ns = _relevant(z_min, z_max, q_max, lambda n: n * n)
    bound = min((min(n, n + n * n - q_max) for n in ns), default=z_min)
    for m in range(bound - 2, bound + 1):
        if not ch_W(m, q_max, z_min, z_max).agrees_with(target):
            return False, bound
    m_star = bound
    while m_star < z_max and ch_W(m_star + 1, q_max, z_min, z_max).agrees_with(target):
        m_star += 1
    return True, m_star


def restricted_partition_count(n: int, m: int, N: int) -> int:
    """Partitions of n into m distinct parts <= N - 1, adjacent parts differing by >= 2.

    Exhaustive enumeration.
    """
    count = 0
    for parts in combinations(range(1, N), m):
        if sum(parts) == n and all(b - a >= 2 for a, b in zip(parts, parts[1:])):
            count += 1
    return count


def fibonacci_polynomial_character(N: int) -> BivariateSeries:
    """sum_m z^m q^{m^2} [N - m choose m]_q."""
    terms = [(m, m * m, gaussian_binomial(N - m, m)) for m in range(N // 2 + 1)]
    q_max = max((m * m + max(p.degree, 0) for m, _, p in terms), default=0)
    return _series(terms, 0, max(N // 2, 0), q_max)


def qbinomial_identity_check(N: int) -> bool:
    """Gaussian-binomial closed form vs. exhaustive count of gap-two partitions with parts < N."""
    closed = fibonacci_polynomial_character(N)
    brute = {}
    for m in range(closed.z_min, closed.z_max + 1):
        for n in range(closed.q_max + 1):
            c = restricted_partition_count(n, m, N)
            if c:
                brute[(m, n)] = c
    # no admissible partition can exceed the window (largest sum is m^2 + m(N - 2m))
    return closed.coeffs == brute


def gaussian_stabilization_check(m_max: int, q_max: int) -> bool:
    """[N - m choose m]_q agrees with 1/(q)_m through q^q_max once N - 2m >= q_max."""
    for m in range(m_max + 1):
        target = pochhammer_inv(m, q_max)
        for N in range(2 * m + q_max, 2 * m + q_max + 4):
            if gaussian_binomial(N - m, m).truncate(q_max) != target:
                return False
    return True


def series_json(series: BivariateSeries) -> str:
    return json.dumps(series.to_json(), sort_keys=True)
