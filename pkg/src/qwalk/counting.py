"""Exact dynamic-programming enumeration of quarter-plane walks.

q(i, j, n) is the number of n-step walks from the origin that stay in
Z_+^2 and end at (i, j).  Layers are computed with arbitrary-precision
integers; a layer's row j is packed into a single Python int with one
fixed-width digit per i, which keeps the whole recurrence inside C-speed
bigint shifts and adds.  This module is the brute-force oracle for every
analytic formula in the package: no floating point is used anywhere here.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import product
from typing import Literal

from .errors import ResourceLimit
from .steps import StepSet

_DEFAULT_MAX_N = 4096

SeriesLabel = Literal["q00", "q10", "q01", "q11"]

SERIES_PRETTY = {
    "q00": "Q(0,0,z)",
    "q10": "Q(1,0,z)",
    "q01": "Q(0,1,z)",
    "q11": "Q(1,1,z)",
}


def _n_cap() -> int:
    env = os.environ.get("QWALK_MAX_N")
    return int(env) if env else _DEFAULT_MAX_N


def _digit_bits(card: int, n_max: int) -> int:
    # Each packed digit must hold values up to |S|^n_max, plus headroom for
    # the digit-sum folding (~log2(rows) + log2(folds) carries).  Multiple of
    # 8 so digits can be sliced out of to_bytes() output.
    bits = math.ceil(n_max * math.log2(max(card, 2))) + 26
    return (bits + 7) // 8 * 8


def _digit_sum(x: int, bits: int) -> int:
    # Fold the packed integer in half (digit-aligned) until one digit is
    # left; digit headroom guarantees the pointwise adds never carry.
    limit = 1 << bits
    while x >= limit:
        ndig = (x.bit_length() + bits - 1) // bits
        cut = bits * ((ndig + 1) // 2)
        x = (x & ((1 << cut) - 1)) + (x >> cut)
    return x


def _unpack(row: int, bits: int, count: int) -> list[int]:
    nb = bits // 8
    buf = row.to_bytes(max(nb * count, (row.bit_length() + 7) // 8), "little")
    buf = buf.ljust(nb * count, b"\x00")
    return [int.from_bytes(buf[k * nb : (k + 1) * nb], "little") for k in range(count)]


@dataclass
class CountTable:
    """Exact counts for one step set up to length n_max.

    Per layer n the table keeps q(0,0,n), the axis sections q(i,0,n) and
    q(0,j,n), and the layer total; full dense layers are retained for
    n <= dense_max (the DP itself is a two-layer rolling grid).
    """

    steps: StepSet
    n_max: int
    dense_max: int
    q00: list[int] = field(default_factory=list)
    row0: list[list[int]] = field(default_factory=list)  # q(i,0,n), i = 0..n
    col0: list[list[int]] = field(default_factory=list)  # q(0,j,n), j = 0..n
    totals: list[int] = field(default_factory=list)
    _dense: list[list[list[int]]] = field(default_factory=list)  # [n][j][i]

    def q(self, i: int, j: int, n: int) -> int:
        """q(i, j, n); requires n <= dense_max unless (i, j) is on an axis."""
        if n > self.n_max or n < 0:
            raise IndexError(f"layer {n} not computed (n_max={self.n_max})")
        if i < 0 or j < 0 or i > n or j > n:
            return 0
        if j == 0:
            return self.row0[n][i]
        if i == 0:
            return self.col0[n][j]
        if n <= self.dense_max:
            layer = self._dense[n]
            return layer[j][i] if j < len(layer) and i < len(layer[j]) else 0
        raise ResourceLimit(
            f"interior cell ({i},{j},{n}) beyond dense_max={self.dense_max}; "
            "recount with a larger dense_max"
        )

    def layer(self, n: int) -> list[list[int]]:
        """Dense layer n as rows indexed [j][i] (n <= dense_max)."""
        if n > self.dense_max:
            raise ResourceLimit(f"layer {n} beyond dense_max={self.dense_max}")
        return [row[:] for row in self._dense[n]]


def count(s: StepSet, n_max: int, dense_max: int | None = None) -> CountTable:
    """Enumerate q(i, j, n) for n <= n_max.

    Steps that would leave the quarter plane are discarded, which in the
    forward recurrence simply means source cells with a negative coordinate
    contribute nothing.  Raises ResourceLimit beyond the configured cap
    (QWALK_MAX_N, default 4096).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    cap = _n_cap()
    if n_max > cap:
        raise ResourceLimit(f"n_max={n_max} exceeds cap {cap} (set QWALK_MAX_N to override)")
    if dense_max is None:
        dense_max = min(n_max, 64)
    dense_max = min(dense_max, n_max)

    bits = _digit_bits(len(s), max(n_max, 1))
    mask = (1 << bits) - 1
    steps = s.sorted_steps()

    table = CountTable(steps=s, n_max=n_max, dense_max=dense_max)

    rows: list[int] = [1]  # layer 0: q(0,0,0) = 1

    def record(n: int, rows: list[int]) -> None:
        table.q00.append(rows[0] & mask)
        table.row0.append(_unpack(rows[0], bits, n + 1))
        table.col0.append([r & mask for r in rows])
        # digit headroom covers the sum over <= n_max+1 rows without carries
        table.totals.append(_digit_sum(sum(rows), bits))
        if n <= dense_max:
            table._dense.append([_unpack(r, bits, n + 1) for r in rows])

    record(0, rows)
    for n in range(1, n_max + 1):
        prev = rows
        nprev = len(prev)
        rows = []
        for j in range(n + 1):
            acc = 0
            for (a, b) in steps:
                src = j - b
                if 0 <= src < nprev:
                    r = prev[src]
                    if r:
                        if a == 1:
                            acc += r << bits
                        elif a == 0:
                            acc += r
                        else:
                            acc += r >> bits
            rows.append(acc)
        record(n, rows)
    return table


@dataclass(frozen=True)
class CoefficientSeries:
    """Integer coefficient sequence of one specialised generating function."""

    label: SeriesLabel
    coeffs: tuple[int, ...]

    @property
    def pretty_label(self) -> str:
        return SERIES_PRETTY[self.label]


def series(table: CountTable, label: SeriesLabel) -> CoefficientSeries:
    """Extract a coefficient sequence: q00 -> q(0,0,n), q10 -> sum_i q(i,0,n),
    q01 -> sum_j q(0,j,n), q11 -> sum_{i,j} q(i,j,n)."""
    if label == "q00":
        coeffs = tuple(table.q00)
    elif label == "q10":
        coeffs = tuple(sum(r) for r in table.row0)
    elif label == "q01":
        coeffs = tuple(sum(c) for c in table.col0)
    elif label == "q11":
        coeffs = tuple(table.totals)
    else:
        raise ValueError(f"unknown series label {label!r}")
    return CoefficientSeries(label=label, coeffs=coeffs)


def catalan(n: int) -> int:
    """The n-th Catalan number, binomial(2n, n)/(n+1), exactly."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class FunctionalEquationReport:
    holds: bool
    max_degree: int
    has_q00_term: bool  # whether the (-1,-1) step contributes the Q(0,0,z) term
    first_mismatch: tuple[int, int, int, int, int] | None  # (n, i, j, lhs, rhs)


def check_functional_equation(s: StepSet, n_degree: int) -> FunctionalEquationReport:
    """Verify the kernel functional equation as an exact truncated identity.

    Both sides are multiplied by z to clear the 1/z terms; the coefficient of
    z^n is then a polynomial identity in (x, y) with integer coefficients:

        xy*(S . Q_{n-1}) - xy*Q_n
            = c(x)*Q_{n-1}(x,0) + ct(y)*Q_{n-1}(0,y)
              - delta_{-1,-1} q(0,0,n-1) - xy*[n == 0]

    where S is the step polynomial and Q_n the (quadrant-truncated) layer.
    The left product S . Q_{n-1} is unrestricted: the boundary-truncation
    mismatch is exactly what the right-hand side corrects.
    """
    if n_degree < 1:
        raise ValueError("n_degree must be >= 1")
    table = count(s, n_degree, dense_max=n_degree)
    d11 = s.delta(-1, -1)

    def layer_poly(n: int) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for j, row in enumerate(table._dense[n]):
            for i, v in enumerate(row):
                if v:
                    out[(i, j)] = v
        return out

    first_mismatch = None
    for n in range(0, n_degree + 1):
        lhs: dict[tuple[int, int], int] = {}
        if n >= 1:
            for (i, j), v in layer_poly(n - 1).items():
                for (p, q) in s.steps:
                    key = (i + p + 1, j + q + 1)
                    lhs[key] = lhs.get(key, 0) + v
        for (i, j), v in layer_poly(n).items():
            key = (i + 1, j + 1)
            lhs[key] = lhs.get(key, 0) - v

        rhs: dict[tuple[int, int], int] = {}
        if n >= 1:
            for i, v in enumerate(table.row0[n - 1]):
                if v:
                    for di in (-1, 0, 1):
                        if s.delta(di, -1):
                            key = (i + di + 1, 0)
                            rhs[key] = rhs.get(key, 0) + v
            for j, v in enumerate(table.col0[n - 1]):
                if v:
                    for dj in (-1, 0, 1):
                        if s.delta(-1, dj):
                            key = (0, j + dj + 1)
                            rhs[key] = rhs.get(key, 0) + v
            if d11:
                q = table.q00[n - 1]
                if q:
                    rhs[(0, 0)] = rhs.get((0, 0), 0) - q
        else:
            rhs[(1, 1)] = -1

        keys = sorted(set(lhs) | set(rhs))
        for key in keys:
            a, b = lhs.get(key, 0), rhs.get(key, 0)
            if a != b:
                first_mismatch = (n, key[0], key[1], a, b)
                break
        if first_mismatch:
            break

    return FunctionalEquationReport(
        holds=first_mismatch is None,
        max_degree=n_degree,
        has_q00_term=bool(d11),
        first_mismatch=first_mismatch,
    )


def count_by_paths(s: StepSet, n: int, budget: int = 300_000) -> dict[tuple[int, int], int]:
    """Independent oracle: enumerate every |S|^n path explicitly and tally the
    endpoints of those that never leave the quarter plane."""
    if len(s) ** n > budget:
        raise ResourceLimit(f"|S|^n = {len(s)**n} exceeds enumeration budget {budget}")
    tally: dict[tuple[int, int], int] = {}
    for path in product(s.sorted_steps(), repeat=n):
        x = y = 0
        ok = True
        for (a, b) in path:
            x += a
            y += b
            if x < 0 or y < 0:
                ok = False
                break
        if ok:
            tally[(x, y)] = tally.get((x, y), 0) + 1
    return tally


def eval_q_x0(table: CountTable, x: complex, z: complex, n_terms: int | None = None) -> complex:
    """Truncated bivariate series sum_{n,i} q(i,0,n) x^i z^n."""
    n_terms = table.n_max if n_terms is None else min(n_terms, table.n_max)
    total = 0j
    for n in range(n_terms + 1):
        row = table.row0[n]
        acc = 0j
        xp = 1 + 0j
        for v in row:
            if v:
                acc += v * xp
            xp *= x
        total += acc * z**n
    return total


def eval_series(coeffs, z: float, n_terms: int | None = None) -> float:
    """Truncated univariate series sum c_n z^n (coefficients may be huge ints)."""
    n_terms = len(coeffs) - 1 if n_terms is None else min(n_terms, len(coeffs) - 1)
    total = 0.0
    zp = 1.0
    for n in range(n_terms + 1):
        c = coeffs[n]
        if c:
            if c.bit_length() < 1000:
                total += float(c) * zp
            else:
                # c overflows float64; the term c*z^n does not (z < 1/|S|).
                sign = 1.0 if z >= 0 or n % 2 == 0 else -1.0
                total += sign * math.exp(math.log(c) + n * math.log(abs(z)))
        zp *= z
    return total
