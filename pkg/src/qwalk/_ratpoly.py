"""Exact univariate polynomial helpers over Fraction.

Ascending coefficient lists, normalised (no trailing zeros).  Used for the
resultant-in-z route to the genus-transition point: Sylvester determinants
are evaluated at integer sample points with exact rational elimination and
interpolated back, and real roots are isolated with Sturm chains.
"""

from __future__ import annotations

from fractions import Fraction

Poly = list[Fraction]


def norm(p) -> Poly:
    q = [Fraction(c) for c in p]
    while q and q[-1] == 0:
        q.pop()
    return q


def degree(p: Poly) -> int:
    return len(p) - 1


def evaluate(p: Poly, v: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * v + c
    return acc


def deriv(p: Poly) -> Poly:
    return norm([k * p[k] for k in range(1, len(p))])


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return norm([(p[k] if k < len(p) else 0) - (q[k] if k < len(q) else 0) for k in range(n)])


def scale(p: Poly, c: Fraction) -> Poly:
    return norm([c * v for v in p])


def polydivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq, lead = degree(q), q[-1]
    while len(rem) - 1 >= dq and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        k = len(rem) - 1 - dq
        f = rem[-1] / lead
        quo[k] = f
        for i, c in enumerate(q):
            rem[k + i] -= f * c
        rem.pop()
    return norm(quo), norm(rem)


def polygcd(p: Poly, q: Poly) -> Poly:
    a, b = norm(p), norm(q)
    while b:
        a, b = b, polydivmod(a, b)[1]
    if a:
        a = scale(a, 1 / a[-1])
    return a


def square_free(p: Poly) -> Poly:
    p = norm(p)
    if degree(p) <= 1:
        return p
    g = polygcd(p, deriv(p))
    if degree(g) == 0:
        return p
    return polydivmod(p, g)[0]


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [norm(p), deriv(p)]
    while chain[-1]:
        r = polydivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(scale(r, Fraction(-1)))
    return [c for c in chain if c]


def _sign_changes(chain: list[Poly], v: Fraction) -> int:
    signs = []
    for p in chain:
        s = evaluate(p, v)
        if s != 0:
            signs.append(1 if s > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi] for a square-free chain."""
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def cauchy_bound(p: Poly) -> Fraction:
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_positive_roots(p: Poly, width: Fraction = Fraction(1, 10**13)) -> list[Fraction]:
    """Midpoints of isolating intervals for every distinct positive real root
    of p, ascending, each of width below `width` (exact bisection)."""
    p = square_free(p)
    if degree(p) < 1:
        return []
    chain = sturm_chain(p)
    out: list[Fraction] = []

    def recurse(lo: Fraction, hi: Fraction) -> None:
        n = count_roots(chain, lo, hi)
        if n == 0:
            return
        if n == 1 and hi - lo < width:
            out.append((lo + hi) / 2)
            return
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            out.append(mid)
            shrink = min(width, (hi - lo)) / 4
            recurse(lo, mid - shrink)
            recurse(mid + shrink, hi)
            return
        recurse(lo, mid)
        recurse(mid, hi)

    recurse(Fraction(0), cauchy_bound(p))
    return sorted(out)


def lagrange_interpolate(points: list[tuple[Fraction, Fraction]]) -> Poly:
    """Exact interpolating polynomial through distinct rational points."""
    result: Poly = []
    for k, (xk, yk) in enumerate(points):
        basis: Poly = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == k:
                continue
            basis = _mul_linear(basis, -xj)
            denom *= xk - xj
        coeff = yk / denom
        term = scale(basis, coeff)
        n = max(len(result), len(term))
        result = [
            (result[i] if i < len(result) else 0) + (term[i] if i < len(term) else 0)
            for i in range(n)
        ]
    return norm(result)


def _mul_linear(p: Poly, c: Fraction) -> Poly:
    """p(x) * (x + c)."""
    out = [Fraction(0)] * (len(p) + 1)
    for i, v in enumerate(p):
        out[i] += c * v
        out[i + 1] += v
    return norm(out)


def determinant(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def sylvester_resultant(p: Poly, q: Poly) -> Fraction:
    """Resultant of p and q with their formal (list) degrees."""
    dp, dq = len(p) - 1, len(q) - 1
    if dp < 0 or dq < 0:
        return Fraction(0)
    n = dp + dq
    if n == 0:
        return Fraction(1)
    rows: list[list[Fraction]] = []
    pr = list(reversed(p))
    qr = list(reversed(q))
    for k in range(dq):
        rows.append([Fraction(0)] * k + pr + [Fraction(0)] * (n - dp - k - 1))
    for k in range(dp):
        rows.append([Fraction(0)] * k + qr + [Fraction(0)] * (n - dq - k - 1))
    return determinant(rows)
