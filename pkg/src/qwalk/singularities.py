"""First positive singularities of the counting generating functions.

The genus-transition point z_g is computed by two independent routes:

* the critical point of the step polynomial: the unique (alpha, beta) in
  (0, inf)^2 killing both first moments, with z_g the reciprocal of the
  step polynomial there (damped Newton in log coordinates);
* the smallest positive z at which the x-discriminant acquires a real
  positive double root with the inner-collision signature (exact rational
  resultant in z, Sturm isolation, then numeric validation).

z_Y and z_X have closed forms; 1/|S| is elementary.  The drift/covariance
table then names the first positive singularity of Q(1,0,z), Q(0,1,z) and
Q(1,1,z).  Cells where two designated values coincide (zero drift
components, or a zero covariance in a split row) are reported as ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _ratpoly as rp
from .errors import (
    NoPositiveSolution,
    RootFindingFailure,
    SingularWalk,
    ValidationMismatch,
)
from .kernel import (
    _cleared_disc_at,
    _poly_roots,
    cleared_disc_int,
    kernel_polys,
    poly_eval,
)
from .steps import StepSet, drift, is_singular, origin_in_hull_interior


@dataclass(frozen=True)
class CriticalPoint:
    alpha: float
    beta: float
    z_g: float
    residual: float


def _require_genuine(s: StepSet) -> None:
    if is_singular(s):
        raise SingularWalk("singular walks are outside this machinery")
    if not origin_in_hull_interior(s):
        raise NoPositiveSolution(
            "the steps lie in a closed half-plane; the critical-point system "
            "has no solution in (0, inf)^2"
        )


def critical_point(s: StepSet) -> CriticalPoint:
    """Solve sum(i d_ij a^i b^j) = sum(j d_ij a^i b^j) = 0 in (0, inf)^2.

    Damped Newton on (u, v) = (log a, log b) from (0, 0); the objective
    sum(d_ij e^{iu+jv}) is strictly convex and coercive for genuine
    two-dimensional models, so the iteration converges to the unique
    critical point.  Falls back to nested bisection if Newton stalls.
    """
    _require_genuine(s)
    pts = s.sorted_steps()

    def grad_hess(u: float, v: float):
        g1 = g2 = h11 = h12 = h22 = 0.0
        for (i, j) in pts:
            w = math.exp(i * u + j * v)
            g1 += i * w
            g2 += j * w
            h11 += i * i * w
            h12 += i * j * w
            h22 += j * j * w
        return (g1, g2), ((h11, h12), (h12, h22))

    def resid(g) -> float:
        return math.hypot(g[0], g[1])

    u = v = 0.0
    (g, h) = grad_hess(u, v)
    r = resid(g)
    for _ in range(100):
        if r < 1e-13:
            break
        det = h[0][0] * h[1][1] - h[0][1] * h[0][1]
        if det <= 0:
            break
        du = -(h[1][1] * g[0] - h[0][1] * g[1]) / det
        dv = -(-h[0][1] * g[0] + h[0][0] * g[1]) / det
        step = 1.0
        for _ in range(60):
            gu, hu = grad_hess(u + step * du, v + step * dv)
            if resid(gu) < r:
                u, v = u + step * du, v + step * dv
                g, h, r = gu, hu, resid(gu)
                break
            step *= 0.5
        else:
            break

    if r >= 1e-12:
        u, v = _nested_bisection(s)
        (g, _h) = grad_hess(u, v)
        r = resid(g)
        if r >= 1e-12:
            raise NoPositiveSolution(f"critical-point iteration stalled at residual {r}")

    alpha, beta = math.exp(u), math.exp(v)
    total = sum(alpha**i * beta**j for (i, j) in pts)
    return CriticalPoint(alpha=alpha, beta=beta, z_g=1.0 / total, residual=r)


def _nested_bisection(s: StepSet) -> tuple[float, float]:
    pts = s.sorted_steps()

    def fv(u: float, v: float) -> float:
        return sum(j * math.exp(i * u + j * v) for (i, j) in pts)

    def fu(u: float, v: float) -> float:
        return sum(i * math.exp(i * u + j * v) for (i, j) in pts)

    def v_star(u: float) -> float:
        lo, hi = -60.0, 60.0
        if fv(u, lo) > 0 or fv(u, hi) < 0:
            raise NoPositiveSolution("no interior minimum in v")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if fv(u, mid) <= 0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    lo, hi = -60.0, 60.0
    if fu(lo, v_star(lo)) > 0 or fu(hi, v_star(hi)) < 0:
        raise NoPositiveSolution("no interior minimum in u")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if fu(mid, v_star(mid)) <= 0:
            lo = mid
        else:
            hi = mid
    u = 0.5 * (lo + hi)
    return u, v_star(u)


def _disc_coeff_polys(s: StepSet) -> list[rp.Poly]:
    """Coefficient of x^k in the cleared discriminant, as a polynomial in z."""
    return [rp.norm([Fraction(c0), Fraction(c1), Fraction(c2)])
            for (c0, c1, c2) in cleared_disc_int(s, "x")]


def _resultant_in_z(s: StepSet) -> rp.Poly:
    """R(z) = Res_x(D(x,z), dD/dx(x,z)) with exact rational arithmetic.

    Built by evaluation at integer z-samples and Lagrange interpolation; the
    Sylvester dimensions are fixed by the formal x-degrees, so the sampled
    determinants interpolate the genuine resultant polynomial.
    """
    coeff_polys = _disc_coeff_polys(s)
    while coeff_polys and not coeff_polys[-1]:
        coeff_polys.pop()
    dp = len(coeff_polys) - 1
    if dp < 2:
        raise RootFindingFailure("discriminant degenerates below a quadratic in x")
    deriv_polys = [rp.scale(coeff_polys[k], Fraction(k)) for k in range(1, dp + 1)]
    # z-degree bound:  each Sylvester entry has degree <= 2
    n_samples = 2 * (dp + dp - 1) + 1
    points: list[tuple[Fraction, Fraction]] = []
    z0 = 1
    while len(points) < n_samples:
        zf = Fraction(z0)
        p = [rp.evaluate(c, zf) for c in coeff_polys]
        q = [rp.evaluate(c, zf) for c in deriv_polys]
        points.append((zf, rp.sylvester_resultant(p, q)))
        z0 += 1
    return rp.lagrange_interpolate(points)


def z_g_via_resultant(s: StepSet) -> float:
    """z_g as the smallest positive z where d(., z) has a real positive
    double root of inner-collision type (local maximum touching zero).

    Candidates are the positive real roots of the z-resultant of (D, D_x),
    isolated exactly; each is validated numerically: the clustered double
    root must be real, positive, and a local maximum of d in x (the two
    colliding roots are the real pair surrounding the shrinking positivity
    interval, not a cut endpoint pair, which would touch from below).
    """
    _require_genuine(s)
    res = _resultant_in_z(s)
    candidates = rp.isolate_positive_roots(res)
    if not candidates:
        raise RootFindingFailure("the resultant has no positive real roots")
    coeffs_int = cleared_disc_int(s, "x")
    rejected: list[str] = []
    for zc in candidates:
        z = float(zc)
        coeffs = _cleared_disc_at(coeffs_int, z)
        try:
            roots = _poly_roots(coeffs)
        except RootFindingFailure:
            continue
        if len(roots) < 2:
            rejected.append(f"z={z}: fewer than two finite roots")
            continue
        # several double roots can coincide at one z (symmetric models):
        # examine every clustered pair
        clusters = []
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                gap = abs(roots[a] - roots[b])
                centre = 0.5 * (roots[a] + roots[b])
                if gap <= 1e-4 * (1.0 + abs(centre)):
                    clusters.append(centre)
        if not clusters:
            rejected.append(f"z={z}: no clustered double root")
            continue
        d2 = [2 * coeffs[2], 6 * coeffs[3], 12 * coeffs[4]]
        accepted = False
        for x_star in clusters:
            scale = 1.0 + abs(x_star)
            if abs(x_star.imag) > 1e-6 * scale or x_star.real <= 0:
                rejected.append(f"z={z}: double root {x_star} not real positive")
                continue
            curvature = poly_eval(d2, x_star.real)
            if curvature >= 0:
                rejected.append(f"z={z}: outer-type collision (curvature {curvature})")
                continue
            accepted = True
            break
        if accepted:
            return z
    raise ValidationMismatch(
        "no resultant root matched the inner collision; rejected: " + "; ".join(rejected)
    )


def z_Y(s: StepSet) -> float:
    """1/(b(1) + 2 sqrt(a(1) c(1))): first singularity of Y0(1, z)."""
    kp = kernel_polys(s)
    a1, b1, c1 = sum(kp.a), sum(kp.b), sum(kp.c)
    denom = b1 + 2.0 * math.sqrt(a1 * c1)
    if denom == 0:
        raise ZeroDivisionError("no finite z_Y: b(1) = a(1)c(1) = 0")
    return 1.0 / denom


def z_X(s: StepSet) -> float:
    """Mirror of z_Y with the tilde polynomials."""
    return z_Y(s.mirrored())


def _sign(v: int) -> str:
    return "+" if v > 0 else ("-" if v < 0 else "0")


@dataclass(frozen=True)
class FirstSingularity:
    """The table's designation for one generating function: a primary label,
    any tied labels (cells whose designated values coincide), and the value."""

    label: str
    ties: tuple[str, ...]
    value: float


@dataclass(frozen=True)
class SingularityReport:
    z_g: float
    z_g_resultant: float
    method_gap: float
    z_X: float
    z_Y: float
    inv_cardinality: float
    drift_sign: tuple[str, str]
    cov_sign: str
    fs_q10: FirstSingularity
    fs_q01: FirstSingularity
    fs_q11: FirstSingularity
    alpha: float
    beta: float


# Table rules per (sign M_x, sign M_y).  A rule is either a label, a tuple of
# labels marked jointly (their values coincide: a zero drift component forces
# z_Y or z_X onto 1/|S|), or a covariance split ("C<=0 label", "C>=0 label").
# The split rows mirror each other under the diagonal reflection, which swaps
# the x- and y-axis roles (and hence z_X with z_Y).
_SPLIT = "split"

_Q10_RULES = {
    ("+", "+"): "z_Y",
    ("+", "0"): ("z_Y", "1/|S|"),
    ("+", "-"): "z_Y",
    ("0", "+"): (_SPLIT, "z_Y", "z_g"),
    ("0", "0"): ("1/|S|", "z_g", "z_Y"),
    ("0", "-"): (_SPLIT, "z_g", "z_Y"),
    ("-", "+"): "z_g",
    ("-", "0"): "z_g",
    ("-", "-"): "z_g",
}

_Q11_RULES = {
    ("+", "+"): "1/|S|",
    ("+", "0"): "1/|S|",
    ("0", "+"): "1/|S|",
    ("0", "0"): ("1/|S|", "z_g", "z_X", "z_Y"),
    ("+", "-"): "z_Y",
    ("-", "+"): "z_X",
    ("0", "-"): (_SPLIT, "z_g", "z_Y"),
    ("-", "0"): (_SPLIT, "z_g", "z_X"),
    ("-", "-"): "z_g",
}


def _swap_label(label: str) -> str:
    return {"z_X": "z_Y", "z_Y": "z_X"}.get(label, label)


def _resolve(rule, cov: int, values: dict[str, float]) -> FirstSingularity:
    if isinstance(rule, str):
        return FirstSingularity(label=rule, ties=(), value=values[rule])
    if rule[0] == _SPLIT:
        neg_label, pos_label = rule[1], rule[2]
        if cov < 0:
            return FirstSingularity(label=neg_label, ties=(), value=values[neg_label])
        if cov > 0:
            return FirstSingularity(label=pos_label, ties=(), value=values[pos_label])
        return FirstSingularity(
            label=neg_label, ties=(pos_label,), value=values[neg_label]
        )
    primary, *rest = rule
    return FirstSingularity(label=primary, ties=tuple(rest), value=values[primary])


def classify_first_singularities(s: StepSet) -> SingularityReport:
    """Fill the drift/covariance classification for a non-singular model."""
    _require_genuine(s)
    d = drift(s)
    cp = critical_point(s)
    zg_res = z_g_via_resultant(s)
    values = {
        "z_g": cp.z_g,
        "z_X": z_X(s),
        "z_Y": z_Y(s),
        "1/|S|": 1.0 / len(s),
    }
    key = (_sign(d.m_x), _sign(d.m_y))
    fs10 = _resolve(_Q10_RULES[key], d.covariance, values)
    # the Q(0,1,z) column is the diagonal mirror of the Q(1,0,z) column
    mirror_rule = _Q10_RULES[(key[1], key[0])]
    if isinstance(mirror_rule, str):
        rule01 = _swap_label(mirror_rule)
    else:
        rule01 = tuple(_swap_label(r) if r != _SPLIT else r for r in mirror_rule)
    fs01 = _resolve(rule01, d.covariance, values)
    fs11 = _resolve(_Q11_RULES[key], d.covariance, values)
    return SingularityReport(
        z_g=cp.z_g,
        z_g_resultant=zg_res,
        method_gap=abs(cp.z_g - zg_res),
        z_X=values["z_X"],
        z_Y=values["z_Y"],
        inv_cardinality=values["1/|S|"],
        drift_sign=key,
        cov_sign=_sign(d.covariance),
        fs_q10=fs10,
        fs_q01=fs01,
        fs_q11=fs11,
        alpha=cp.alpha,
        beta=cp.beta,
    )
