"""Growth-rate, polynomial-exponent and constant estimation for integer
coefficient sequences c_n ~ const * rho^n * n^alpha.

rho comes from Richardson-extrapolated consecutive ratios, alpha from the
extrapolated n*(ratio/rho - 1), and the constant from c_n * n^(-alpha) *
rho^(-n).  Sequences from these walk models carry a subdominant oscillating
correction (-rho)^n * n^(-beta) from the conjugate singularity at -1/rho, so
each working sequence is first smoothed by a few rounds of adjacent-pair
averaging, which demotes the alternating part by one power of n per round
while keeping the smooth 1/n expansion intact (at half-index shifts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientData, ZeroSequence

_SMOOTH_ROUNDS = 3
_RICHARDSON_DEPTH = 4


@dataclass(frozen=True)
class SeriesAnalysis:
    rho: float
    alpha: float
    const_estimate: float
    rho_uncertainty: float
    alpha_uncertainty: float
    const_uncertainty: float
    stride: int
    modulation_period: int
    n_used: int
    diagnostics: tuple[float, ...]  # residuals per extrapolation level
    converged: bool


def detect_stride(coeffs) -> tuple[int, int]:
    """(stride, first): the largest clean tail progression of the support.

    The stride comes from the tail of the nonzero indices (the asymptotic
    support; early transient zeros are common and irrelevant), and `first`
    is walked back as far as the progression stays nonzero.
    """
    nz = [n for n, c in enumerate(coeffs) if c != 0]
    if not nz:
        raise ZeroSequence("all coefficients vanish")
    if len(nz) == 1:
        return 1, nz[0]
    tail = nz[-min(len(nz), 16):]
    stride = 0
    for a, b in zip(tail, tail[1:]):
        stride = math.gcd(stride, b - a)
    stride = max(stride, 1)
    nzset = set(nz)
    first = nz[-1]
    while first - stride in nzset:
        first -= stride
    return stride, first


def _pair_average(values: list[float], ks: list[float]) -> tuple[list[float], list[float]]:
    out = [(a + b) / 2 for a, b in zip(values, values[1:])]
    kout = [(a + b) / 2 for a, b in zip(ks, ks[1:])]
    return out, kout


def _boxcar(values: list[float], ks: list[float], p: int) -> tuple[list[float], list[float]]:
    if p <= 1:
        return values, ks
    out = [sum(values[i : i + p]) / p for i in range(len(values) - p + 1)]
    kout = [k + (p - 1) / 2 for k in ks[: len(out)]]
    return out, kout


def _wobble(values: list[float]) -> float:
    if len(values) < 3:
        return 0.0
    return sum(
        abs(values[i + 2] - 2 * values[i + 1] + values[i]) for i in range(len(values) - 2)
    ) / (len(values) - 2)


def _detect_period(values: list[float]) -> int:
    """Length of the multiplicative modulation of the coefficient sequence.

    Several dominant singularities of equal modulus (at rotations of the
    positive one) modulate c_n by an order-one periodic factor; a boxcar
    over one full period cancels it exactly.  The period is chosen as the
    smallest candidate whose boxcar leaves the least second-difference
    wobble in the tail.
    """
    tail = values[-min(len(values), 160):]
    base = _wobble(tail)
    scale = 1.0 + abs(sum(tail) / len(tail))
    if base < 3e-4 * scale:
        return 1  # smooth already; boxcars would only blur the 1/k structure
    for p in (2, 3, 4, 6, 8, 12):
        if len(tail) < 3 * p + 8:
            continue
        sm, _ = _boxcar(tail, [0.0] * len(tail), p)
        # genuine period-p modulation cancels exactly, not just partially
        if _wobble(sm) < 0.02 * base:
            return p
    return 1


def _extrapolate(values: list[float], ks: list[float], depth: int) -> tuple[float, float, tuple[float, ...], bool]:
    """(estimate, uncertainty, residuals, converged) for a smooth-in-1/k tail.

    Extrapolates to 1/k -> 0 with polynomial models of degree 0..depth fitted
    over the tail window by least squares on Chebyshev-normalised nodes;
    pointwise Neville on the clustered tail nodes would amplify roundoff by
    (k/spacing)^depth, the windowed fit keeps the extrapolation stable.
    """
    window = min(len(values), max(4 * (depth + 1), len(values) // 2))
    v = np.asarray(values[-window:], dtype=float)
    x = 1.0 / np.asarray(ks[-window:], dtype=float)
    centre = float(x.mean())
    half = float(x.max() - x.min()) / 2 or 1.0
    t = (x - centre) / half
    t0 = (0.0 - centre) / half
    estimates = []
    for deg in range(depth + 1):
        design = np.polynomial.chebyshev.chebvander(t, deg)
        coef, *_ = np.linalg.lstsq(design, v, rcond=None)
        estimates.append(float(np.polynomial.chebyshev.chebval(t0, coef)))
    residuals = tuple(abs(b - a) for a, b in zip(estimates, estimates[1:]))
    tail = residuals[-3:]
    floor = 1e-9 * (1 + abs(estimates[-1]))  # roundoff floor of the fit
    converged = len(tail) < 2 or all(
        a >= b or b < floor for a, b in zip(tail, tail[1:])
    )
    uncertainty = residuals[-1] if residuals else math.inf
    return estimates[-1], uncertainty, residuals, converged


def growth_estimate(coeffs, stride: int | None = None) -> SeriesAnalysis:
    """Estimate (rho, alpha, const) for c_n ~ const * rho^n * n^alpha.

    All three are normalised to the strided subsequence index k, with
    sub[k] = coeffs[first + stride*k] ~ const * rho^k * k^alpha: rho is the
    growth per stride step (16 rather than 4 for parity-supported excursion
    counts) and const absorbs rho^first.  Needs at least 32 nonzero terms
    after the stride is applied.
    """
    coeffs = list(coeffs)
    auto_stride, first = detect_stride(coeffs)
    if stride is None:
        stride = auto_stride
    sub = coeffs[first::stride]
    if any(c == 0 for c in sub):
        raise InsufficientData("support does not match the requested stride")
    if len(sub) < 32:
        raise InsufficientData(f"{len(sub)} terms after stride; need >= 32")

    logs = [math.log(c) for c in sub]
    ks = [float(k) for k in range(len(sub))]

    # log-ratios ~ log rho + smooth(1/k) + periodic and alternating parts
    lr = [b - a for a, b in zip(logs, logs[1:])]
    krs = ks[1:]
    period = _detect_period(lr)
    lr, krs = _boxcar(lr, krs, period)
    for _ in range(_SMOOTH_ROUNDS):
        lr, krs = _pair_average(lr, krs)
    log_rho, u_logrho, res_rho, ok_rho = _extrapolate(lr, krs, _RICHARDSON_DEPTH)
    rho = math.exp(log_rho)

    # alpha from k * (r_k/rho - 1) with the same smoothing
    av = [k * math.expm1(v - log_rho) for v, k in zip(lr, krs)]
    alpha, u_alpha, res_alpha, ok_alpha = _extrapolate(av, krs, _RICHARDSON_DEPTH)

    # constant from n^-alpha rho^-n c_n, in log space (the geometric mean
    # over a modulation period when one is present)
    cv = [logs[k] - ks[k] * log_rho - alpha * math.log(ks[k]) for k in range(1, len(sub))]
    kcs = ks[1:]
    cv, kcs = _boxcar(cv, kcs, period)
    for _ in range(_SMOOTH_ROUNDS):
        cv, kcs = _pair_average(cv, kcs)
    log_const, u_logc, res_c, ok_c = _extrapolate(cv, kcs, _RICHARDSON_DEPTH)
    const = math.exp(log_const)

    return SeriesAnalysis(
        rho=rho,
        alpha=alpha,
        const_estimate=const,
        rho_uncertainty=rho * u_logrho,
        alpha_uncertainty=u_alpha,
        const_uncertainty=const * u_logc,
        stride=stride,
        modulation_period=period,
        n_used=len(sub),
        diagnostics=res_rho + res_alpha + res_c,
        converged=ok_rho and ok_alpha and ok_c,
    )


@dataclass(frozen=True)
class PredictionReport:
    ok: bool
    rho_ok: bool
    alpha_ok: bool
    const_ok: bool
    rho_deviation: float
    alpha_deviation: float
    const_deviation: float
    analysis: SeriesAnalysis


def verify_prediction(
    coeffs,
    rho0: float,
    alpha0: float,
    const0: float,
    rho_rel_tol: float = 1e-6,
    alpha_abs_tol: float = 1e-2,
    const_rel_tol: float = 1e-2,
    stride: int | None = None,
) -> PredictionReport:
    """Compare extrapolated (rho, alpha, const) against a prediction."""
    analysis = growth_estimate(coeffs, stride=stride)
    dr = abs(analysis.rho - rho0) / abs(rho0)
    da = abs(analysis.alpha - alpha0)
    dc = abs(analysis.const_estimate - const0) / abs(const0)
    rho_ok = dr < rho_rel_tol
    alpha_ok = da < alpha_abs_tol
    const_ok = dc < const_rel_tol
    return PredictionReport(
        ok=rho_ok and alpha_ok and const_ok,
        rho_ok=rho_ok,
        alpha_ok=alpha_ok,
        const_ok=const_ok,
        rho_deviation=dr,
        alpha_deviation=da,
        const_deviation=dc,
        analysis=analysis,
    )
