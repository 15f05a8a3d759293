import math

import pytest

from qwalk import asymptotics, counting, steps
from qwalk.errors import InsufficientData, ZeroSequence


@pytest.fixture(scope="module")
def simple_table():
    return counting.count(steps.preset("simple"), 260, dense_max=0)


def test_geometric_sequence():
    an = asymptotics.growth_estimate([3 * 2**n for n in range(80)])
    assert an.rho == pytest.approx(2.0, rel=1e-9)
    assert an.alpha == pytest.approx(0.0, abs=1e-8)
    assert an.const_estimate == pytest.approx(3.0, rel=1e-8)
    assert an.converged


def test_polynomial_modulated_sequence():
    # c_n = 5e6 * 3^n / n^2 from n = 1; the strided-index normalisation
    # starts at the first nonzero term, so the constant absorbs one rho
    coeffs = [0] + [5 * 10**6 * 3**n // (n * n) for n in range(1, 220)]
    an = asymptotics.growth_estimate(coeffs)
    assert an.rho == pytest.approx(3.0, rel=1e-7)
    assert an.alpha == pytest.approx(-2.0, abs=1e-3)
    assert an.const_estimate == pytest.approx(15e6, rel=1e-3)


def test_stride_detection():
    assert asymptotics.detect_stride([1, 0, 2, 0, 10, 0, 50]) == (2, 0)
    assert asymptotics.detect_stride([0, 1, 1, 2, 3]) == (1, 1)
    with pytest.raises(ZeroSequence):
        asymptotics.detect_stride([0, 0, 0])


def test_insufficient_data():
    with pytest.raises(InsufficientData):
        asymptotics.growth_estimate([2**n for n in range(10)])


def test_simple_walk_excursions(simple_table):
    coeffs = counting.series(simple_table, "q00").coeffs
    an = asymptotics.growth_estimate(coeffs)
    assert an.stride == 2
    assert an.rho == pytest.approx(16.0, rel=1e-7)
    assert an.alpha == pytest.approx(-3.0, abs=1e-3)
    assert an.const_estimate == pytest.approx(4 / math.pi, rel=1e-3)


def test_simple_walk_axis_and_totals(simple_table):
    axis = counting.series(simple_table, "q10").coeffs
    an = asymptotics.growth_estimate(axis)
    assert an.rho == pytest.approx(4.0, rel=1e-6)
    assert an.alpha == pytest.approx(-2.0, abs=1e-2)
    assert an.const_estimate == pytest.approx(8 / math.pi, rel=1e-2)

    total = counting.series(simple_table, "q11").coeffs
    an = asymptotics.growth_estimate(total)
    assert an.rho == pytest.approx(4.0, rel=1e-7)
    assert an.alpha == pytest.approx(-1.0, abs=1e-2)
    assert an.const_estimate == pytest.approx(4 / math.pi, rel=1e-2)


def test_verify_prediction_pass_and_fail(simple_table):
    coeffs = counting.series(simple_table, "q00").coeffs
    good = asymptotics.verify_prediction(coeffs, 16.0, -3.0, 4 / math.pi)
    assert good.ok
    bad = asymptotics.verify_prediction(coeffs, 16.0, -3.0, 1.5)  # wrong constant
    assert not bad.ok and not bad.const_ok
    assert bad.const_deviation > 0.05
    wrong_rho = asymptotics.verify_prediction(coeffs, 15.9, -3.0, 4 / math.pi)
    assert not wrong_rho.ok and not wrong_rho.rho_ok


def test_uncertainties_reported(simple_table):
    coeffs = counting.series(simple_table, "q00").coeffs
    an = asymptotics.growth_estimate(coeffs)
    assert 0 <= an.rho_uncertainty < 1e-4
    assert an.diagnostics
