import math
from pathlib import Path

import numpy as np
import pytest

import cesaro

DATA = Path(__file__).resolve().parents[2] / "data"


def test_lebesgue_moments():
    mu = cesaro.Measure.lebesgue().moments(16)
    assert mu.shape == (17,)
    np.testing.assert_allclose(mu, 1.0 / np.arange(1, 18), rtol=0, atol=1e-13)


def test_atom_moment():
    assert cesaro.Measure.point(1.0, 0.9).moment(8) == pytest.approx(0.43046721, abs=1e-15)


def test_measure_from_file_and_json():
    m = cesaro.Measure.load(str(DATA / "measures" / "mix.json"))
    m2 = cesaro.Measure.from_json(m.to_json())
    assert m2.moment(5) == m.moment(5)
    assert m.moment(64) == pytest.approx(m.moment_via_tail(64), abs=1e-9)


def test_classical_cesaro():
    rng = np.random.default_rng(3)
    a = rng.normal(size=64) + 1j * rng.normal(size=64)
    b = cesaro.cesaro_like(cesaro.Measure.lebesgue(), a)
    np.testing.assert_allclose(b, np.cumsum(a) / np.arange(1, 65), rtol=1e-12)


def test_series_and_integral_forms_agree():
    m = cesaro.Measure.power(2.0)
    f = cesaro.log_one_over_one_minus_z(512)
    b = cesaro.cesaro_like(m, f)
    z = 0.5 * np.exp(0.7j)
    series = np.polynomial.polynomial.polyval(z, b)
    assert abs(series - cesaro.cesaro_like_integral(m, f, z)) < 1e-10


def test_norms():
    z = np.array([0.0, 1.0])
    assert cesaro.bloch_norm(z) == pytest.approx(1.0, abs=1e-6)
    assert cesaro.besov_norm(z, 2.0) == pytest.approx(1.0, abs=1e-6)
    assert cesaro.mean_lipschitz_norm(z, 2.0, 0.5) == pytest.approx(1.0, abs=1e-6)
    assert 1.99 < cesaro.bloch_norm(cesaro.log_one_over_one_minus_z(4096)) <= 2.0


def test_classify():
    v = cesaro.classify(cesaro.Measure.lebesgue(), s=1.0, alpha=0.0)
    assert v["label"] == "finite-looking"
    assert v["agreement"] is True
    assert cesaro.classify(cesaro.Measure.point(1.0, 0.5), s=1.0)["label"] == "vanishing"


def test_lower_bound_statistic():
    value = cesaro.lower_bound_statistic(cesaro.Measure.lebesgue(), 2.0, 15)
    assert value == pytest.approx(15 / 16 * math.sqrt(math.log(16)), rel=1e-12)


def test_verify_small():
    r = cesaro.verify(cesaro.Measure.lebesgue(), "boundedness", 2.0, 2.0, t_depth=8, degree=1 << 13)
    assert r["verdict"] == "not bounded"
    assert len(r["ladder"]) == 8


def test_errors():
    with pytest.raises(ValueError):
        cesaro.Measure.point(1.0, 1.0).moment(1)
    with pytest.raises(ValueError):
        cesaro.Measure.from_json('{"components": []}')
    with pytest.raises(ValueError):
        cesaro.verify(cesaro.Measure.lebesgue(), "nonsense")
