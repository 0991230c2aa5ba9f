"""Tests for fuzzification, intensification, defuzzification and the fuzzy method."""

import numpy as np
import pytest
from pydantic import ValidationError

from core.errors import DegenerateHistogram, NoCornerComponent
from imaging.types import GrayImage
from metrics.overlap import jaccard
from segmentation.fuzzy import (
    FuzzyParams,
    default_params,
    defuzzify,
    fuzzify,
    fuzzy_pectoral,
    intensify,
    resolve_params,
)


def test_default_params_from_percentiles():
    roi = GrayImage.from_array([[10, 10], [200, 200]], 255)
    params = default_params(roi)
    assert params.crossover == 200
    assert params.bandwidth >= 1
    assert params.int_exponent == 2
    assert params.defuzz_threshold == 0.5


def test_default_params_match_sorted_percentiles(rng):
    values = rng.integers(0, 256, size=(17, 23))
    params = default_params(GrayImage.from_array(values, 255))
    ordered = np.sort(values.ravel())
    assert params.crossover == pytest.approx(np.percentile(ordered, 75))
    expected_bw = max(1.0, np.percentile(ordered, 95) - np.percentile(ordered, 55))
    assert params.bandwidth == pytest.approx(expected_bw)


def test_default_params_constant_roi():
    with pytest.raises(DegenerateHistogram):
        default_params(GrayImage.from_array(np.full((4, 4), 90), 255))


def test_bandwidth_floor():
    # 95th and 55th percentile coincide
    values = np.array([[0] + [100] * 19])
    assert default_params(GrayImage.from_array(values, 255)).bandwidth == 1.0


@pytest.mark.parametrize(
    "fields",
    [
        {"crossover": 100, "bandwidth": 0},
        {"crossover": 100, "bandwidth": 5, "defuzz_threshold": 1.0},
        {"crossover": 100, "bandwidth": 5, "defuzz_threshold": 0.0},
        {"crossover": 100, "bandwidth": 5, "int_exponent": 0.5},
    ],
)
def test_params_invariants(fields):
    with pytest.raises(ValidationError):
        FuzzyParams(**fields)


def test_overrides_are_validated():
    params = FuzzyParams(crossover=100, bandwidth=10)
    assert params.with_overrides({"crossover": 120, "bandwidth": None}).crossover == 120
    with pytest.raises(ValidationError):
        params.with_overrides({"bandwidth": -1})


def test_resolve_params_skips_defaults_when_complete():
    flat = GrayImage.from_array(np.full((3, 3), 50), 255)
    params = resolve_params(flat, {"crossover": 80, "bandwidth": 4})
    assert (params.crossover, params.bandwidth) == (80, 4)


def test_fuzzify_midpoint_and_saturation():
    params = FuzzyParams(crossover=100, bandwidth=20)
    img = GrayImage.from_array([[0, 80, 100, 120, 255]], 255)
    mu = fuzzify(img, params)
    assert mu.tolist() == [[0.0, 0.0, 0.5, 1.0, 1.0]]


def test_fuzzify_shape_between_breakpoints():
    params = FuzzyParams(crossover=100, bandwidth=20)
    mu = fuzzify(GrayImage.from_array([[90, 110]], 255), params)
    assert mu[0, 0] == pytest.approx(2 * (10 / 40) ** 2)
    assert mu[0, 1] == pytest.approx(1 - 2 * (10 / 40) ** 2)


def test_fuzzify_is_monotone(rng):
    values = GrayImage.from_array(np.arange(256)[None, :], 255)
    for _ in range(25):
        params = FuzzyParams(crossover=float(rng.uniform(0, 255)), bandwidth=float(rng.uniform(0.5, 80)))
        mu = fuzzify(values, params).ravel()
        assert np.all(np.diff(mu) >= 0)
        assert mu.min() >= 0 and mu.max() <= 1


def test_intensify_examples():
    assert intensify(np.array([0.5]), 3.7)[0] == pytest.approx(0.5)
    assert intensify(np.array([0.5]), 2)[0] == 0.5
    assert intensify(np.array([0.25]), 2)[0] == pytest.approx(0.125)
    mu = np.linspace(0, 1, 11)
    assert np.allclose(intensify(mu, 1), mu, atol=1e-15)
    with pytest.raises(ValueError):
        intensify(mu, 0.9)


def test_intensify_is_monotone_and_bounded(rng):
    mu = np.sort(rng.random(500))
    for e in (1.0, 1.5, 2.0, 4.0):
        out = intensify(mu, e)
        assert np.all(np.diff(out) >= 0)
        assert out.min() >= 0 and out.max() <= 1
    assert intensify(np.array([0.0, 0.5, 1.0]), 3).tolist() == [0.0, 0.5, 1.0]


def test_defuzzify_is_inclusive():
    assert defuzzify(np.array([0.4, 0.5, 0.6]), 0.5).tolist() == [False, True, True]
    assert defuzzify(np.ones((2, 2)), 0.9).all()
    assert not defuzzify(np.zeros((2, 2)), 0.1).any()


def test_defuzzify_is_antitone(rng):
    mu = rng.random((30, 30))
    masks = [defuzzify(mu, thr) for thr in (0.2, 0.4, 0.6, 0.8)]
    for looser, stricter in zip(masks, masks[1:]):
        assert not (stricter & ~looser).any()


def test_fuzzy_pectoral_on_phantom(left_phantom):
    mask = fuzzy_pectoral(left_phantom.image, left_phantom.breast)
    assert jaccard(mask, left_phantom.pectoral) >= 0.8
    assert not (mask & ~left_phantom.breast).any()


def test_fuzzy_pectoral_with_all_zero_membership():
    img = GrayImage.from_array(np.full((20, 20), 50), 255)
    breast = np.ones((20, 20), dtype=bool)
    with pytest.raises(NoCornerComponent):
        fuzzy_pectoral(img, breast, {"crossover": 200, "bandwidth": 10})
