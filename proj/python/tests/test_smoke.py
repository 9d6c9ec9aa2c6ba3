import math

import numpy as np
import pytest

import distkit


def test_normal_density_and_quantile():
    d = distkit.distribution("Normal", [0.0, 1.0])
    assert d.family == "Normal"
    assert d.pdf(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-15)
    xs = np.linspace(-3, 3, 7)
    assert np.allclose(d.cdf(d.quantile(d.cdf(xs))), d.cdf(xs), atol=1e-12)
    assert d.cf(0.0) == 1


def test_sampling_is_seeded():
    d = distkit.distribution("Gamma", [10.0, 2.0])
    a = d.sample(100, seed=42)
    b = d.sample(100, seed=42)
    assert a.shape == (100,)
    assert (a > 0).all()
    assert np.array_equal(a, b)


def test_fit_recovers_normal():
    x = distkit.distribution("Normal", [50.0, 10.0]).sample(1000, seed=7)
    f = distkit.fit("Normal", x)
    mu, sigma = f.params
    assert abs(mu - 50) < 1.0
    assert mu == pytest.approx(x.mean(), rel=1e-13)
    assert sigma == pytest.approx(x.std(), rel=1e-12)
    assert distkit.fit("Normal", [1.0, 3.0], fixed={"mu": 2.0}).params == [2.0, 1.0]


def test_errors_carry_their_code():
    with pytest.raises(distkit.DistkitError, match="InvalidParameter"):
        distkit.distribution("Normal", [0.0, -1.0])
    with pytest.raises(ValueError, match="NotASimplex"):
        n = distkit.distribution("Normal", [0.0, 1.0])
        distkit.mixture([n, n], [0.6, 0.5])


def test_mixture_density():
    comps = [distkit.distribution("Normal", p) for p in ([-1, 0.3], [0, 0.5], [3, 1])]
    m = distkit.mixture(comps, [0.25, 0.25, 0.5])
    assert m.pdf(0.0) == pytest.approx(0.2029724, abs=1e-6)
    assert distkit.from_json(m.to_json()).pdf(0.0) == m.pdf(0.0)


def test_kde_integrates_to_one():
    x = distkit.distribution("Normal", [0.0, 1.0]).sample(500, seed=1)
    grid, dens, h = distkit.kde(x)
    assert len(grid) == len(dens) == 2048
    assert h > 0
    assert abs(float(np.sum((dens[1:] + dens[:-1]) * np.diff(grid)) / 2) - 1) < 1e-3


def test_histogram_and_em():
    edges, counts = distkit.histogram([1.0, 2.0, 2.0, 3.0], bins=2)
    assert counts.sum() == 4
    rng = np.random.default_rng(0)
    x = np.vstack([rng.normal(0, 0.3, (200, 2)), rng.normal(10, 0.3, (200, 2))])
    r = distkit.em(x, k=2)
    means = sorted(m[0] for m in r["means"])
    assert abs(means[0]) < 0.1 and abs(means[1] - 10) < 0.1
    assert np.all(np.diff(r["trace"]) >= -1e-10)
    mu, cov = distkit.fit_mvnormal(x)
    assert mu.shape == (2,) and cov.shape == (2, 2)
