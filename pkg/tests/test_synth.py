import numpy as np
import pytest

from gamma_balance import synth
from gamma_balance.dataset import class_counts
from gamma_balance.exceptions import ConfigError


def test_default_counts(synthetic):
    s = class_counts(synthetic)
    assert (s.majority_count, s.minority_count) == (4950, 550)
    assert synthetic.n_features == 2 and s.minority_label == 1


def test_balanced_fraction():
    s = class_counts(synth.generate(synth.SynthSpec(n_total=200, minority_frac=0.5)))
    assert s.majority_count == s.minority_count == 100


def _perp(X):
    # signed distance from the line y = x
    return (X[:, 1] - X[:, 0]) / np.sqrt(2.0)


def test_flanks_split_evenly(synthetic):
    spec = synth.SynthSpec()
    d = _perp(synthetic.features[synthetic.labels == 1]) * np.sqrt(2.0)
    upper = np.sum(d > 0)
    assert abs(upper - 275) <= 1 and abs((d.size - upper) - 275) <= 1
    assert np.all(np.abs(np.abs(d) - spec.offset) < 6 * spec.minority_noise)


def test_majority_band(synthetic):
    spec = synth.SynthSpec()
    resid = synthetic.features[synthetic.labels == 0]
    dev = resid[:, 1] - resid[:, 0]
    assert np.mean(np.abs(dev) <= 4 * spec.majority_noise) >= 0.99
    assert abs(dev.mean()) < 4 * spec.majority_noise / np.sqrt(dev.size)


def test_minority_jitter_is_perpendicular(synthetic):
    spec = synth.SynthSpec()
    m = synthetic.features[synthetic.labels == 1]
    resid = np.abs(_perp(m)) - spec.offset / np.sqrt(2.0)
    assert abs(resid.mean()) < 4 * spec.minority_noise / np.sqrt(resid.size)


def test_deterministic():
    a, b = synth.generate(synth.SynthSpec(seed=4)), synth.generate(synth.SynthSpec(seed=4))
    assert np.array_equal(a.features, b.features) and np.array_equal(a.labels, b.labels)
    c = synth.generate(synth.SynthSpec(seed=5))
    assert not np.array_equal(a.features, c.features)


@pytest.mark.parametrize("kw", [
    dict(minority_frac=0.0), dict(minority_frac=1.0), dict(n_total=10, minority_frac=0.05),
    dict(offset=0.1, majority_noise=0.1), dict(length=0.0),
])
def test_invalid_spec(kw):
    with pytest.raises(ConfigError):
        synth.SynthSpec(**kw)
