import sys

import numpy as np
import pytest

from gamma_balance import LabeledDataset, synth


@pytest.fixture(scope="session")
def synthetic():
    return synth.generate(synth.SynthSpec(seed=0))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_dataset(n_pos, n_neg, d=2, seed=0):
    r = np.random.default_rng(seed)
    X = np.vstack([r.normal(1.0, 1.0, (n_pos, d)), r.normal(-1.0, 1.0, (n_neg, d))])
    y = np.r_[np.ones(n_pos, int), np.zeros(n_neg, int)]
    return LabeledDataset(X, y)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
