import numpy as np
import pytest

from gamma_balance import classifiers as C
from gamma_balance.evaluation import ExperimentConfig, derive_seed, run_experiment, stratified_folds
from gamma_balance.exceptions import ConfigError, TooFewSamples
from gamma_balance.io import render_report
from gamma_balance.metrics import METRIC_NAMES, MetricBundle
from gamma_balance.samplers import SamplerSpec

from conftest import make_dataset


def test_folds_exact_stratification():
    ds = make_dataset(10, 40)
    for tr, te in stratified_folds(ds, 5, seed=3):
        assert te.size == 10
        assert int(ds.labels[te].sum()) == 2


def test_folds_uneven_and_partition():
    ds = make_dataset(7, 13)
    folds = stratified_folds(ds, 5, seed=1)
    seen = np.concatenate([te for _, te in folds])
    assert sorted(seen.tolist()) == list(range(20))
    sizes = [te.size for _, te in folds]
    assert max(sizes) - min(sizes) <= 1
    for tr, te in folds:
        assert int(ds.labels[te].sum()) in (1, 2)
        assert not set(tr) & set(te)
        assert tr.size + te.size == 20


def test_folds_too_few():
    with pytest.raises(TooFewSamples):
        stratified_folds(make_dataset(3, 20), 5)
    with pytest.raises(ConfigError):
        stratified_folds(make_dataset(3, 20), 1)


def test_derive_seed_distinct_and_stable():
    a = derive_seed(0, "gamma", 0)
    assert a == derive_seed(0, "gamma", 0)
    assert len({a, derive_seed(0, "gamma", 1), derive_seed(0, "smote", 0), derive_seed(1, "gamma", 0)}) == 4


def _config(ds, seed=0, methods=("none", "gamma"), clfs=("knn", "majority")):
    return ExperimentConfig(
        dataset=ds,
        samplers=[SamplerSpec(m) for m in methods],
        classifiers=[C.ClassifierSpec(c, k_vote=3) for c in clfs],
        n_folds=5, seed=seed, dataset_name="toy",
    )


@pytest.fixture(scope="module")
def toy_report():
    return run_experiment(_config(make_dataset(20, 80, seed=7)))


def test_grid_shape(toy_report):
    assert set(toy_report.cells) == {(m, c) for m in ("none", "gamma") for c in ("knn", "majority")}
    for cell in toy_report.cells.values():
        assert len(cell.folds) == 5
    assert len(toy_report.audits) == 2 * 5


def test_reported_mean_is_fold_mean(toy_report):
    for cell in toy_report.cells.values():
        for k in METRIC_NAMES:
            direct = sum(getattr(b, k) for b in cell.folds) / len(cell.folds)
            assert abs(getattr(cell.mean, k) - direct) <= 1e-12


def test_no_leak(toy_report):
    for a in toy_report.audits:
        assert not set(a.train_rows.tolist()) & set(a.test_rows.tolist())


def test_majority_dummy_scores_zero(toy_report):
    for b in toy_report.cell("none", "majority").folds:
        assert b.recall == 0.0 and b.f1 == 0.0 and b.precision == 0.0


def test_reports_reproducible():
    ds = make_dataset(20, 80, seed=7)
    a = render_report(run_experiment(_config(ds, seed=5)), "json")
    b = render_report(run_experiment(_config(ds, seed=5)), "json")
    assert a == b


def test_header_records_protocol(toy_report):
    h = toy_report.header
    assert h["dataset"]["minority_count"] == 20 and h["dataset"]["majority_count"] == 80
    assert h["protocol"]["n_folds"] == 5
    assert [s["method"] for s in h["samplers"]] == ["none", "gamma"]


def test_config_validation():
    ds = make_dataset(10, 20)
    with pytest.raises(ConfigError):
        ExperimentConfig(ds, [SamplerSpec("gamma"), SamplerSpec("gamma")], [C.ClassifierSpec("knn")])
    with pytest.raises(ConfigError):
        ExperimentConfig(ds, [], [C.ClassifierSpec("knn")])


def test_failure_names_fold_and_cell():
    # k_vote larger than a training fold
    cfg = ExperimentConfig(make_dataset(5, 10), [SamplerSpec("none")],
                           [C.ClassifierSpec("knn", k_vote=50)], n_folds=5)
    with pytest.raises(ConfigError, match=r"fold 0, none/knn"):
        run_experiment(cfg)
