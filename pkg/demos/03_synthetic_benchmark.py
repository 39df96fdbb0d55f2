"""Cross-validated comparison on the two-flank synthetic dataset.

The minority class sits on two thin bands either side of a dense majority
band.  Straight-line interpolation between minority neighbours on opposite
flanks drops synthetic points inside the majority band; gamma steps mostly
stay close to their source point.

Run:  python demos/03_synthetic_benchmark.py  [--forest]
"""

import sys

from gamma_balance import (ClassifierSpec, ExperimentConfig, ForestParams, SamplerSpec,
                           run_experiment)
from gamma_balance.io import render_report
from gamma_balance.synth import SynthSpec, generate

ds = generate(SynthSpec(seed=0))
classifiers = [ClassifierSpec("knn", k_vote=5)]
if "--forest" in sys.argv:
    classifiers.append(ClassifierSpec("forest", forest=ForestParams(n_trees=50)))

cfg = ExperimentConfig(
    dataset=ds,
    samplers=[SamplerSpec(m) for m in ("none", "ros", "rus", "smote", "adasyn", "gamma")],
    classifiers=classifiers,
    n_folds=5,
    seed=0,
    dataset_name="synthetic",
)
report = run_experiment(cfg)
print(render_report(report, "markdown"))
