"""Python access to the ecm-bench core."""

import json
from pathlib import Path

from ._core import (
    EcmError,
    canonical_config,
    list_experiments,
    measurements,
    predict_false_targets,
)
from ._core import run_experiment as _run_experiment

__all__ = [
    "EcmError",
    "canonical_config",
    "list_experiments",
    "measurements",
    "predict_false_targets",
    "run_experiment",
]


def run_experiment(config, out_dir, experiment=""):
    """Run one experiment. `config` may be a path, a JSON string or a dict."""
    if isinstance(config, dict):
        text = json.dumps(config)
    elif isinstance(config, Path) or (isinstance(config, str) and not config.lstrip().startswith("{")):
        text = Path(config).read_text()
    else:
        text = config
    return _run_experiment(text, Path(out_dir), experiment)
