"""Kernel PCA accelerated by reduced-set density estimates.

The package replaces the full n-point kernel eigenproblem with an
m-point density-weighted surrogate built from a single-pass shadow
reduced set, alongside Nystrom-family baselines, worst-case bound
verifiers, and a benchmark CLI.

Submodules are imported lazily so the CLI can cap BLAS thread pools
before the numerical stack loads.
"""

import importlib

__version__ = "0.1.0"

_EXPORTS = {
    "KernelConfig": "rskpca.kernels",
    "ReducedSet": "rskpca.rsde",
    "KpcaModel": "rskpca.kpca",
    "DataSet": "rskpca.dataio",
    "BoundReport": "rskpca.metrics",
    "TrialResult": "rskpca.evaluation",
    "ExperimentSpec": "rskpca.cli",
}

__all__ = ["__version__", *_EXPORTS]


def __getattr__(name):
    if name in _EXPORTS:
        return getattr(importlib.import_module(_EXPORTS[name]), name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
