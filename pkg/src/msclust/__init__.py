"""Deterministic and stochastic flat-kernel mean-shift clustering.

Library surface: the two engines plus mode merging (`engine`), exact
radius-neighbor indexing (`neighbors`), external evaluation criteria
(`metrics`), Gaussian-mixture synthesis with seven built-in benchmark
sets (`synth`), and file/plot/benchmark plumbing (`dataio`, `svgplot`,
`bench`). `msclust.cli` wraps it all as a batch command line.
"""

from ._kernels import NUMBA_ENABLED
from .engine import (
    ClusteringResult,
    RunConfig,
    cluster_deterministic,
    cluster_stochastic,
    mean_shift_vector,
    merge_modes,
)
from .geometry import LabeledDataset, centroid, euclidean_distance
from .metrics import (
    ContingencyTable,
    GScores,
    KScores,
    build_contingency,
    g_criterion,
    k_criterion,
    multiclass_gini,
)
from .neighbors import NeighborIndex
from .synth import ClassSpec, MixtureSpec, builtin_set, sample_mixture

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "ClusteringResult",
    "RunConfig",
    "cluster_deterministic",
    "cluster_stochastic",
    "mean_shift_vector",
    "merge_modes",
    "LabeledDataset",
    "centroid",
    "euclidean_distance",
    "ContingencyTable",
    "GScores",
    "KScores",
    "build_contingency",
    "g_criterion",
    "k_criterion",
    "multiclass_gini",
    "NeighborIndex",
    "ClassSpec",
    "MixtureSpec",
    "builtin_set",
    "sample_mixture",
    "__version__",
]
