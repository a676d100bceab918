"""Defect prediction from stylistic source metrics.

The heavy lifting lives in the compiled extension; this package just
re-exports it.
"""

from ._core import (  # noqa: F401
    CATALOG_VERSION,
    ConfigurationError,
    Model,
    PipelineError,
    __version__,
    catalog,
    catalog_details,
    compute_metrics,
    evaluate,
    is_bug_fixing,
    label_archive,
    smote,
    tokenize,
    train,
    vif_filter,
    vif_scores,
    wilcoxon_signed_rank,
)

__all__ = [
    "CATALOG_VERSION",
    "ConfigurationError",
    "Model",
    "PipelineError",
    "__version__",
    "catalog",
    "catalog_details",
    "compute_metrics",
    "evaluate",
    "is_bug_fixing",
    "label_archive",
    "smote",
    "tokenize",
    "train",
    "vif_filter",
    "vif_scores",
    "wilcoxon_signed_rank",
]
