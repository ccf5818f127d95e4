"""Level-set uncertainty entropy for ensemble scalar fields."""

from ._core import (
    EnsembleField,
    EntropyField,
    GridDims,
    ModelField,
    bin_sweep,
    compare_models,
    entropy_field,
    fit_model,
    inject_noise,
    load_ensemble,
    make_ensemble,
    normal_cdf,
    render_entropy_map,
    slice_z,
    storage_cost,
    subsample,
    write_ensemble,
)

__all__ = [
    "EnsembleField",
    "EntropyField",
    "GridDims",
    "ModelField",
    "bin_sweep",
    "compare_models",
    "entropy_field",
    "fit_model",
    "inject_noise",
    "load_ensemble",
    "make_ensemble",
    "normal_cdf",
    "render_entropy_map",
    "slice_z",
    "storage_cost",
    "subsample",
    "write_ensemble",
]
