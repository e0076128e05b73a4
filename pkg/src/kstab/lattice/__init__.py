"""Surface lattices, built-in del Pezzo models and Zariski decomposition."""
from .builtin import BLOWUP_OF, builtin_models, get_model, register_model
from .io import dumps_model, loads_model, model_from_dict, model_to_dict
from .model import Curve, DivisorClass, RankMismatch, SurfaceModel, intersect
from .zariski import (
    CatalogIncomplete,
    Chamber,
    ChamberSplitError,
    NotPseudoEffective,
    PiecewiseDecomposition,
    ZariskiError,
    ZariskiFixed,
    certify_family,
    negative_definite,
    pseff_threshold,
    zariski_family,
    zariski_family_split,
    zariski_fixed,
)

__all__ = [
    "dumps_model",
    "loads_model",
    "model_from_dict",
    "model_to_dict",
    "BLOWUP_OF",
    "CatalogIncomplete",
    "Chamber",
    "ChamberSplitError",
    "Curve",
    "DivisorClass",
    "NotPseudoEffective",
    "PiecewiseDecomposition",
    "RankMismatch",
    "SurfaceModel",
    "ZariskiError",
    "ZariskiFixed",
    "builtin_models",
    "certify_family",
    "get_model",
    "intersect",
    "negative_definite",
    "pseff_threshold",
    "register_model",
    "zariski_family",
    "zariski_family_split",
    "zariski_fixed",
]
