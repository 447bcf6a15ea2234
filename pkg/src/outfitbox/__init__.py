"""Budget-aware outfit box recommendation engine.

Pipeline: load a typed item catalog, retrieve preferred items per clothing
type, score cross-type combinations with trained pairwise compatibility
decoders, and pack a maximum number of verified outfits into a box whose
distinct-item total price fits the shopping budget.
"""

__version__ = "0.1.0"

from .catalog import Catalog, ClothingType, FeatureStore, Item, Occasion, load_catalog, load_features
from .retrieval import CatalogView, PreferenceQuery, TypePreference, rpi
from .decoder import DecoderParams, HyperParams, PairType
from .engine import Outfit, DecoderScorer, generate_preferred_outfits, score_outfit
from .solver import olr_solve, exact_solve, decantate

__all__ = [
    "Catalog",
    "CatalogView",
    "ClothingType",
    "DecoderParams",
    "DecoderScorer",
    "FeatureStore",
    "HyperParams",
    "Item",
    "Occasion",
    "Outfit",
    "PairType",
    "PreferenceQuery",
    "TypePreference",
    "decantate",
    "exact_solve",
    "generate_preferred_outfits",
    "load_catalog",
    "load_features",
    "olr_solve",
    "rpi",
    "score_outfit",
]
