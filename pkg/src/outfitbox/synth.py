"""Synthetic catalogs and pair datasets for demos and tests.

Items carry a dominant hue and a pattern; titles mention both, so the text
branch sees the same structure the patch histograms expose. Pair labels
follow a simple separable rule: two items are compatible iff their dominant
hues match.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .catalog import Catalog, ClothingType, FeatureStore, Item, Occasion, tokenize
from .decoder import PairType
from .encoder import HUE_WHEEL, PATTERNS, PatchHistogramEncoder, build_feature_store
from .training import PairDataset

_CATEGORIES = {
    ClothingType.TOP_WEAR: ("tshirt", "shirt"),
    ClothingType.BOTTOM_WEAR: ("jeans", "shorts"),
    ClothingType.FOOT_WEAR: ("trainer", "sandals"),
}

_PRICE_RANGES = {
    ClothingType.TOP_WEAR: (300, 2800),
    ClothingType.BOTTOM_WEAR: (400, 2900),
    ClothingType.FOOT_WEAR: (500, 2900),
}


@dataclass
class SyntheticWorld:
    """A generated catalog plus everything derived from it."""

    catalog: Catalog
    features: FeatureStore
    attributes: dict[str, tuple[str, str]]  # id -> (hue, pattern)

    def hue_of(self, item_id: str) -> str:
        return self.attributes[item_id][0]


def make_world(
    per_type: int = 24,
    hues: tuple[str, ...] = ("red", "green", "blue", "yellow"),
    encoder: PatchHistogramEncoder | None = None,
    seed: int = 7,
) -> SyntheticWorld:
    """Catalog with `per_type` items per clothing type, cycling hues,
    patterns, categories and occasions deterministically."""
    rng = np.random.default_rng(seed)
    for hue in hues:
        if hue not in HUE_WHEEL:
            raise ValueError(f"unknown hue {hue!r}")
    items: list[Item] = []
    attributes: dict[str, tuple[str, str]] = {}
    for t in ClothingType:
        cats = _CATEGORIES[t]
        lo, hi = _PRICE_RANGES[t]
        for k in range(per_type):
            hue = hues[k % len(hues)]
            pattern = PATTERNS[k % len(PATTERNS)]
            category = cats[k % len(cats)]
            occasion = Occasion.CASUAL if k % 2 == 0 else Occasion.FORMAL
            item_id = f"{t.short}{k:03d}"
            price = int(rng.integers(lo, hi))
            items.append(
                Item(
                    id=item_id,
                    type=t,
                    category=category,
                    occasion=occasion,
                    price=price,
                    title_tokens=frozenset(tokenize(f"{hue} {pattern} {category}")),
                    feature_ref=item_id,
                )
            )
            attributes[item_id] = (hue, pattern)
    catalog = Catalog(items)
    features = build_feature_store(items, attributes, encoder=encoder, seed=seed)
    return SyntheticWorld(catalog=catalog, features=features, attributes=attributes)


def hue_match_pairs(
    world: SyntheticWorld,
    pair_type: PairType,
    n_pos: int,
    n_neg: int,
    seed: int = 11,
) -> PairDataset:
    """Labeled pairs under the rule: compatible iff dominant hues match."""
    rng = np.random.default_rng(seed)
    left = list(world.catalog.items_of(pair_type.first))
    right = list(world.catalog.items_of(pair_type.second))
    pos: set[tuple[str, str]] = set()
    neg: set[tuple[str, str]] = set()
    max_tries = 200 * (n_pos + n_neg)
    tries = 0
    while (len(pos) < n_pos or len(neg) < n_neg) and tries < max_tries:
        tries += 1
        a = left[int(rng.integers(len(left)))]
        b = right[int(rng.integers(len(right)))]
        same = world.hue_of(a.id) == world.hue_of(b.id)
        if same and len(pos) < n_pos:
            pos.add((a.id, b.id))
        elif not same and len(neg) < n_neg:
            neg.add((a.id, b.id))
    if len(pos) < n_pos or len(neg) < n_neg:
        raise ValueError(
            f"could not sample {n_pos}+/{n_neg}- pairs from {len(left)}x{len(right)} items"
        )
    return PairDataset(pair_type, tuple(sorted(pos)), tuple(sorted(neg)))


def pooled_pair_features(world: SyntheticWorld, dataset: PairDataset) -> tuple[np.ndarray, np.ndarray]:
    """Baseline feature matrix for the hue-match rule: element-wise absolute
    difference and product of the two items' pooled feature maps. Returns
    (X, y) for a linear classifier sanity check."""
    rows = []
    labels = []
    for a_id, b_id, y in dataset.labeled():
        a = world.catalog.get(a_id)
        b = world.catalog.get(b_id)
        ga = world.features.feature_map(a.feature_ref).mean(axis=0)
        gb = world.features.feature_map(b.feature_ref).mean(axis=0)
        rows.append(np.concatenate([np.abs(ga - gb), ga * gb]))
        labels.append(y)
    return np.stack(rows), np.array(labels)
