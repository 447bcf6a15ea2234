"""Shared fixtures: hand-built catalogs, a synthetic world and trained
desk-scale checkpoints reused across service, CLI and acceptance tests."""

from __future__ import annotations

import numpy as np
import pytest

from outfitbox.catalog import Catalog, ClothingType, FeatureStore, Item, Occasion, tokenize
from outfitbox.decoder import HyperParams, PairType
from outfitbox.synth import SyntheticWorld, hue_match_pairs, make_world
from outfitbox.training import save_checkpoint, train_decoder

CASUAL = Occasion.CASUAL
FORMAL = Occasion.FORMAL
TW, BW, FW = ClothingType.TOP_WEAR, ClothingType.BOTTOM_WEAR, ClothingType.FOOT_WEAR

_CATEGORY_FOR = {TW: "tshirt", BW: "jeans", FW: "trainer"}


def mk_item(
    item_id: str,
    t: ClothingType,
    category: str | None = None,
    occasion: Occasion = CASUAL,
    price: int = 100,
    title: str = "",
) -> Item:
    return Item(
        id=item_id,
        type=t,
        category=category or _CATEGORY_FOR[t],
        occasion=occasion,
        price=price,
        title_tokens=frozenset(tokenize(title)),
        feature_ref=item_id,
    )


def grid_catalog(n_tw: int, n_bw: int, n_fw: int, price: int = 100) -> tuple[Catalog, FeatureStore]:
    """Catalog whose global feature vectors are the item index, so retrieval
    ranks by index distance; feature maps are placeholder 1x1 zeros."""
    items: list[Item] = []
    for t, n in ((TW, n_tw), (BW, n_bw), (FW, n_fw)):
        for k in range(n):
            items.append(mk_item(f"{t.short}{k:03d}", t, price=price, title=f"item {k}"))
    globals_ = {}
    maps = {}
    for t, n in ((TW, n_tw), (BW, n_bw), (FW, n_fw)):
        for k in range(n):
            ref = f"{t.short}{k:03d}"
            globals_[ref] = np.array([float(k)])
            maps[ref] = np.zeros((1, 1))
    return Catalog(items), FeatureStore(globals_, maps)


@pytest.fixture(scope="session")
def world() -> SyntheticWorld:
    return make_world(per_type=48, seed=7)


@pytest.fixture(scope="session")
def desk_hyper() -> HyperParams:
    return HyperParams.desk(epochs=12, seed=0)


@pytest.fixture(scope="session")
def checkpoint_dir(tmp_path_factory, world, desk_hyper):
    """Three trained desk-scale decoders for the synthetic world."""
    out = tmp_path_factory.mktemp("ckpts")
    for n, pt in enumerate(PairType):
        dataset = hue_match_pairs(world, pt, 240, 240, seed=13 + n)
        result = train_decoder(dataset, world.catalog, world.features, desk_hyper)
        save_checkpoint(out / f"{pt.tag}.npz", result.params, desk_hyper, world.catalog.vocab_sha256())
    return out


@pytest.fixture(scope="session")
def demo_paths(tmp_path_factory, world, checkpoint_dir):
    """Catalog and feature files on disk, as the CLI and service expect."""
    root = tmp_path_factory.mktemp("demo")
    catalog_path = root / "catalog.jsonl"
    catalog_path.write_text(world.catalog.to_jsonl(), encoding="utf-8")
    features_path = root / "features.npz"
    world.features.save(features_path)
    return {
        "catalog": str(catalog_path),
        "features": str(features_path),
        "ckpt_dir": str(checkpoint_dir),
        "root": root,
    }
