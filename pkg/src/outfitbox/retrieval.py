"""Preferred-item retrieval: category/price/occasion filter, then k-NN.

Candidates are filtered to the categories of the user's chosen items, the
half-open price band [lo, hi) and the session occasion, then ranked by the
minimum Euclidean distance to any chosen item of the same category. Ties
break on ascending item id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .catalog import Catalog, ClothingType, FeatureStore, Item, Occasion


class RetrievalError(ValueError):
    pass


@dataclass(frozen=True)
class TypePreference:
    """Per-type slice of a preference query."""

    chosen: tuple[str, ...]
    price_lo: int
    price_hi: int
    m: int

    def __post_init__(self):
        if not self.chosen:
            raise RetrievalError("chosen items must be non-empty")
        if self.price_lo >= self.price_hi:
            raise RetrievalError(f"price_lo {self.price_lo} must be < price_hi {self.price_hi}")
        if self.m < 1:
            raise RetrievalError(f"m must be >= 1, got {self.m}")


@dataclass(frozen=True)
class PreferenceQuery:
    occasion: Occasion
    prefs: Mapping[ClothingType, TypePreference]

    @classmethod
    def from_json(cls, path: str | Path) -> "PreferenceQuery":
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        prefs = {}
        for key, spec in obj["types"].items():
            t = ClothingType.parse(key)
            prefs[t] = TypePreference(
                chosen=tuple(spec["chosen"]),
                price_lo=int(spec["price_lo"]),
                price_hi=int(spec["price_hi"]),
                m=int(spec["m"]),
            )
        return cls(occasion=Occasion.parse(obj["occasion"]), prefs=prefs)


@dataclass(frozen=True)
class CatalogView:
    """A catalog with some item ids masked out. Views are values: exclusion
    returns a new view and never mutates shared state."""

    catalog: Catalog
    excluded: frozenset[str] = field(default_factory=frozenset)

    def items_of(self, t: ClothingType) -> tuple[Item, ...]:
        return tuple(x for x in self.catalog.items_of(t) if x.id not in self.excluded)

    def exclude(self, ids: Iterable[str]) -> "CatalogView":
        return CatalogView(self.catalog, self.excluded | frozenset(ids))


def exclude(view: CatalogView, ids: Iterable[str]) -> CatalogView:
    return view.exclude(ids)


def euclidean_distance(u: np.ndarray, v: np.ndarray) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise RetrievalError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return float(np.linalg.norm(u - v))


def rpi(
    view: CatalogView | Catalog,
    features: FeatureStore,
    query: PreferenceQuery,
    t: ClothingType,
) -> list[Item]:
    """Retrieve up to m_t preferred items of type `t`.

    Every returned item matches one of the chosen items' categories, lies in
    [price_lo, price_hi) and carries the query occasion. Ranking is by the
    minimum distance to a chosen item of the same category.
    """
    if isinstance(view, Catalog):
        view = CatalogView(view)
    pref = query.prefs[t]
    anchors = [view.catalog.get(i) for i in pref.chosen]
    for a in anchors:
        if a.type is not t:
            raise RetrievalError(f"chosen item {a.id!r} has type {a.type.value}, expected {t.value}")
    anchor_vecs: dict[str, list[np.ndarray]] = {}
    for a in anchors:
        anchor_vecs.setdefault(a.category, []).append(features.global_vector(a.feature_ref))

    scored: list[tuple[float, str, Item]] = []
    for x in view.items_of(t):
        if x.category not in anchor_vecs:
            continue
        if not (pref.price_lo <= x.price < pref.price_hi):
            continue
        if x.occasion is not query.occasion:
            continue
        vec = features.global_vector(x.feature_ref)
        dist = min(euclidean_distance(vec, av) for av in anchor_vecs[x.category])
        scored.append((dist, x.id, x))
    scored.sort(key=lambda s: (s[0], s[1]))
    return [x for _, _, x in scored[: pref.m]]
