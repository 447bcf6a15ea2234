"""Typed in-memory catalog of fashion items plus their visual features.

The catalog owns item metadata and the shared token vocabulary; per-item
visual features (a global retrieval vector and a local feature map) live in
a :class:`FeatureStore` loaded from a companion ``.npz`` file. Both are
immutable after construction and safe for unrestricted concurrent reads.
"""

from __future__ import annotations

import csv
import hashlib
import json
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np


class CatalogError(ValueError):
    """Hard catalog violation: duplicate ids, unknown references."""


class FeatureError(ValueError):
    """Feature store violation: missing record, shape mismatch, non-finite."""


class ClothingType(str, Enum):
    TOP_WEAR = "top_wear"
    BOTTOM_WEAR = "bottom_wear"
    FOOT_WEAR = "foot_wear"

    @property
    def short(self) -> str:
        return {"top_wear": "tw", "bottom_wear": "bw", "foot_wear": "fw"}[self.value]

    @classmethod
    def parse(cls, value: str) -> "ClothingType":
        v = value.strip().lower().replace("-", "_")
        for t in cls:
            if v in (t.value, t.short):
                return t
        raise CatalogError(f"unknown clothing type: {value!r}")


class Occasion(str, Enum):
    FORMAL = "formal"
    CASUAL = "casual"

    @classmethod
    def parse(cls, value: str) -> "Occasion":
        v = value.strip().lower()
        for o in cls:
            if v == o.value:
                return o
        raise CatalogError(f"unknown occasion: {value!r}")


# Default per-type category sets; extend via the `categories` argument of
# load_catalog for catalogs that carry other labels.
DEFAULT_CATEGORIES: Mapping[ClothingType, frozenset[str]] = {
    ClothingType.TOP_WEAR: frozenset({"shirt", "tshirt", "polo-tshirt", "long-sleeved-top"}),
    ClothingType.BOTTOM_WEAR: frozenset({"trouser-chino", "jeans", "track-pant", "shorts"}),
    ClothingType.FOOT_WEAR: frozenset({"ankle-boot", "lace-up", "slip-on", "trainer", "sandals"}),
}

_PUNCT = re.compile(r"[^\w\s]+")


def tokenize(text: str) -> tuple[str, ...]:
    """Lowercase, strip punctuation, split on whitespace. No stemming."""
    return tuple(_PUNCT.sub(" ", text.lower()).split())


@dataclass(frozen=True)
class Item:
    """One fashion product. Prices are positive integers in minor units."""

    id: str
    type: ClothingType
    category: str
    occasion: Occasion
    price: int
    title_tokens: frozenset[str]
    feature_ref: str

    def text_tokens(self) -> frozenset[str]:
        """Bag of words for the text embedding: title plus category words."""
        return self.title_tokens | frozenset(tokenize(self.category))


class Catalog:
    """Immutable item collection with per-type indexes and a token vocabulary.

    The vocabulary is the sorted union of every item's text tokens, indexed
    as a bijection onto ``0..|V|-1``.
    """

    def __init__(self, items: Iterable[Item]):
        by_id: dict[str, Item] = {}
        for item in items:
            if item.id in by_id:
                raise CatalogError(f"duplicate item id: {item.id!r}")
            by_id[item.id] = item
        self._items: dict[str, Item] = dict(sorted(by_id.items()))
        self._by_type: dict[ClothingType, tuple[Item, ...]] = {
            t: tuple(x for x in self._items.values() if x.type is t) for t in ClothingType
        }
        vocab = sorted({tok for x in self._items.values() for tok in x.text_tokens()})
        self.vocabulary: tuple[str, ...] = tuple(vocab)
        self.vocab_index: dict[str, int] = {tok: i for i, tok in enumerate(vocab)}

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item_id: str) -> bool:
        return item_id in self._items

    def __iter__(self):
        return iter(self._items.values())

    def get(self, item_id: str) -> Item:
        try:
            return self._items[item_id]
        except KeyError:
            raise CatalogError(f"unknown item id: {item_id!r}") from None

    def items_of(self, t: ClothingType) -> tuple[Item, ...]:
        """All and only items of type `t`, ordered by id."""
        return self._by_type[t]

    def vocab_sha256(self) -> str:
        return hashlib.sha256("\n".join(self.vocabulary).encode("utf-8")).hexdigest()

    def to_jsonl(self) -> str:
        """Canonical serialization; equal catalogs serialize byte-equal."""
        lines = []
        for x in self._items.values():
            lines.append(
                json.dumps(
                    {
                        "id": x.id,
                        "type": x.type.value,
                        "category": x.category,
                        "occasion": x.occasion.value,
                        "price": x.price,
                        "title": " ".join(sorted(x.title_tokens)),
                    },
                    sort_keys=True,
                )
            )
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class RejectedRow:
    line: int
    reason: str


@dataclass(frozen=True)
class CatalogLoad:
    catalog: Catalog
    rejected: tuple[RejectedRow, ...]


def _parse_record(rec: Mapping[str, object], categories: Mapping[ClothingType, frozenset[str]]) -> Item:
    for key in ("id", "type", "category", "occasion", "price", "title"):
        if key not in rec or rec[key] is None or rec[key] == "":
            raise ValueError(f"missing field {key!r}")
    ctype = ClothingType.parse(str(rec["type"]))
    occasion = Occasion.parse(str(rec["occasion"]))
    category = str(rec["category"]).strip().lower()
    allowed = categories.get(ctype, frozenset())
    if category not in allowed:
        raise ValueError(f"category {category!r} not configured for {ctype.value}")
    raw_price = rec["price"]
    if isinstance(raw_price, bool):
        raise ValueError("price must be a positive integer")
    if isinstance(raw_price, str):
        if not raw_price.strip().lstrip("-").isdigit():
            raise ValueError(f"price {raw_price!r} is not an integer")
        raw_price = int(raw_price)
    if isinstance(raw_price, float):
        if not raw_price.is_integer():
            raise ValueError("price must be an integer (minor currency units)")
        raw_price = int(raw_price)
    if not isinstance(raw_price, int) or raw_price <= 0:
        raise ValueError(f"price must be a positive integer, got {rec['price']!r}")
    item_id = str(rec["id"])
    return Item(
        id=item_id,
        type=ctype,
        category=category,
        occasion=occasion,
        price=raw_price,
        title_tokens=frozenset(tokenize(str(rec["title"]))),
        feature_ref=str(rec.get("feature_ref") or item_id),
    )


def load_catalog(
    path: str | Path,
    fmt: str = "jsonl",
    categories: Mapping[ClothingType, frozenset[str]] = DEFAULT_CATEGORIES,
) -> CatalogLoad:
    """Load and validate a catalog file.

    Malformed rows are collected into a rejection report with line numbers;
    a duplicate id is a hard error.
    """
    path = Path(path)
    if not path.exists():
        raise CatalogError(f"catalog file not found: {path}")
    if fmt not in ("jsonl", "csv"):
        raise CatalogError(f"unsupported catalog format: {fmt!r}")

    records: list[tuple[int, Mapping[str, object] | None, str | None]] = []
    if fmt == "jsonl":
        with path.open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    if not isinstance(obj, dict):
                        raise ValueError("row is not a JSON object")
                    records.append((line_no, obj, None))
                except ValueError as exc:
                    records.append((line_no, None, f"invalid JSON: {exc}"))
    else:
        with path.open("r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            for line_no, row in enumerate(reader, start=2):  # header is line 1
                records.append((line_no, row, None))

    items: list[Item] = []
    seen: dict[str, int] = {}
    rejected: list[RejectedRow] = []
    for line_no, rec, err in records:
        if err is not None:
            rejected.append(RejectedRow(line_no, err))
            continue
        try:
            item = _parse_record(rec, categories)
        except ValueError as exc:
            rejected.append(RejectedRow(line_no, str(exc)))
            continue
        if item.id in seen:
            raise CatalogError(f"duplicate item id {item.id!r} at lines {seen[item.id]} and {line_no}")
        seen[item.id] = line_no
        items.append(item)
    return CatalogLoad(catalog=Catalog(items), rejected=tuple(rejected))


class FeatureStore:
    """Immutable per-item features: a global D_g vector and an M x D_1 map."""

    def __init__(
        self,
        global_vectors: Mapping[str, np.ndarray],
        feature_maps: Mapping[str, np.ndarray],
    ):
        if set(global_vectors) != set(feature_maps):
            raise FeatureError("global vector and feature map ids differ")
        self._globals: dict[str, np.ndarray] = {}
        self._maps: dict[str, np.ndarray] = {}
        d_g = m = d_1 = None
        for ref in sorted(global_vectors):
            g = np.asarray(global_vectors[ref], dtype=np.float64)
            fm = np.asarray(feature_maps[ref], dtype=np.float64)
            if g.ndim != 1:
                raise FeatureError(f"global vector for {ref!r} must be 1-d, got shape {g.shape}")
            if fm.ndim != 2:
                raise FeatureError(f"feature map for {ref!r} must be 2-d, got shape {fm.shape}")
            if not np.all(np.isfinite(g)) or not np.all(np.isfinite(fm)):
                raise FeatureError(f"non-finite feature entry for {ref!r}")
            if d_g is None:
                d_g, (m, d_1) = g.shape[0], fm.shape
            elif g.shape[0] != d_g or fm.shape != (m, d_1):
                raise FeatureError(
                    f"feature shapes for {ref!r} ({g.shape[0]}, {fm.shape}) "
                    f"do not match store shapes ({d_g}, ({m}, {d_1}))"
                )
            g = g.copy()
            fm = fm.copy()
            g.flags.writeable = False
            fm.flags.writeable = False
            self._globals[ref] = g
            self._maps[ref] = fm
        if d_g is None:
            raise FeatureError("feature store must hold at least one record")
        self.d_g: int = int(d_g)
        self.m: int = int(m)
        self.d_1: int = int(d_1)

    def __contains__(self, ref: str) -> bool:
        return ref in self._globals

    def __len__(self) -> int:
        return len(self._globals)

    def global_vector(self, ref: str) -> np.ndarray:
        try:
            return self._globals[ref]
        except KeyError:
            raise FeatureError(f"no feature record for {ref!r}") from None

    def feature_map(self, ref: str) -> np.ndarray:
        try:
            return self._maps[ref]
        except KeyError:
            raise FeatureError(f"no feature record for {ref!r}") from None

    def save(self, path: str | Path) -> None:
        arrays: dict[str, np.ndarray] = {"__dims__": np.array([self.d_g, self.m, self.d_1])}
        for ref in self._globals:
            arrays[f"g::{ref}"] = self._globals[ref]
            arrays[f"m::{ref}"] = self._maps[ref]
        np.savez(Path(path), **arrays)


def load_features(path: str | Path, catalog: Catalog) -> FeatureStore:
    """Load a feature file and check it covers the catalog exactly."""
    path = Path(path)
    if not path.exists():
        raise FeatureError(f"feature file not found: {path}")
    with np.load(path) as data:
        if "__dims__" not in data:
            raise FeatureError("feature file missing __dims__ header")
        d_g, m, d_1 = (int(v) for v in data["__dims__"])
        globals_: dict[str, np.ndarray] = {}
        maps: dict[str, np.ndarray] = {}
        for key in data.files:
            if key.startswith("g::"):
                globals_[key[3:]] = data[key]
            elif key.startswith("m::"):
                maps[key[3:]] = data[key]
    refs = set(globals_) | set(maps)
    wanted = {x.feature_ref for x in catalog}
    for ref in sorted(refs - wanted):
        raise FeatureError(f"feature record for unknown item {ref!r}")
    for ref in sorted(wanted - refs):
        raise FeatureError(f"missing feature record for item {ref!r}")
    store = FeatureStore(globals_, maps)
    if (store.d_g, store.m, store.d_1) != (d_g, m, d_1):
        raise FeatureError(
            f"header dims ({d_g}, {m}, {d_1}) disagree with records "
            f"({store.d_g}, {store.m}, {store.d_1})"
        )
    return store
