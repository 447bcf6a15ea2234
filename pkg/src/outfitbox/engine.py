"""Outfit scoring and the preferred-outfit generation loop.

An engine outfit holds exactly one item per clothing type. Scoring runs the
three pair-type decoders and aggregates: C2 is the logical AND of the binary
pair scores (the verifier used during generation), C1 the mean of the
compatible-class probabilities (kept for evaluation).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Protocol, Sequence

from .catalog import Catalog, ClothingType, FeatureStore, Item
from .decoder import DecoderParams, PairType, pair_probability
from .retrieval import CatalogView, PreferenceQuery, rpi

CANONICAL_PAIRS = (PairType.TOP_BOTTOM, PairType.BOTTOM_FOOT, PairType.TOP_FOOT)


class EngineError(ValueError):
    pass


@dataclass(frozen=True)
class Outfit:
    """One item id per clothing type."""

    top_wear: str
    bottom_wear: str
    foot_wear: str

    def item_id(self, t: ClothingType) -> str:
        return getattr(self, t.value)

    def ids(self) -> frozenset[str]:
        return frozenset((self.top_wear, self.bottom_wear, self.foot_wear))

    def price(self, catalog: Catalog) -> int:
        return sum(catalog.get(i).price for i in (self.top_wear, self.bottom_wear, self.foot_wear))


@dataclass(frozen=True)
class PairScore:
    p1: float
    score: int


class PairScorer(Protocol):
    def score(self, item_a: Item, item_b: Item) -> PairScore: ...


class DecoderScorer:
    """Scores typed item pairs with the trained per-pair-type decoders.

    Arguments may arrive in either order; they are canonicalized before the
    forward pass so callers never worry about role conventions.
    """

    def __init__(
        self,
        decoders: Mapping[PairType, DecoderParams],
        features: FeatureStore,
        vocab_index: Mapping[str, int],
    ):
        missing = [pt.tag for pt in PairType if pt not in decoders]
        if missing:
            raise EngineError(f"missing decoders for pair types: {missing}")
        self._decoders = dict(decoders)
        self._features = features
        self._vocab_index = vocab_index

    def score(self, item_a: Item, item_b: Item) -> PairScore:
        pt = PairType.of(item_a.type, item_b.type)
        if item_a.type is not pt.first:
            item_a, item_b = item_b, item_a
        p = pair_probability(item_a, item_b, self._decoders[pt], self._features, self._vocab_index)
        return PairScore(p1=float(p[1]), score=int(p[1] > p[0]))


def aggregate_c2(scores: Sequence[int]) -> int:
    """Logical AND over the binary pair scores of one outfit."""
    if len(scores) != len(CANONICAL_PAIRS):
        raise EngineError(f"expected {len(CANONICAL_PAIRS)} pair scores, got {len(scores)}")
    return int(all(s == 1 for s in scores))


def aggregate_c1(probs: Sequence[float]) -> float:
    """Mean of the compatible-class probabilities."""
    if not probs:
        raise EngineError("no probabilities to aggregate")
    return float(sum(probs)) / len(probs)


@dataclass(frozen=True)
class OutfitScore:
    c2: int
    c1: float
    per_pair: Mapping[PairType, PairScore]


def score_outfit(outfit: Outfit, scorer: PairScorer, catalog: Catalog) -> OutfitScore:
    """Per-pair scores plus both aggregates for one outfit, deterministic."""
    per_pair: dict[PairType, PairScore] = {}
    for pt in CANONICAL_PAIRS:
        a = catalog.get(outfit.item_id(pt.first))
        b = catalog.get(outfit.item_id(pt.second))
        per_pair[pt] = scorer.score(a, b)
    c2 = aggregate_c2([per_pair[pt].score for pt in CANONICAL_PAIRS])
    c1 = aggregate_c1([per_pair[pt].p1 for pt in CANONICAL_PAIRS])
    return OutfitScore(c2=c2, c1=c1, per_pair=per_pair)


@dataclass
class RoundStats:
    retrieved: dict[ClothingType, int]
    checked: int
    passed: int


@dataclass
class PreferredOutfitSet:
    outfits: list[Outfit]
    scores: list[OutfitScore]
    complete: bool
    rounds: list[RoundStats]


def generate_preferred_outfits(
    catalog: Catalog,
    features: FeatureStore,
    scorer: PairScorer,
    query: PreferenceQuery,
    limit: int,
) -> PreferredOutfitSet:
    """Iteratively retrieve preferred items per type, enumerate the full
    cross-type combination grid in retrieval-rank order, and keep outfits the
    verifier accepts until `limit` are collected.

    Retrieved items are excluded between rounds, so every round sees a fresh
    candidate pool. When some type's pool empties before the limit is hit the
    partial set is returned with complete=False.
    """
    if limit < 1:
        raise EngineError(f"limit must be >= 1, got {limit}")
    view = CatalogView(catalog)
    outfits: list[Outfit] = []
    scores: list[OutfitScore] = []
    seen: set[Outfit] = set()
    rounds: list[RoundStats] = []
    while True:
        retrieved = {t: rpi(view, features, query, t) for t in ClothingType}
        if any(len(items) == 0 for items in retrieved.values()):
            return PreferredOutfitSet(outfits, scores, complete=False, rounds=rounds)
        stats = RoundStats(
            retrieved={t: len(items) for t, items in retrieved.items()}, checked=0, passed=0
        )
        rounds.append(stats)
        for top in retrieved[ClothingType.TOP_WEAR]:
            for bottom in retrieved[ClothingType.BOTTOM_WEAR]:
                for foot in retrieved[ClothingType.FOOT_WEAR]:
                    outfit = Outfit(top.id, bottom.id, foot.id)
                    result = score_outfit(outfit, scorer, catalog)
                    stats.checked += 1
                    if result.c2 == 1:
                        if outfit in seen:
                            raise EngineError(f"duplicate outfit produced: {outfit}")
                        seen.add(outfit)
                        outfits.append(outfit)
                        scores.append(result)
                        stats.passed += 1
                        if len(outfits) == limit:
                            return PreferredOutfitSet(outfits, scores, complete=True, rounds=rounds)
        used = [x.id for items in retrieved.values() for x in items]
        view = view.exclude(used)
