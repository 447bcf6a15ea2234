"""Evaluation metrics: hit ratio, mean hit ratio, ROC-AUC, and the outfit
scoring report with per-pair / average-pairwise / C1 / C2 aggregations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Mapping, Sequence

import numpy as np

from .catalog import Catalog, ClothingType
from .decoder import PairType


class MetricsError(ValueError):
    pass


def hit_ratio(box_products: int, hits: int) -> float:
    """Fraction of box products (items or outfits) the user liked."""
    if box_products < 1:
        raise MetricsError("hit ratio of an empty box is undefined")
    if not 0 <= hits <= box_products:
        raise MetricsError(f"hits {hits} out of range for {box_products} products")
    return hits / box_products


def mean_hit_ratio(hrs: Sequence[float]) -> float:
    if not hrs:
        raise MetricsError("mean hit ratio of an empty list is undefined")
    return float(sum(hrs)) / len(hrs)


def auc(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Exact rank-sum ROC-AUC: the probability that a random positive
    outscores a random negative, counting ties as one half."""
    if len(scores) != len(labels):
        raise MetricsError("scores and labels must have equal length")
    if len(scores) == 0:
        raise MetricsError("empty input")
    y = np.asarray(labels)
    s = np.asarray(scores, dtype=np.float64)
    n_pos = int((y == 1).sum())
    n_neg = int((y == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise MetricsError("AUC requires both classes")
    order = np.argsort(s, kind="mergesort")
    ranks = np.empty(len(s), dtype=np.float64)
    i = 0
    sorted_scores = s[order]
    while i < len(s):
        j = i
        while j + 1 < len(s) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0  # average rank, 1-based
        i = j + 1
    rank_sum = float(ranks[y == 1].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def pair_labels_from_mismatch(marked: Collection[ClothingType]) -> tuple[int, dict[PairType, int]]:
    """Derive outfit and pair labels from mismatch marks on a 3-item set.

    A pair is negative iff at least one of its members is marked; the outfit
    is positive iff nothing is marked.
    """
    marked = set(marked)
    pair_labels = {
        pt: int(pt.first not in marked and pt.second not in marked) for pt in PairType
    }
    return int(not marked), pair_labels


@dataclass(frozen=True)
class OutfitExample:
    """One test outfit: item ids per type, outfit label, optional per-pair labels."""

    items: Mapping[ClothingType, str]
    label: int
    pair_labels: Mapping[PairType, int] | None = None


@dataclass
class OsfReport:
    pairwise_auc: dict[str, float]
    ap_auc: float | None
    c1_auc: float
    c2_auc: float
    accuracy: float
    notices: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "pairwise_auc": self.pairwise_auc,
            "ap_auc": self.ap_auc,
            "c1_auc": self.c1_auc,
            "c2_auc": self.c2_auc,
            "accuracy": self.accuracy,
            "notices": list(self.notices),
        }


def report_osf(testset: Sequence[OutfitExample], scorer, catalog: Catalog) -> OsfReport:
    """Score a labeled outfit test set with the trained decoders.

    `scorer` is anything with score(item_a, item_b) -> object exposing
    .p1 and .score, e.g. engine.DecoderScorer.
    """
    if not testset:
        raise MetricsError("empty test set")
    notices: list[str] = []
    pair_scores: dict[PairType, list[float]] = {pt: [] for pt in PairType}
    pair_labels: dict[PairType, list[int]] = {pt: [] for pt in PairType}
    c1_scores: list[float] = []
    c2_scores: list[int] = []
    outfit_labels: list[int] = []
    have_pair_labels = True
    for ex in testset:
        per_pair = {}
        for pt in PairType:
            a = catalog.get(ex.items[pt.first])
            b = catalog.get(ex.items[pt.second])
            per_pair[pt] = scorer.score(a, b)
        probs = [per_pair[pt].p1 for pt in PairType]
        bins = [per_pair[pt].score for pt in PairType]
        c1_scores.append(float(np.mean(probs)))
        c2_scores.append(int(all(bins)))
        outfit_labels.append(ex.label)
        if ex.pair_labels is None:
            have_pair_labels = False
        else:
            for pt in PairType:
                pair_scores[pt].append(per_pair[pt].p1)
                pair_labels[pt].append(ex.pair_labels[pt])

    pairwise: dict[str, float] = {}
    ap: float | None = None
    if have_pair_labels:
        try:
            pairwise = {pt.tag: auc(pair_scores[pt], pair_labels[pt]) for pt in PairType}
            ap = float(np.mean(list(pairwise.values())))
        except MetricsError as exc:
            pairwise = {}
            ap = None
            notices.append(f"pairwise metrics skipped: {exc}")
    else:
        notices.append("pairwise metrics skipped: per-pair labels missing")
    c1 = auc(c1_scores, outfit_labels)
    c2 = auc([float(v) for v in c2_scores], outfit_labels)
    accuracy = float(np.mean([int(pred == lab) for pred, lab in zip(c2_scores, outfit_labels)]))
    return OsfReport(
        pairwise_auc=pairwise,
        ap_auc=ap,
        c1_auc=c1,
        c2_auc=c2,
        accuracy=accuracy,
        notices=tuple(notices),
    )
