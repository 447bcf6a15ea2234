"""Decoder training: dataset handling, optimizer, loop, checkpoints.

The optimizer is Adam with decoupled weight decay (decay fixed at 0 per the
default configuration), beta1=0.9, beta2=0.999, eps=1e-8. Gradients are
clipped element-wise to [clip_lo, clip_hi] before the update and the
learning rate drops by `lr_decay_factor` every `lr_decay_every_epochs`.
Runs are bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .catalog import Catalog, FeatureStore, Item
from .decoder import (
    DecoderError,
    DecoderParams,
    HyperParams,
    PairBatch,
    PairType,
    TENSOR_NAMES,
    batch_probabilities,
    loss_total,
    make_batch,
)
from .metrics import auc

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
WEIGHT_DECAY = 0.0

CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class PairDataset:
    """Labeled item-id pairs for one pair type."""

    pair_type: PairType
    positives: tuple[tuple[str, str], ...]
    negatives: tuple[tuple[str, str], ...]

    def __post_init__(self):
        overlap = set(self.positives) & set(self.negatives)
        if overlap:
            raise DecoderError(f"pairs present in both classes: {sorted(overlap)[:3]}")

    def __len__(self) -> int:
        return len(self.positives) + len(self.negatives)

    def labeled(self) -> list[tuple[str, str, int]]:
        return [(a, b, 1) for a, b in self.positives] + [(a, b, 0) for a, b in self.negatives]

    def validate_types(self, catalog: Catalog) -> None:
        for a_id, b_id, _ in self.labeled():
            a, b = catalog.get(a_id), catalog.get(b_id)
            if a.type is not self.pair_type.first or b.type is not self.pair_type.second:
                raise DecoderError(
                    f"pair ({a_id}, {b_id}) does not match pair type {self.pair_type.tag}"
                )

    def split(self, validation_fraction: float, rng: np.random.Generator) -> tuple["PairDataset", "PairDataset"]:
        """Shuffled split into (train, validation), stratified by class."""

        def cut(pairs: tuple[tuple[str, str], ...]):
            order = rng.permutation(len(pairs))
            n_val = int(round(len(pairs) * validation_fraction))
            val_idx = set(order[:n_val].tolist())
            tr = tuple(p for i, p in enumerate(pairs) if i not in val_idx)
            va = tuple(p for i, p in enumerate(pairs) if i in val_idx)
            return tr, va

        pos_tr, pos_va = cut(self.positives)
        neg_tr, neg_va = cut(self.negatives)
        return (
            PairDataset(self.pair_type, pos_tr, neg_tr),
            PairDataset(self.pair_type, pos_va, neg_va),
        )

    @classmethod
    def from_jsonl(cls, path: str | Path, pair_type: PairType) -> "PairDataset":
        pos: list[tuple[str, str]] = []
        neg: list[tuple[str, str]] = []
        with Path(path).open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    pair = (str(rec["a"]), str(rec["b"]))
                    label = int(rec["label"])
                except (ValueError, KeyError) as exc:
                    raise DecoderError(f"bad pair record at line {line_no}: {exc}") from None
                (pos if label == 1 else neg).append(pair)
        return cls(pair_type, tuple(pos), tuple(neg))


@dataclass
class EpochStats:
    epoch: int
    learning_rate: float
    mean_loss: float
    val_auc: float | None


@dataclass
class TrainResult:
    params: DecoderParams
    history: list[EpochStats]


class AdamW:
    """Element-wise adaptive-moment optimizer with decoupled weight decay."""

    def __init__(self, params: DecoderParams, weight_decay: float = WEIGHT_DECAY):
        self.params = params
        self.weight_decay = weight_decay
        self.step_count = 0
        self._m = {k: np.zeros_like(v) for k, v in params.tensors().items()}
        self._v = {k: np.zeros_like(v) for k, v in params.tensors().items()}

    def step(self, grads: Mapping[str, np.ndarray], lr: float) -> None:
        self.step_count += 1
        t = self.step_count
        for name in TENSOR_NAMES:
            g = grads[name]
            self._m[name] = ADAM_BETA1 * self._m[name] + (1 - ADAM_BETA1) * g
            self._v[name] = ADAM_BETA2 * self._v[name] + (1 - ADAM_BETA2) * g * g
            m_hat = self._m[name] / (1 - ADAM_BETA1**t)
            v_hat = self._v[name] / (1 - ADAM_BETA2**t)
            tensor = getattr(self.params, name)
            tensor -= lr * (m_hat / (np.sqrt(v_hat) + ADAM_EPS) + self.weight_decay * tensor)


def _items_for(pairs: Sequence[tuple[str, str, int]], catalog: Catalog) -> list[tuple[Item, Item, int]]:
    return [(catalog.get(a), catalog.get(b), y) for a, b, y in pairs]


def train_decoder(
    dataset: PairDataset,
    catalog: Catalog,
    features: FeatureStore,
    hyper: HyperParams,
    validation: PairDataset | None = None,
) -> TrainResult:
    """Train one pair-type decoder from scratch.

    The train/validation split is the caller's job; when a validation set is
    passed, per-epoch AUC of the compatible-class probability is logged.
    """
    if len(dataset) == 0:
        raise DecoderError("training dataset is empty")
    dataset.validate_types(catalog)
    if validation is not None:
        validation.validate_types(catalog)

    rng = np.random.default_rng(hyper.seed)
    params = DecoderParams.xavier_init(dataset.pair_type, hyper, len(catalog.vocabulary), rng)
    optimizer = AdamW(params)

    train_pairs = _items_for(dataset.labeled(), catalog)
    val_batch: PairBatch | None = None
    val_labels: np.ndarray | None = None
    if validation is not None and len(validation) > 0:
        val_items = _items_for(validation.labeled(), catalog)
        val_batch = make_batch(val_items, features, catalog.vocab_index)
        val_labels = np.array([y for _, _, y in val_items])

    history: list[EpochStats] = []
    for epoch in range(hyper.epochs):
        lr = hyper.learning_rate / (hyper.lr_decay_factor ** (epoch // hyper.lr_decay_every_epochs))
        order = rng.permutation(len(train_pairs))
        epoch_loss = 0.0
        for start in range(0, len(order), hyper.batch_size):
            chunk = [train_pairs[i] for i in order[start : start + hyper.batch_size]]
            batch = make_batch(chunk, features, catalog.vocab_index)
            result = loss_total(batch, params, hyper)
            clipped = {
                name: np.clip(g, hyper.clip_lo, hyper.clip_hi) for name, g in result.grads.items()
            }
            optimizer.step(clipped, lr)
            epoch_loss += result.total
        val_auc = None
        if val_batch is not None:
            p1 = batch_probabilities(val_batch, params)[:, 1]
            val_auc = auc(p1.tolist(), val_labels.tolist())
        history.append(
            EpochStats(
                epoch=epoch,
                learning_rate=lr,
                mean_loss=epoch_loss / len(train_pairs),
                val_auc=val_auc,
            )
        )
    return TrainResult(params=params, history=history)


def save_checkpoint(
    path: str | Path,
    params: DecoderParams,
    hyper: HyperParams,
    vocab_sha256: str,
) -> None:
    meta = {
        "format_version": CHECKPOINT_VERSION,
        "pair": params.pair_type.tag,
        "hyper": hyper.to_dict(),
        "vocab_sha256": vocab_sha256,
    }
    arrays = {name: tensor for name, tensor in params.tensors().items()}
    np.savez(Path(path), __meta__=np.array(json.dumps(meta)), **arrays)


def load_checkpoint(path: str | Path) -> tuple[DecoderParams, HyperParams, dict]:
    with np.load(Path(path)) as data:
        if "__meta__" not in data:
            raise DecoderError(f"not a decoder checkpoint: {path}")
        meta = json.loads(str(data["__meta__"]))
        if meta.get("format_version") != CHECKPOINT_VERSION:
            raise DecoderError(f"unsupported checkpoint version: {meta.get('format_version')}")
        tensors = {name: data[name] for name in TENSOR_NAMES}
    params = DecoderParams(pair_type=PairType.parse(meta["pair"]), **tensors)
    hyper = HyperParams.from_dict(meta["hyper"])
    return params, hyper, meta


def load_checkpoint_dir(
    directory: str | Path, expected_vocab_sha256: str | None = None
) -> dict[PairType, DecoderParams]:
    """Load the three per-pair checkpoints named <tag>.npz from a directory."""
    directory = Path(directory)
    decoders: dict[PairType, DecoderParams] = {}
    for pt in PairType:
        path = directory / f"{pt.tag}.npz"
        if not path.exists():
            raise DecoderError(f"missing checkpoint for pair {pt.tag}: {path}")
        params, _, meta = load_checkpoint(path)
        if params.pair_type is not pt:
            raise DecoderError(f"checkpoint {path} holds pair {params.pair_type.tag}, expected {pt.tag}")
        if expected_vocab_sha256 is not None and meta.get("vocab_sha256") != expected_vocab_sha256:
            raise DecoderError(
                f"checkpoint {path} was trained against a different vocabulary; retrain or fix the catalog"
            )
        decoders[pt] = params
    return decoders
