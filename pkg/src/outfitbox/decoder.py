"""Pairwise compatibility decoder.

One parameter set per clothing-type pair. The forward path runs mutual
attention over the two items' local feature maps, projects the attended
vectors, adds a bag-of-words text embedding, fuses with tanh, maps both
fused vectors into a shared space and reads out a two-way softmax:
p[0] = "do not match", p[1] = "are compatible".

Everything is plain float64 numpy. Gradients are derived by hand and
checked against central finite differences in the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .catalog import ClothingType, FeatureStore, Item

LEAKY_SLOPE = 0.01
PROB_FLOOR = 1e-12

TENSOR_NAMES = ("w_d", "u_d", "v_d", "w_p", "w_e", "w_s", "u_s", "w_r")


class DecoderError(ValueError):
    pass


class PairType(Enum):
    """Canonical unordered clothing-type pairs, each with its own decoder."""

    TOP_BOTTOM = (ClothingType.TOP_WEAR, ClothingType.BOTTOM_WEAR)
    BOTTOM_FOOT = (ClothingType.BOTTOM_WEAR, ClothingType.FOOT_WEAR)
    TOP_FOOT = (ClothingType.TOP_WEAR, ClothingType.FOOT_WEAR)

    @property
    def first(self) -> ClothingType:
        return self.value[0]

    @property
    def second(self) -> ClothingType:
        return self.value[1]

    @property
    def tag(self) -> str:
        return f"{self.first.short}-{self.second.short}"

    @classmethod
    def of(cls, a: ClothingType, b: ClothingType) -> "PairType":
        for pt in cls:
            if {a, b} == {pt.first, pt.second}:
                return pt
        raise DecoderError(f"no pair type for ({a.value}, {b.value})")

    @classmethod
    def parse(cls, tag: str) -> "PairType":
        parts = tag.strip().lower().split("-")
        if len(parts) != 2:
            raise DecoderError(f"bad pair tag: {tag!r}")
        return cls.of(ClothingType.parse(parts[0]), ClothingType.parse(parts[1]))


@dataclass
class HyperParams:
    """Decoder dimensions and optimizer settings.

    `desk()` trains in seconds on a laptop; `full_scale()` matches the
    dimensions of real CNN feature maps (Inception-style 17x17x768 grids)
    and is only practical with a GPU feature dump.
    """

    d1: int = 16
    m: int = 9
    a1: int = 24
    b1: int = 32
    lambda1: float = 1e-5
    lambda2: float = 0.01
    learning_rate: float = 1e-3
    lr_decay_factor: float = 10.0
    lr_decay_every_epochs: int = 5
    clip_lo: float = -5.0
    clip_hi: float = 5.0
    batch_size: int = 32
    epochs: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.clip_lo >= self.clip_hi:
            raise DecoderError("clip_lo must be < clip_hi")
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise DecoderError("regularization weights must be >= 0")
        for name in ("d1", "m", "a1", "b1", "batch_size", "epochs"):
            if getattr(self, name) < 1:
                raise DecoderError(f"{name} must be a positive integer")

    @classmethod
    def desk(cls, **overrides) -> "HyperParams":
        base = dict(d1=16, m=9, a1=24, b1=32, epochs=30, lr_decay_every_epochs=10)
        base.update(overrides)
        return cls(**base)

    @classmethod
    def full_scale(cls, **overrides) -> "HyperParams":
        base = dict(d1=768, m=289, a1=900, b1=1024, epochs=30, lr_decay_every_epochs=5)
        base.update(overrides)
        return cls(**base)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: Mapping) -> "HyperParams":
        preset = obj.get("preset")
        fields = {k: v for k, v in obj.items() if k != "preset"}
        if preset == "full":
            return cls.full_scale(**fields)
        if preset == "desk":
            return cls.desk(**fields)
        return cls(**fields)


def _xavier(rng: np.random.Generator, fan_out: int, fan_in: int) -> np.ndarray:
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=(fan_out, fan_in))


@dataclass
class DecoderParams:
    """All learnable tensors of one pair-type decoder."""

    pair_type: PairType
    w_d: np.ndarray  # (d1, d1) attention transform of local features
    u_d: np.ndarray  # (d1, d1) attention transform of the pooled context
    v_d: np.ndarray  # (d1,)    attention readout
    w_p: np.ndarray  # (a1, d1) visual projection
    w_e: np.ndarray  # (a1, |V|) text embedding
    w_s: np.ndarray  # (b1, a1) shared-space map, first role
    u_s: np.ndarray  # (b1, a1) shared-space map, second role
    w_r: np.ndarray  # (2, b1)  classifier readout

    def __post_init__(self):
        d1 = self.w_d.shape[0]
        a1 = self.w_p.shape[0]
        b1 = self.w_s.shape[0]
        expected = {
            "w_d": (d1, d1),
            "u_d": (d1, d1),
            "v_d": (d1,),
            "w_p": (a1, d1),
            "w_e": (a1, self.w_e.shape[1]),
            "w_s": (b1, a1),
            "u_s": (b1, a1),
            "w_r": (2, b1),
        }
        for name, shape in expected.items():
            arr = getattr(self, name)
            if arr.shape != shape:
                raise DecoderError(f"{name} has shape {arr.shape}, expected {shape}")
            if not np.all(np.isfinite(arr)):
                raise DecoderError(f"{name} contains non-finite entries")

    @property
    def d1(self) -> int:
        return self.w_d.shape[0]

    @property
    def a1(self) -> int:
        return self.w_p.shape[0]

    @property
    def b1(self) -> int:
        return self.w_s.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.w_e.shape[1]

    def tensors(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in TENSOR_NAMES}

    def sq_norm(self) -> float:
        return float(sum(np.sum(t * t) for t in self.tensors().values()))

    def copy(self) -> "DecoderParams":
        return DecoderParams(self.pair_type, **{k: v.copy() for k, v in self.tensors().items()})

    @classmethod
    def xavier_init(
        cls,
        pair_type: PairType,
        hyper: HyperParams,
        vocab_size: int,
        rng: np.random.Generator,
    ) -> "DecoderParams":
        d1, a1, b1 = hyper.d1, hyper.a1, hyper.b1
        return cls(
            pair_type=pair_type,
            w_d=_xavier(rng, d1, d1),
            u_d=_xavier(rng, d1, d1),
            v_d=_xavier(rng, d1, 1)[:, 0],
            w_p=_xavier(rng, a1, d1),
            w_e=_xavier(rng, a1, vocab_size),
            w_s=_xavier(rng, b1, a1),
            u_s=_xavier(rng, b1, a1),
            w_r=_xavier(rng, 2, b1),
        )


# ---------------------------------------------------------------------------
# Forward operations (pure functions of inputs and params)
# ---------------------------------------------------------------------------


def encode_image(item: Item, features: FeatureStore) -> np.ndarray:
    """The item's stored M x D_1 local feature map.

    This is the pluggable encoder contract: any provider that fills the
    FeatureStore with consistent shapes works, from a CNN feature dump to
    the patch-histogram reference encoder in `encoder.py`.
    """
    fmap = features.feature_map(item.feature_ref)
    if fmap.shape != (features.m, features.d_1):
        raise DecoderError(f"feature map for {item.id!r} has shape {fmap.shape}")
    return fmap


def global_pool(fmap: np.ndarray) -> np.ndarray:
    """Average the M local feature vectors into one global embedding."""
    return np.asarray(fmap, dtype=np.float64).mean(axis=0)


def attention_weights(f_target: np.ndarray, g_source: np.ndarray, params: DecoderParams) -> np.ndarray:
    """Normalized attention over the target map's locations, conditioned on
    the other item's pooled embedding."""
    scores = np.tanh(f_target @ params.w_d.T + params.u_d @ g_source) @ params.v_d
    shifted = np.exp(scores - scores.max())
    return shifted / shifted.sum()


def attend(fmap: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """Attention-weighted sum of the map's local feature vectors."""
    if alpha.shape[0] != fmap.shape[0]:
        raise DecoderError(f"got {alpha.shape[0]} weights for {fmap.shape[0]} locations")
    return alpha @ fmap


def mutual_attention(
    f_a: np.ndarray, f_b: np.ndarray, params: DecoderParams
) -> tuple[np.ndarray, np.ndarray]:
    """Attended vectors for both items; each direction conditions on the
    other item's pooled embedding and shares the same attention tensors."""
    g_a = global_pool(f_a)
    g_b = global_pool(f_b)
    ghat_b = attend(f_b, attention_weights(f_b, g_a, params))
    ghat_a = attend(f_a, attention_weights(f_a, g_b, params))
    return ghat_a, ghat_b


def project_visual(ghat: np.ndarray, params: DecoderParams) -> np.ndarray:
    return np.maximum(0.0, params.w_p @ ghat)


def embed_text(item: Item, vocab_index: Mapping[str, int], params: DecoderParams) -> np.ndarray:
    """Sum of embedding columns at the item's token indices."""
    out = np.zeros(params.a1)
    for tok in sorted(item.text_tokens()):
        idx = vocab_index.get(tok)
        if idx is None:
            raise DecoderError(f"token {tok!r} of item {item.id!r} is outside the vocabulary (stale vocabulary?)")
        out += params.w_e[:, idx]
    return out


def fuse(v_f: np.ndarray, v_w: np.ndarray) -> np.ndarray:
    if v_f.shape != v_w.shape:
        raise DecoderError(f"fusion dimension mismatch: {v_f.shape} vs {v_w.shape}")
    return np.tanh(v_f + v_w)


def _softmax2(z: np.ndarray) -> np.ndarray:
    shifted = np.exp(z - z.max(axis=-1, keepdims=True))
    return shifted / shifted.sum(axis=-1, keepdims=True)


def compat_probability(v_a: np.ndarray, v_b: np.ndarray, params: DecoderParams) -> np.ndarray:
    """Two-way probability over (no-match, compatible)."""
    s = params.w_s @ v_a + params.u_s @ v_b
    v_s = np.where(s > 0, s, LEAKY_SLOPE * s)
    return _softmax2(params.w_r @ v_s)


def pair_probability(
    item_a: Item,
    item_b: Item,
    params: DecoderParams,
    features: FeatureStore,
    vocab_index: Mapping[str, int],
) -> np.ndarray:
    """Full forward pass for a typed item pair; returns the 2-way softmax."""
    pt = params.pair_type
    if item_a.type is not pt.first or item_b.type is not pt.second:
        raise DecoderError(
            f"decoder {pt.tag} expects ({pt.first.value}, {pt.second.value}), "
            f"got ({item_a.type.value}, {item_b.type.value})"
        )
    f_a = encode_image(item_a, features)
    f_b = encode_image(item_b, features)
    ghat_a, ghat_b = mutual_attention(f_a, f_b, params)
    v_a = fuse(project_visual(ghat_a, params), embed_text(item_a, vocab_index, params))
    v_b = fuse(project_visual(ghat_b, params), embed_text(item_b, vocab_index, params))
    return compat_probability(v_a, v_b, params)


def pairwise_score(
    item_a: Item,
    item_b: Item,
    params: DecoderParams,
    features: FeatureStore,
    vocab_index: Mapping[str, int],
) -> int:
    """1 iff the compatible probability strictly exceeds the no-match one."""
    p = pair_probability(item_a, item_b, params, features, vocab_index)
    return int(p[1] > p[0])


# ---------------------------------------------------------------------------
# Batched loss and analytic gradients
# ---------------------------------------------------------------------------


@dataclass
class PairBatch:
    """Dense tensors for a batch of labeled pairs.

    f_a, f_b: (n, m, d1) feature maps; t_a, t_b: (n, |V|) binary token
    indicators; labels: (n,) in {0, 1}.
    """

    f_a: np.ndarray
    f_b: np.ndarray
    t_a: np.ndarray
    t_b: np.ndarray
    labels: np.ndarray


def make_batch(
    pairs: Sequence[tuple[Item, Item, int]],
    features: FeatureStore,
    vocab_index: Mapping[str, int],
) -> PairBatch:
    if not pairs:
        raise DecoderError("batch must be non-empty")
    f_a = np.stack([encode_image(a, features) for a, _, _ in pairs])
    f_b = np.stack([encode_image(b, features) for _, b, _ in pairs])
    n_vocab = len(vocab_index)
    t_a = np.zeros((len(pairs), n_vocab))
    t_b = np.zeros((len(pairs), n_vocab))
    for i, (a, b, _) in enumerate(pairs):
        for tok in a.text_tokens():
            idx = vocab_index.get(tok)
            if idx is None:
                raise DecoderError(f"token {tok!r} of item {a.id!r} is outside the vocabulary")
            t_a[i, idx] = 1.0
        for tok in b.text_tokens():
            idx = vocab_index.get(tok)
            if idx is None:
                raise DecoderError(f"token {tok!r} of item {b.id!r} is outside the vocabulary")
            t_b[i, idx] = 1.0
    labels = np.array([int(y) for _, _, y in pairs])
    return PairBatch(f_a=f_a, f_b=f_b, t_a=t_a, t_b=t_b, labels=labels)


def batch_probabilities(batch: PairBatch, params: DecoderParams) -> np.ndarray:
    """(n, 2) class probabilities for every pair in the batch."""
    return _forward(batch, params)["p"]


def _forward(batch: PairBatch, params: DecoderParams) -> dict[str, np.ndarray]:
    f_a, f_b = batch.f_a, batch.f_b
    g_a = f_a.mean(axis=1)
    g_b = f_b.mean(axis=1)

    # direction a: attend over f_b's locations, conditioned on g_a
    c_b = f_b @ params.w_d.T + (g_a @ params.u_d.T)[:, None, :]
    h_b = np.tanh(c_b)
    beta_a = h_b @ params.v_d
    alpha_a = np.exp(beta_a - beta_a.max(axis=1, keepdims=True))
    alpha_a /= alpha_a.sum(axis=1, keepdims=True)
    ghat_b = np.einsum("nm,nmd->nd", alpha_a, f_b)

    # direction b: attend over f_a's locations, conditioned on g_b
    c_a = f_a @ params.w_d.T + (g_b @ params.u_d.T)[:, None, :]
    h_a = np.tanh(c_a)
    beta_b = h_a @ params.v_d
    alpha_b = np.exp(beta_b - beta_b.max(axis=1, keepdims=True))
    alpha_b /= alpha_b.sum(axis=1, keepdims=True)
    ghat_a = np.einsum("nm,nmd->nd", alpha_b, f_a)

    q_a = ghat_a @ params.w_p.T
    q_b = ghat_b @ params.w_p.T
    vf_a = np.maximum(0.0, q_a)
    vf_b = np.maximum(0.0, q_b)
    vw_a = batch.t_a @ params.w_e.T
    vw_b = batch.t_b @ params.w_e.T
    v_a = np.tanh(vf_a + vw_a)
    v_b = np.tanh(vf_b + vw_b)
    s = v_a @ params.w_s.T + v_b @ params.u_s.T
    v_s = np.where(s > 0, s, LEAKY_SLOPE * s)
    z = v_s @ params.w_r.T
    p = _softmax2(z)
    return {
        "g_a": g_a, "g_b": g_b,
        "h_a": h_a, "h_b": h_b,
        "alpha_a": alpha_a, "alpha_b": alpha_b,
        "ghat_a": ghat_a, "ghat_b": ghat_b,
        "q_a": q_a, "q_b": q_b,
        "vf_a": vf_a, "vf_b": vf_b,
        "vw_a": vw_a, "vw_b": vw_b,
        "v_a": v_a, "v_b": v_b,
        "s": s, "v_s": v_s, "p": p,
    }


@dataclass
class LossResult:
    total: float
    compat: float
    reg: float
    vse: float
    grads: dict[str, np.ndarray]


def loss_total(batch: PairBatch, params: DecoderParams, hyper: HyperParams) -> LossResult:
    """Training objective and analytic gradients for every tensor.

    Negative log likelihood of the true class, summed over the batch, plus
    lambda1 * squared parameter norm plus lambda2 * the visual-semantic gap
    summed over the batch. The log is floored at PROB_FLOOR; floored samples
    contribute zero gradient through the classifier head.
    """
    fw = _forward(batch, params)
    n = batch.labels.shape[0]
    idx = np.arange(n)
    p_true = fw["p"][idx, batch.labels]
    compat = float(-np.log(np.maximum(p_true, PROB_FLOOR)).sum())
    reg = params.sq_norm()
    gap_a = fw["vf_a"] - fw["vw_a"]
    gap_b = fw["vf_b"] - fw["vw_b"]
    vse = float(np.sum(gap_a * gap_a) + np.sum(gap_b * gap_b))
    total = compat + hyper.lambda1 * reg + hyper.lambda2 * vse

    # classifier head
    dz = fw["p"].copy()
    dz[idx, batch.labels] -= 1.0
    dz[p_true <= PROB_FLOOR] = 0.0
    grads = {name: np.zeros_like(t) for name, t in params.tensors().items()}
    grads["w_r"] += dz.T @ fw["v_s"]
    dvs = dz @ params.w_r
    ds = dvs * np.where(fw["s"] > 0, 1.0, LEAKY_SLOPE)
    grads["w_s"] += ds.T @ fw["v_a"]
    grads["u_s"] += ds.T @ fw["v_b"]
    dva = ds @ params.w_s
    dvb = ds @ params.u_s

    # fusion and the two modality branches
    dua = dva * (1.0 - fw["v_a"] ** 2)
    dub = dvb * (1.0 - fw["v_b"] ** 2)
    dvf_a = dua + hyper.lambda2 * 2.0 * gap_a
    dvw_a = dua - hyper.lambda2 * 2.0 * gap_a
    dvf_b = dub + hyper.lambda2 * 2.0 * gap_b
    dvw_b = dub - hyper.lambda2 * 2.0 * gap_b
    grads["w_e"] += dvw_a.T @ batch.t_a + dvw_b.T @ batch.t_b
    dq_a = dvf_a * (fw["q_a"] > 0)
    dq_b = dvf_b * (fw["q_b"] > 0)
    grads["w_p"] += dq_a.T @ fw["ghat_a"] + dq_b.T @ fw["ghat_b"]
    dghat_a = dq_a @ params.w_p
    dghat_b = dq_b @ params.w_p

    # attention, direction b (ghat_a built from f_a, conditioned on g_b)
    _attention_backward(
        grads, params, batch.f_a, fw["g_b"], fw["h_a"], fw["alpha_b"], dghat_a
    )
    # attention, direction a (ghat_b built from f_b, conditioned on g_a)
    _attention_backward(
        grads, params, batch.f_b, fw["g_a"], fw["h_b"], fw["alpha_a"], dghat_b
    )

    for name, t in params.tensors().items():
        grads[name] += hyper.lambda1 * 2.0 * t
    return LossResult(total=total, compat=compat, reg=reg, vse=vse, grads=grads)


def _attention_backward(grads, params, f_target, g_source, h, alpha, dghat):
    """Accumulate attention-tensor gradients for one direction.

    f_target: (n, m, d1) map that was attended; g_source: (n, d1) pooled
    conditioning vector; h = tanh pre-readout; alpha: softmax weights;
    dghat: (n, d1) upstream gradient of the attended vector.
    """
    dalpha = np.einsum("nd,nmd->nm", dghat, f_target)
    inner = (alpha * dalpha).sum(axis=1, keepdims=True)
    dbeta = alpha * (dalpha - inner)
    grads["v_d"] += np.einsum("nm,nmd->d", dbeta, h)
    dc = dbeta[:, :, None] * params.v_d[None, None, :] * (1.0 - h * h)
    grads["w_d"] += np.einsum("nmd,nme->de", dc, f_target)
    grads["u_d"] += np.einsum("nmd,ne->de", dc, g_source)
